#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "r2dpca/errors.hpp"
#include "r2dpca/linalg.hpp"
#include "test_support.hpp"

using namespace r2dpca;
namespace rt = r2dpca::testing;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("lp_norm basics") {
    CHECK(lp_norm({3.0, 4.0}, 2.0) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(lp_norm({1.0, -2.0, 3.0}, kInf) == 3.0);
    // hand oracle: (1^0.5 + 1^0.5)^(1/0.5) = 2^2
    CHECK(lp_norm({1.0, 1.0}, 0.5) == doctest::Approx(4.0).epsilon(1e-14));

    CHECK_THROWS_AS(lp_norm({1.0}, 0.0), InvalidParameter);
    CHECK_THROWS_AS(lp_norm({1.0}, -2.0), InvalidParameter);
    CHECK_THROWS_AS(lp_norm({std::nan("")}, 2.0), InvalidInput);
    CHECK_THROWS_AS(lp_norm({kInf}, 2.0), InvalidInput);
    CHECK_THROWS_AS(lp_norm({}, 2.0), InvalidInput);
}

TEST_CASE("lp_norm is zero only at the zero vector and absolutely homogeneous") {
    Rng rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform_index(6));
        const Vector v = rt::random_vector(rng, n);
        const double alpha = rng.uniform(-3.0, 3.0);
        for (double p : {0.5, 1.0, 1.7, 2.0, 3.0, kInf}) {
            const double norm = lp_norm(v, p);
            bool all_zero = true;
            for (double x : v)
                if (x != 0.0)
                    all_zero = false;
            CHECK((norm == 0.0) == all_zero);

            Vector scaled = v;
            for (double& x : scaled)
                x *= alpha;
            CHECK(lp_norm(scaled, p) ==
                  doctest::Approx(std::abs(alpha) * norm).epsilon(1e-12));
        }
    }
    CHECK(lp_norm({0.0, 0.0, 0.0}, 2.0) == 0.0);
}

TEST_CASE("hadamard") {
    CHECK(hadamard({1, 2}, {3, 4}) == Vector{3, 8});
    CHECK(hadamard({0, 5}, {7, 0}) == Vector{0, 0});
    CHECK(hadamard({-1, 2}, {2, -3}) == Vector{-2, -6});
    CHECK_THROWS_AS(hadamard({1}, {1, 2}), DimensionError);
}

TEST_CASE("signum") {
    CHECK(signum({2.5, -0.1, 0.0}) == Vector{1, -1, 0});
    CHECK(signum({0.0, 0.0}) == Vector{0, 0});
    CHECK(signum({-7.0}) == Vector{-1});
}

TEST_CASE("pow_abs") {
    CHECK(pow_abs({-2, 3}, 2.0) == Vector{4, 9});
    CHECK(pow_abs({4}, 0.5) == Vector{2});
    CHECK(pow_abs({0, 1}, 0.0) == Vector{1, 1}); // 0^0 = 1
    CHECK_THROWS_AS(pow_abs({0.0, 1.0}, -1.0), SingularityError);
    CHECK(pow_abs({2.0}, -1.0) == Vector{0.5});
}

TEST_CASE("sym_eig on identity and diagonal matrices") {
    auto [w3, d3] = sym_eig(Matrix::identity(3), 3);
    CHECK(d3 == Vector{1, 1, 1});
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(w3(i, j) == doctest::Approx(i == j ? 1.0 : 0.0));

    Matrix diag(2, 2, 0.0);
    diag(0, 0) = 3.0;
    diag(1, 1) = 1.0;
    auto [w, d] = sym_eig(diag, 1);
    CHECK(d == Vector{3});
    CHECK(w(0, 0) == doctest::Approx(1.0));
    CHECK(w(1, 0) == doctest::Approx(0.0));
}

TEST_CASE("sym_eig 2x2 hand case") {
    // [[2,1],[1,2]]: characteristic polynomial gives eigenvalues 3 and 1
    Matrix a(2, 2);
    a(0, 0) = 2;
    a(0, 1) = 1;
    a(1, 0) = 1;
    a(1, 1) = 2;
    auto [w, d] = sym_eig(a, 2);
    CHECK(d[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(d[1] == doctest::Approx(1.0).epsilon(1e-12));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(w(0, 0) == doctest::Approx(inv_sqrt2).epsilon(1e-12));
    CHECK(w(1, 0) == doctest::Approx(inv_sqrt2).epsilon(1e-12));
}

TEST_CASE("sym_eig input validation") {
    Matrix bad(2, 2);
    bad(0, 1) = 1.0;
    bad(1, 0) = 0.5;
    CHECK_THROWS_AS(sym_eig(bad, 1), InvalidInput);
    CHECK_THROWS_AS(sym_eig(Matrix::identity(2), 0), InvalidParameter);
    CHECK_THROWS_AS(sym_eig(Matrix::identity(2), 3), InvalidParameter);
    CHECK_THROWS_AS(sym_eig(Matrix(2, 3), 1), InvalidInput);
}

TEST_CASE("sym_eig reconstruction, residuals and sign convention on random matrices") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 10;
        const Matrix a = rt::random_symmetric(rng, n, 2.0);
        auto [w, d] = sym_eig(a, n);

        // W diag(d) W^T == A
        Matrix recon(n, n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    recon(i, j) += w(i, k) * d[k] * w(j, k);
        CHECK(frobenius_norm(recon - a) <= 1e-8 * frobenius_norm(a));

        for (int k = 0; k < n; ++k) {
            CHECK((k == 0 || d[k] <= d[k - 1]));
            Vector col(n);
            for (int i = 0; i < n; ++i)
                col[i] = w(i, k);
            const Vector av = mat_vec(a, col);
            double resid = 0.0;
            for (int i = 0; i < n; ++i)
                resid += (av[i] - d[k] * col[i]) * (av[i] - d[k] * col[i]);
            CHECK(std::sqrt(resid) <= 1e-8 * (1.0 + std::abs(d[k])));

            int pivot = 0;
            double best = -1.0;
            for (int i = 0; i < n; ++i)
                if (std::abs(col[i]) > best) {
                    best = std::abs(col[i]);
                    pivot = i;
                }
            CHECK(col[pivot] > 0.0);
        }
    }
}

TEST_CASE("sym_eig keeps PSD spectra nonnegative") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix a = rt::random_psd(rng, 6);
        auto [w, d] = sym_eig(a, 6);
        for (double lambda : d)
            CHECK(lambda >= -1e-10 * frobenius_norm(a));
    }
}

TEST_CASE("matrix helpers") {
    Matrix a(2, 3);
    int v = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j)
            a(i, j) = ++v;
    const Matrix at = transpose(a);
    CHECK(at.rows() == 3);
    CHECK(at(2, 1) == a(1, 2));

    const Vector x = {1.0, 0.0, -1.0};
    const Vector ax = mat_vec(a, x);
    CHECK(ax == Vector{1.0 - 3.0, 4.0 - 6.0});
    const Vector y = {1.0, 2.0};
    CHECK(tmat_vec(a, y) == mat_vec(at, y));

    CHECK_THROWS_AS(mat_vec(a, Vector{1.0}), DimensionError);
    CHECK_THROWS_AS(a * a, DimensionError);
    CHECK(frobenius_norm(Matrix(3, 3, 0.0)) == 0.0);
}
