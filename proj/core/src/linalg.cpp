#include "r2dpca/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "r2dpca/errors.hpp"

namespace r2dpca {

Matrix::Matrix(int rows, int cols, double value)
    : rows_(rows), cols_(cols),
      data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), value) {
    if (rows < 0 || cols < 0)
        throw InvalidParameter("matrix dimensions must be nonnegative");
}

Matrix Matrix::identity(int n) {
    Matrix m(n, n, 0.0);
    for (int i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

double lp_norm(const Vector& v, double p) {
    if (v.empty())
        throw InvalidInput("lp_norm: empty vector");
    if (std::isnan(p) || p <= 0.0)
        throw InvalidParameter("lp_norm: p must be positive or infinity");
    for (double x : v)
        if (!std::isfinite(x))
            throw InvalidInput("lp_norm: non-finite entry");
    if (std::isinf(p)) {
        double m = 0.0;
        for (double x : v)
            m = std::max(m, std::abs(x));
        return m;
    }
    double acc = 0.0;
    for (double x : v)
        acc += std::pow(std::abs(x), p);
    return std::pow(acc, 1.0 / p);
}

double sum_abs_pow(const Vector& v, double s) {
    double acc = 0.0;
    if (s == 1.0) {
        for (double x : v)
            acc += std::abs(x);
    } else if (s == 2.0) {
        for (double x : v)
            acc += x * x;
    } else {
        for (double x : v)
            acc += (s == 0.0) ? 1.0 : std::pow(std::abs(x), s);
    }
    return acc;
}

Vector hadamard(const Vector& u, const Vector& v) {
    if (u.size() != v.size())
        throw DimensionError("hadamard: length mismatch");
    Vector out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        out[i] = u[i] * v[i];
    return out;
}

Vector signum(const Vector& v) {
    Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = (v[i] > 0.0) ? 1.0 : (v[i] < 0.0 ? -1.0 : 0.0);
    return out;
}

Vector pow_abs(const Vector& v, double e) {
    Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double a = std::abs(v[i]);
        if (e == 0.0) {
            out[i] = 1.0; // 0^0 = 1 so the s=1 update reduces to the L1 rule
        } else if (a == 0.0) {
            if (e < 0.0)
                throw SingularityError("pow_abs: zero entry with negative exponent");
            out[i] = 0.0;
        } else if (e == 1.0) {
            out[i] = a;
        } else {
            out[i] = std::pow(a, e);
        }
    }
    return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw DimensionError("matrix product: inner dimensions differ");
    Matrix c(a.rows(), b.cols(), 0.0);
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0)
                continue;
            for (int j = 0; j < b.cols(); ++j)
                c(i, j) += aik * b(k, j);
        }
    return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("matrix sum: shape mismatch");
    Matrix c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            c(i, j) = a(i, j) + b(i, j);
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("matrix difference: shape mismatch");
    Matrix c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            c(i, j) = a(i, j) - b(i, j);
    return c;
}

Vector mat_vec(const Matrix& a, const Vector& x) {
    if (static_cast<std::size_t>(a.cols()) != x.size())
        throw DimensionError("mat_vec: shape mismatch");
    Vector y(a.rows(), 0.0);
    for (int i = 0; i < a.rows(); ++i) {
        double acc = 0.0;
        for (int j = 0; j < a.cols(); ++j)
            acc += a(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

Vector tmat_vec(const Matrix& a, const Vector& y) {
    if (static_cast<std::size_t>(a.rows()) != y.size())
        throw DimensionError("tmat_vec: shape mismatch");
    Vector x(a.cols(), 0.0);
    for (int i = 0; i < a.rows(); ++i) {
        const double yi = y[i];
        if (yi == 0.0)
            continue;
        for (int j = 0; j < a.cols(); ++j)
            x[j] += a(i, j) * yi;
    }
    return x;
}

Matrix transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            t(j, i) = a(i, j);
    return t;
}

double frobenius_norm(const Matrix& a) {
    double acc = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            acc += a(i, j) * a(i, j);
    return std::sqrt(acc);
}

double max_abs(const Matrix& a) {
    double m = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            m = std::max(m, std::abs(a(i, j)));
    return m;
}

namespace {

double offdiag_mass(const Matrix& a) {
    double acc = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (i != j)
                acc += a(i, j) * a(i, j);
    return std::sqrt(acc);
}

} // namespace

std::pair<Matrix, Vector> sym_eig(const Matrix& a, int r) {
    const int n = a.cols();
    if (a.rows() != n || n < 1)
        throw InvalidInput("sym_eig: matrix must be square and nonempty");
    if (r < 1 || r > n)
        throw InvalidParameter("sym_eig: r out of range");

    const double scale = max_abs(a);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!(std::abs(a(i, j) - a(j, i)) <= 1e-10 * scale))
                throw InvalidInput("sym_eig: matrix not symmetric");

    Matrix b = a;
    Matrix v = Matrix::identity(n);
    const double norm_f = frobenius_norm(a); // invariant under the rotations
    const double target = 1e-12 * norm_f;

    for (int sweep = 0; sweep < 100; ++sweep) {
        if (offdiag_mass(b) <= target)
            break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = b(p, q);
                if (apq == 0.0)
                    continue;
                const double app = b(p, p);
                const double aqq = b(q, q);
                const double theta = (aqq - app) / (2.0 * apq);
                double t;
                if (std::abs(theta) > 1e154) {
                    t = 1.0 / (2.0 * theta);
                } else {
                    t = ((theta >= 0.0) ? 1.0 : -1.0) /
                        (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                b(p, p) = app - t * apq;
                b(q, q) = aqq + t * apq;
                b(p, q) = b(q, p) = 0.0;
                for (int i = 0; i < n; ++i) {
                    if (i != p && i != q) {
                        const double aip = b(i, p);
                        const double aiq = b(i, q);
                        b(i, p) = b(p, i) = aip - s * (aiq + tau * aip);
                        b(i, q) = b(q, i) = aiq + s * (aip - tau * aiq);
                    }
                    const double vip = v(i, p);
                    const double viq = v(i, q);
                    v(i, p) = vip - s * (viq + tau * vip);
                    v(i, q) = viq + s * (vip - tau * viq);
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return b(i, i) > b(j, j); });

    Matrix w(n, r);
    Vector d(r);
    for (int k = 0; k < r; ++k) {
        const int col = order[k];
        d[k] = b(col, col);
        // deterministic sign: largest-magnitude entry positive, lowest index on ties
        int pivot = 0;
        double best = -1.0;
        for (int i = 0; i < n; ++i) {
            const double m = std::abs(v(i, col));
            if (m > best) {
                best = m;
                pivot = i;
            }
        }
        const double flip = (v(pivot, col) < 0.0) ? -1.0 : 1.0;
        for (int i = 0; i < n; ++i)
            w(i, k) = flip * v(i, col);
    }
    return {std::move(w), std::move(d)};
}

} // namespace r2dpca
