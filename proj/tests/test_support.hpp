#pragma once

#include <cmath>
#include <vector>

#include "r2dpca/dataset.hpp"
#include "r2dpca/linalg.hpp"
#include "r2dpca/rng.hpp"

namespace r2dpca::testing {

inline Matrix random_matrix(Rng& rng, int rows, int cols, double lo = -1.0, double hi = 1.0) {
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m(i, j) = rng.uniform(lo, hi);
    return m;
}

inline Matrix random_symmetric(Rng& rng, int n, double scale = 1.0) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            m(i, j) = m(j, i) = scale * rng.uniform(-1.0, 1.0);
    return m;
}

inline Matrix random_psd(Rng& rng, int n) {
    const Matrix b = random_matrix(rng, n, n);
    Matrix m(n, n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                m(i, j) += b(k, i) * b(k, j);
    return m;
}

inline Vector random_vector(Rng& rng, int n, double lo = -1.0, double hi = 1.0) {
    Vector v(n);
    for (double& x : v)
        x = rng.uniform(lo, hi);
    return v;
}

// Labeled dataset with iid random samples, class sizes in [1, max_per_class].
inline LabeledDataset random_dataset(Rng& rng, int classes, int max_per_class, int h, int w) {
    LabeledDataset ds;
    ds.height = h;
    ds.width = w;
    for (int j = 0; j < classes; ++j)
        ds.class_names.push_back("c" + std::to_string(j + 1));
    for (int j = 0; j < classes; ++j) {
        const int count = 1 + static_cast<int>(rng.uniform_index(max_per_class));
        for (int i = 0; i < count; ++i) {
            ds.samples.push_back(random_matrix(rng, h, w, 0.0, 1.0));
            ds.labels.push_back(j);
        }
    }
    return ds;
}

// Classes are rigid translates of one shared sample cloud, so every
// within-class covariance is identical and the relaxation weights come
// out uniform to machine precision.
inline LabeledDataset translated_class_dataset(Rng& rng, int classes, int per_class,
                                               int h, int w) {
    LabeledDataset ds;
    ds.height = h;
    ds.width = w;
    std::vector<Matrix> cloud;
    for (int i = 0; i < per_class; ++i)
        cloud.push_back(random_matrix(rng, h, w, 0.0, 1.0));
    for (int j = 0; j < classes; ++j)
        ds.class_names.push_back("c" + std::to_string(j + 1));
    for (int j = 0; j < classes; ++j) {
        const Matrix offset = random_matrix(rng, h, w, -0.5, 0.5);
        for (int i = 0; i < per_class; ++i) {
            ds.samples.push_back(cloud[i] + offset);
            ds.labels.push_back(j);
        }
    }
    return ds;
}

// Independent lambda_max oracle: plain power iteration with Rayleigh
// quotient stopping.
inline double power_iteration_lambda_max(const Matrix& a, int max_iters = 100000,
                                         double tol = 1e-14) {
    const int n = a.cols();
    Vector v(n, 1.0);
    double norm = std::sqrt(static_cast<double>(n));
    for (double& x : v)
        x /= norm;
    double lambda = 0.0;
    for (int k = 0; k < max_iters; ++k) {
        const Vector y = mat_vec(a, v);
        double rayleigh = 0.0;
        for (int i = 0; i < n; ++i)
            rayleigh += v[i] * y[i];
        double ynorm = 0.0;
        for (double x : y)
            ynorm += x * x;
        ynorm = std::sqrt(ynorm);
        if (ynorm == 0.0)
            return 0.0;
        for (int i = 0; i < n; ++i)
            v[i] = y[i] / ynorm;
        if (k > 0 && std::abs(rayleigh - lambda) <= tol * std::max(1.0, std::abs(rayleigh))) {
            lambda = rayleigh;
            break;
        }
        lambda = rayleigh;
    }
    return lambda;
}

// Columns of the input orthonormalized by modified Gram-Schmidt.
inline Matrix orthonormal_columns(const Matrix& w) {
    Matrix q = w;
    for (int j = 0; j < q.cols(); ++j) {
        for (int k = 0; k < j; ++k) {
            double dot = 0.0;
            for (int i = 0; i < q.rows(); ++i)
                dot += q(i, k) * q(i, j);
            for (int i = 0; i < q.rows(); ++i)
                q(i, j) -= dot * q(i, k);
        }
        double norm = 0.0;
        for (int i = 0; i < q.rows(); ++i)
            norm += q(i, j) * q(i, j);
        norm = std::sqrt(norm);
        for (int i = 0; i < q.rows(); ++i)
            q(i, j) /= norm;
    }
    return q;
}

// Largest principal angle between the column spans of two bases with the
// same shape, via the residual R = Q2 - Q1 (Q1^T Q2); sin(theta_max) is
// the largest singular value of R.
inline double largest_principal_angle(const Matrix& a, const Matrix& b) {
    const Matrix q1 = orthonormal_columns(a);
    const Matrix q2 = orthonormal_columns(b);
    const Matrix cross = transpose(q1) * q2; // r x r
    Matrix residual = q2 - q1 * cross;
    Matrix gram(residual.cols(), residual.cols(), 0.0);
    for (int i = 0; i < residual.cols(); ++i)
        for (int j = 0; j < residual.cols(); ++j)
            for (int k = 0; k < residual.rows(); ++k)
                gram(i, j) += residual(k, i) * residual(k, j);
    const double lambda = power_iteration_lambda_max(gram);
    const double sine = std::sqrt(std::max(0.0, std::min(1.0, lambda)));
    return std::asin(sine);
}

} // namespace r2dpca::testing
