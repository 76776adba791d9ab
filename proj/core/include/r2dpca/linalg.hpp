#pragma once

#include <utility>
#include <vector>

namespace r2dpca {

using Vector = std::vector<double>;

// Dense real matrix, row-major. Zero rows/cols denote an empty matrix
// (used e.g. for a projection basis before any axis is accepted).
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, double value = 0.0);

    static Matrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    double& operator()(int i, int j) {
        return data_[static_cast<std::size_t>(i) * cols_ + j];
    }
    double operator()(int i, int j) const {
        return data_[static_cast<std::size_t>(i) * cols_ + j];
    }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    bool operator==(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

// --- elementwise vector kernels -------------------------------------------

// (sum |v_i|^p)^(1/p) for finite p > 0, max|v_i| for p = infinity.
double lp_norm(const Vector& v, double p);

// sum |v_i|^s, the s-th power of the Ls norm. Uses the 0^0 = 1 convention.
double sum_abs_pow(const Vector& v, double s);

Vector hadamard(const Vector& u, const Vector& v);

// sign(0) = 0.
Vector signum(const Vector& v);

// |v_i|^e elementwise with 0^0 = 1; zero entries reject negative exponents.
Vector pow_abs(const Vector& v, double e);

// --- matrix helpers --------------------------------------------------------

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);

// A * x
Vector mat_vec(const Matrix& a, const Vector& x);
// A^T * y, computed without forming the transpose
Vector tmat_vec(const Matrix& a, const Vector& y);

Matrix transpose(const Matrix& a);
double frobenius_norm(const Matrix& a);
double max_abs(const Matrix& a);

// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
// Returns (W, d): W is cols(A) x r with orthonormal columns, d holds the
// r largest eigenvalues in descending order. Column signs are fixed so the
// largest-magnitude entry of each eigenvector is positive (ties resolved
// at the lowest index). Convergence: off-diagonal Frobenius mass below
// 1e-12 * ||A||_F, capped at 100 sweeps.
std::pair<Matrix, Vector> sym_eig(const Matrix& a, int r);

} // namespace r2dpca
