#pragma once

#include <cstdint>
#include <vector>

#include "r2dpca/dataset.hpp"
#include "r2dpca/linalg.hpp"
#include "r2dpca/relaxation.hpp"

namespace r2dpca {

enum class InitKind {
    Ones,               // column of ones, unit p-norm (default)
    SingularProxy,      // one power step from ones, approximates the
                        // dominant right-singular direction of the stack
    UnitE1,
    SeededRandom,
};

InitKind parse_init(const std::string& name);

struct FitConfig {
    double s = 2.0;     // objective exponent, >= 1
    double p = 2.0;     // constraint norm, > 0 or infinity
    double gamma = 1.0; // blend between unsupervised and relaxed scatter
    int num_axes = 1;   // r
    double tol = 1e-10;
    int max_iter = 500;
    double lambda_sparsity = 0.0; // 2DPCA-L1-S shrinkage parameter
    InitKind init = InitKind::Ones;
    std::uint64_t seed = 0;
};

// Per-axis status flags stored alongside the basis.
enum AxisStatus : std::uint8_t {
    kAxisConverged = 0,
    kAxisMaxIter = 1,   // stopped at max_iter without meeting tol
    kAxisDegenerate = 2 // update direction vanished (e.g. fully deflated data)
};

struct ProjectionModel {
    int height = 0;
    int width = 0;
    Matrix mean;            // global mean of the training samples
    Matrix basis;           // W, width x r, one projection axis per column
    Vector objective_values; // D, the per-axis optimal objective f_t
    RelaxationVector relax;  // empty when labels were not used
    FitConfig config;
    std::vector<std::uint32_t> iters_per_axis;
    std::vector<std::uint8_t> axis_status;

    int num_axes() const { return basis.cols(); }
};

// First r_prime axes and weights of an existing model.
ProjectionModel truncated(const ProjectionModel& model, int r_prime);

// Optional per-fit trace for diagnostics and tests: objective sequence
// (f_0, f_1, ...) and the iterate after each update, per axis.
struct FitTrace {
    struct Axis {
        std::vector<double> objectives;
        std::vector<Vector> iterates;
    };
    std::vector<Axis> axes;
};

// Relaxed criterion value
//   gamma * sum_i ||X_i w||_s^s
//   + (1-gamma) * sum_j sum_i ||(v_j/n_j) X_i^j w||_s^s
// evaluated on already-centered samples. labels/relax may be empty when
// gamma = 1.
double objective(const std::vector<Matrix>& centered_samples,
                 const std::vector<int>& labels, const RelaxationVector& relax,
                 double gamma, double s, const Vector& w);

// X_i <- X_i (I - W W^T) for every sample. An empty basis is a no-op.
std::vector<Matrix> deflate(const std::vector<Matrix>& samples, const Matrix& basis);

// Iterative Lp-norm fit of the relaxed criterion with greedy deflation.
// Samples are homogenized (global mean subtracted) before iteration.
ProjectionModel r2dpca_fit(const LabeledDataset& train, const RelaxationVector& relax,
                           const FitConfig& cfg, FitTrace* trace = nullptr);

// r2dpca_fit with gamma forced to 1; label information is ignored.
ProjectionModel g2dpca_fit(const LabeledDataset& train, const FitConfig& cfg,
                           FitTrace* trace = nullptr);

// Sparse L1 variant: s=1 gradient with the shrinkage step
// u_i = v_i |w_i| / (lambda + |w_i|) and L2 normalization.
ProjectionModel twodpca_l1s_fit(const LabeledDataset& train, const FitConfig& cfg,
                                FitTrace* trace = nullptr);

// Eigendecomposition route for s = p = 2: top-r eigenpairs of
// gamma*G + (1-gamma)*G~ with G = (1/n) sum (X_i-M)^T (X_i-M) and
// G~ = sum_j (v_j/n_j) sum_i (X_i^j-M)^T (X_i^j-M).
ProjectionModel relaxed_2dpca_eig(const LabeledDataset& train,
                                  const RelaxationVector& relax, double gamma, int r);

} // namespace r2dpca
