#pragma once

#include <string>

#include "r2dpca/dataset.hpp"
#include "r2dpca/linalg.hpp"

namespace r2dpca {

// Map applied to lambda_max(C_j) before normalization. Closed catalog so
// experiment configs stay reproducible.
struct RelaxFn {
    enum class Kind { IdentityPlusEpsilon, Exponential, Constant };

    Kind kind = Kind::IdentityPlusEpsilon;
    double epsilon = 1e-12;

    double operator()(double x) const;

    static RelaxFn parse(const std::string& name, double epsilon = 1e-12);
    std::string name() const;
};

// Per-class weights v_j >= 0 with sum 1, plus the per-sample weights
// v_j / n_j used inside the relaxed criterion. Empty when no label
// information is in play.
struct RelaxationVector {
    Vector class_weight;  // v_j, length m
    Vector sample_weight; // v_j / n_j, length m

    bool empty() const { return class_weight.empty(); }
    int num_classes() const { return static_cast<int>(class_weight.size()); }
};

// C_j = (1/n_j) sum_i (X_i^j - M_j)^T (X_i^j - M_j), a w x w symmetric
// PSD matrix. class_index is 0-based.
Matrix within_class_cov(const LabeledDataset& ds, const Centering& c, int class_index);

// v_j = f(lambda_max(C_j)) / sum_i f(lambda_max(C_i)); if every
// lambda_max is zero, v_j = 1/m exactly.
RelaxationVector relaxation_vector(const LabeledDataset& ds, const Centering& c,
                                   const RelaxFn& f = {});

} // namespace r2dpca
