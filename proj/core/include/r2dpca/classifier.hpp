#pragma once

#include "r2dpca/dataset.hpp"
#include "r2dpca/projector.hpp"

namespace r2dpca {

// Feature image of a sample: P = (X - M) W, one principal component
// vector per column.
Matrix project(const Matrix& sample, const ProjectionModel& model);

// Projected training samples with their labels and the model's per-axis
// objective weights.
struct Gallery {
    std::vector<Matrix> features;
    std::vector<int> labels;
    Vector weights; // D
};

Gallery build_gallery(const LabeledDataset& train, const ProjectionModel& model);

// ||(Pa - Pb) diag(D)||_F, i.e. Frobenius distance with every principal
// component column scaled by its objective value.
double relaxed_distance(const Matrix& a, const Matrix& b, const Vector& weights);

struct Match {
    int label = -1;
    int index = -1;
    double distance = 0.0;
};

// Nearest gallery entry under the relaxed distance; ties go to the lowest
// gallery index.
Match nearest(const Gallery& gallery, const Matrix& feature);

int classify(const Gallery& gallery, const Matrix& sample, const ProjectionModel& model);

// Fraction of test samples whose predicted label matches the truth.
double accuracy(const Gallery& gallery, const LabeledDataset& test,
                const ProjectionModel& model);

} // namespace r2dpca
