#include "r2dpca/classifier.hpp"

#include <cmath>

#include "r2dpca/errors.hpp"

namespace r2dpca {

Matrix project(const Matrix& sample, const ProjectionModel& model) {
    if (sample.rows() != model.height || sample.cols() != model.width)
        throw DimensionError("project: sample shape does not match model");
    return (sample - model.mean) * model.basis;
}

Gallery build_gallery(const LabeledDataset& train, const ProjectionModel& model) {
    Gallery g;
    g.features.reserve(train.samples.size());
    for (const Matrix& x : train.samples)
        g.features.push_back(project(x, model));
    g.labels = train.labels;
    g.weights = model.objective_values;
    return g;
}

double relaxed_distance(const Matrix& a, const Matrix& b, const Vector& weights) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("relaxed_distance: feature shapes differ");
    if (weights.size() != static_cast<std::size_t>(a.cols()))
        throw DimensionError("relaxed_distance: weight count does not match columns");
    double acc = 0.0;
    for (int j = 0; j < a.cols(); ++j) {
        double col = 0.0;
        for (int i = 0; i < a.rows(); ++i) {
            const double d = a(i, j) - b(i, j);
            col += d * d;
        }
        acc += weights[j] * weights[j] * col;
    }
    return std::sqrt(acc);
}

Match nearest(const Gallery& gallery, const Matrix& feature) {
    if (gallery.features.empty())
        throw InvalidState("nearest: empty gallery");
    Match best;
    for (std::size_t i = 0; i < gallery.features.size(); ++i) {
        const double d = relaxed_distance(gallery.features[i], feature, gallery.weights);
        if (best.index < 0 || d < best.distance) {
            best.index = static_cast<int>(i);
            best.label = gallery.labels[i];
            best.distance = d;
        }
    }
    return best;
}

int classify(const Gallery& gallery, const Matrix& sample, const ProjectionModel& model) {
    return nearest(gallery, project(sample, model)).label;
}

double accuracy(const Gallery& gallery, const LabeledDataset& test,
                const ProjectionModel& model) {
    if (test.samples.empty())
        throw InvalidInput("accuracy: empty test set");
    int correct = 0;
    for (int i = 0; i < test.size(); ++i)
        if (classify(gallery, test.samples[i], model) == test.labels[i])
            ++correct;
    return static_cast<double>(correct) / test.size();
}

} // namespace r2dpca
