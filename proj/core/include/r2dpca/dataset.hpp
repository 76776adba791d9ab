#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "r2dpca/linalg.hpp"

namespace r2dpca {

// Image samples partitioned into classes. Labels are 0-based indices into
// class_names; every class referenced by a label holds at least one sample.
struct LabeledDataset {
    int height = 0;
    int width = 0;
    std::vector<Matrix> samples;
    std::vector<int> labels;
    std::vector<std::string> class_names;

    int size() const { return static_cast<int>(samples.size()); }
    int num_classes() const { return static_cast<int>(class_names.size()); }
    std::vector<int> class_counts() const;
    std::vector<std::vector<int>> class_indices() const;
};

struct Centering {
    Matrix global_mean;
    std::vector<Matrix> class_means;
};

// Manifest format: one `<relative-image-path>,<class-label>` record per
// line, '#' comments ignored, class indices assigned in first-appearance
// order. Image paths resolve against the manifest's directory.
LabeledDataset load_manifest(const std::filesystem::path& manifest_path);

// Writes dir/manifest.txt plus P5 images under dir/images/. Loading the
// result with load_manifest round-trips a previously loaded dataset
// bit-exactly (pixels are 8-bit).
void save_dataset(const LabeledDataset& ds, const std::filesystem::path& dir);

Centering compute_centering(const LabeledDataset& ds);

// Subtracts the global mean from every sample.
LabeledDataset center(const LabeledDataset& ds, const Centering& c);

// Per class: exactly train_per_class samples to train, remainder to test.
// Deterministic given seed.
std::pair<LabeledDataset, LabeledDataset>
split_per_class(const LabeledDataset& ds, int train_per_class, std::uint64_t seed);

// Class-structured synthetic data: per-class prototypes with pairwise
// Frobenius separation >= 4 * noise_sigma * sqrt(h*w), plus elementwise
// Gaussian noise. Deterministic given seed.
LabeledDataset synth_generate(int classes, int per_class, int height, int width,
                              double noise_sigma, std::uint64_t seed);

} // namespace r2dpca
