#include "r2dpca/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "r2dpca/errors.hpp"
#include "r2dpca/pgm.hpp"
#include "r2dpca/rng.hpp"

namespace r2dpca {

std::vector<int> LabeledDataset::class_counts() const {
    std::vector<int> counts(class_names.size(), 0);
    for (int label : labels)
        ++counts[label];
    return counts;
}

std::vector<std::vector<int>> LabeledDataset::class_indices() const {
    std::vector<std::vector<int>> idx(class_names.size());
    for (int i = 0; i < size(); ++i)
        idx[labels[i]].push_back(i);
    return idx;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

LabeledDataset load_manifest(const std::filesystem::path& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in)
        throw LoadError("manifest: cannot open " + manifest_path.string());

    const std::filesystem::path base = manifest_path.parent_path();
    LabeledDataset ds;
    std::unordered_map<std::string, int> class_index;

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string record = trim(line);
        if (record.empty() || record[0] == '#')
            continue;
        const std::size_t comma = record.find(',');
        if (comma == std::string::npos)
            throw LoadError("manifest: " + manifest_path.string() + ":" +
                            std::to_string(lineno) + ": missing ',' separator");
        const std::string rel = trim(record.substr(0, comma));
        const std::string label = trim(record.substr(comma + 1));
        if (rel.empty() || label.empty())
            throw LoadError("manifest: " + manifest_path.string() + ":" +
                            std::to_string(lineno) + ": empty path or label");

        const std::filesystem::path img_path = base / rel;
        if (!std::filesystem::exists(img_path))
            throw LoadError("manifest: missing image file " + img_path.string());
        Matrix img = read_pgm(img_path);

        if (ds.samples.empty()) {
            ds.height = img.rows();
            ds.width = img.cols();
        } else if (img.rows() != ds.height || img.cols() != ds.width) {
            throw LoadError("manifest: dimension mismatch at " + img_path.string() +
                            " (expected " + std::to_string(ds.height) + "x" +
                            std::to_string(ds.width) + ", got " +
                            std::to_string(img.rows()) + "x" +
                            std::to_string(img.cols()) + ")");
        }

        auto [it, inserted] =
            class_index.emplace(label, static_cast<int>(ds.class_names.size()));
        if (inserted)
            ds.class_names.push_back(label);
        ds.labels.push_back(it->second);
        ds.samples.push_back(std::move(img));
    }
    if (ds.samples.empty())
        throw LoadError("manifest: no records in " + manifest_path.string());
    return ds;
}

void save_dataset(const LabeledDataset& ds, const std::filesystem::path& dir) {
    if (ds.samples.empty())
        throw InvalidInput("save_dataset: empty dataset");
    std::filesystem::create_directories(dir / "images");
    std::ofstream manifest(dir / "manifest.txt");
    if (!manifest)
        throw LoadError("save_dataset: cannot write manifest in " + dir.string());
    for (int i = 0; i < ds.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "img_%05d.pgm", i);
        write_pgm(dir / "images" / name, ds.samples[i]);
        manifest << "images/" << name << "," << ds.class_names[ds.labels[i]] << "\n";
    }
    if (!manifest)
        throw LoadError("save_dataset: manifest write failed in " + dir.string());
}

Centering compute_centering(const LabeledDataset& ds) {
    if (ds.samples.empty())
        throw InvalidInput("compute_centering: empty dataset");
    const int m = ds.num_classes();
    Centering c;
    c.global_mean = Matrix(ds.height, ds.width, 0.0);
    c.class_means.assign(m, Matrix(ds.height, ds.width, 0.0));

    const auto counts = ds.class_counts();
    for (int i = 0; i < ds.size(); ++i) {
        const Matrix& x = ds.samples[i];
        Matrix& cm = c.class_means[ds.labels[i]];
        for (int a = 0; a < ds.height; ++a)
            for (int b = 0; b < ds.width; ++b) {
                c.global_mean(a, b) += x(a, b);
                cm(a, b) += x(a, b);
            }
    }
    const double inv_n = 1.0 / ds.size();
    for (int a = 0; a < ds.height; ++a)
        for (int b = 0; b < ds.width; ++b)
            c.global_mean(a, b) *= inv_n;
    for (int j = 0; j < m; ++j) {
        const double inv = 1.0 / counts[j];
        for (int a = 0; a < ds.height; ++a)
            for (int b = 0; b < ds.width; ++b)
                c.class_means[j](a, b) *= inv;
    }
    return c;
}

LabeledDataset center(const LabeledDataset& ds, const Centering& c) {
    if (c.global_mean.rows() != ds.height || c.global_mean.cols() != ds.width)
        throw DimensionError("center: mean shape does not match dataset");
    LabeledDataset out = ds;
    for (Matrix& x : out.samples)
        x = x - c.global_mean;
    return out;
}

std::pair<LabeledDataset, LabeledDataset>
split_per_class(const LabeledDataset& ds, int train_per_class, std::uint64_t seed) {
    if (train_per_class < 1)
        throw InvalidParameter("split_per_class: train_per_class must be >= 1");
    const auto counts = ds.class_counts();
    for (std::size_t j = 0; j < counts.size(); ++j)
        if (train_per_class >= counts[j])
            throw InvalidParameter("split_per_class: train_per_class >= class count for class " +
                                   ds.class_names[j]);

    LabeledDataset train, test;
    train.height = test.height = ds.height;
    train.width = test.width = ds.width;
    train.class_names = test.class_names = ds.class_names;

    Rng rng(seed);
    auto by_class = ds.class_indices();
    for (std::size_t j = 0; j < by_class.size(); ++j) {
        auto& idx = by_class[j];
        rng.shuffle(idx);
        for (std::size_t k = 0; k < idx.size(); ++k) {
            LabeledDataset& dst = (k < static_cast<std::size_t>(train_per_class)) ? train : test;
            dst.samples.push_back(ds.samples[idx[k]]);
            dst.labels.push_back(static_cast<int>(j));
        }
    }
    return {std::move(train), std::move(test)};
}

LabeledDataset synth_generate(int classes, int per_class, int height, int width,
                              double noise_sigma, std::uint64_t seed) {
    if (classes < 1 || per_class < 1 || height < 1 || width < 1)
        throw InvalidParameter("synth_generate: counts must be >= 1");
    if (noise_sigma < 0.0 || !std::isfinite(noise_sigma))
        throw InvalidParameter("synth_generate: noise_sigma must be >= 0");

    const double hw = static_cast<double>(height) * width;
    const double required = 4.0 * noise_sigma * std::sqrt(hw);

    Rng rng(seed);
    Matrix texture(height, width);
    for (int a = 0; a < height; ++a)
        for (int b = 0; b < width; ++b)
            texture(a, b) = 0.2 + 0.35 * rng.uniform01();

    // Prototypes: shared texture plus a per-class column-stripe bump, so the
    // pairwise distance is exactly beta * sqrt(h * (stripe_j + stripe_k)).
    std::vector<Matrix> prototypes(classes, texture);
    if (width >= classes) {
        const int stripe = width / classes;
        const double min_block = static_cast<double>(height) * stripe;
        double beta = 0.3;
        if (noise_sigma > 0.0)
            beta = std::max(beta, 1.25 * required / std::sqrt(2.0 * min_block));
        for (int j = 0; j < classes; ++j) {
            const int lo = j * stripe;
            const int hi = (j == classes - 1) ? width : (j + 1) * stripe;
            for (int a = 0; a < height; ++a)
                for (int b = lo; b < hi; ++b)
                    prototypes[j](a, b) += beta;
        }
    } else {
        // Image narrower than the class count: fall back to per-class
        // brightness offsets with guaranteed gaps.
        const double step = 4.0 * noise_sigma + 0.3;
        for (int j = 0; j < classes; ++j)
            for (int a = 0; a < height; ++a)
                for (int b = 0; b < width; ++b)
                    prototypes[j](a, b) += j * step;
    }

    LabeledDataset ds;
    ds.height = height;
    ds.width = width;
    for (int j = 0; j < classes; ++j)
        ds.class_names.push_back("c" + std::to_string(j + 1));
    for (int j = 0; j < classes; ++j)
        for (int i = 0; i < per_class; ++i) {
            Matrix x = prototypes[j];
            if (noise_sigma > 0.0)
                for (int a = 0; a < height; ++a)
                    for (int b = 0; b < width; ++b)
                        x(a, b) += rng.normal(0.0, noise_sigma);
            ds.samples.push_back(std::move(x));
            ds.labels.push_back(j);
        }
    return ds;
}

} // namespace r2dpca
