#include "r2dpca/model_io.hpp"

#include <cstring>
#include <fstream>

#include "r2dpca/errors.hpp"

namespace r2dpca {

namespace {

constexpr char kMagic[4] = {'R', '2', 'D', 'M'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ostream& out, const T& value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::istream& in, const std::filesystem::path& path) {
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in)
        throw LoadError("model: truncated file " + path.string());
    return value;
}

void put_doubles(std::ostream& out, const double* data, std::size_t n) {
    out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(n * sizeof(double)));
}

void get_doubles(std::istream& in, double* data, std::size_t n,
                 const std::filesystem::path& path) {
    in.read(reinterpret_cast<char*>(data), static_cast<std::streamsize>(n * sizeof(double)));
    if (!in)
        throw LoadError("model: truncated file " + path.string());
}

} // namespace

void save_model(const std::filesystem::path& path, const ProjectionModel& model) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw LoadError("model: cannot open " + path.string() + " for writing");

    out.write(kMagic, 4);
    put(out, kVersion);
    put(out, static_cast<std::uint32_t>(model.height));
    put(out, static_cast<std::uint32_t>(model.width));
    const std::uint32_t r = static_cast<std::uint32_t>(model.num_axes());
    put(out, r);
    put(out, model.config.s);
    put(out, model.config.p);
    put(out, model.config.gamma);
    put(out, model.config.seed);
    put(out, model.config.tol);
    put(out, static_cast<std::uint32_t>(model.config.max_iter));
    put(out, model.config.lambda_sparsity);
    put(out, static_cast<std::uint8_t>(model.config.init));

    put_doubles(out, model.mean.data(),
                static_cast<std::size_t>(model.height) * model.width);
    // basis in column-major order
    for (std::uint32_t j = 0; j < r; ++j)
        for (int i = 0; i < model.width; ++i)
            put(out, model.basis(i, static_cast<int>(j)));
    put_doubles(out, model.objective_values.data(), r);

    const std::uint32_t m = static_cast<std::uint32_t>(model.relax.num_classes());
    put(out, m);
    put_doubles(out, model.relax.class_weight.data(), m);
    put_doubles(out, model.relax.sample_weight.data(), m);

    for (std::uint32_t t = 0; t < r; ++t)
        put(out, model.iters_per_axis[t]);
    for (std::uint32_t t = 0; t < r; ++t)
        put(out, model.axis_status[t]);
    if (!out)
        throw LoadError("model: write failed for " + path.string());
}

ProjectionModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw LoadError("model: cannot open " + path.string());

    char magic[4] = {};
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw LoadError("model: bad magic in " + path.string());
    const auto version = get<std::uint32_t>(in, path);
    if (version != kVersion)
        throw LoadError("model: unsupported version " + std::to_string(version) +
                        " in " + path.string());

    ProjectionModel model;
    model.height = static_cast<int>(get<std::uint32_t>(in, path));
    model.width = static_cast<int>(get<std::uint32_t>(in, path));
    const int r = static_cast<int>(get<std::uint32_t>(in, path));
    if (model.height < 1 || model.width < 1 || r < 1)
        throw LoadError("model: invalid dimensions in " + path.string());
    model.config.s = get<double>(in, path);
    model.config.p = get<double>(in, path);
    model.config.gamma = get<double>(in, path);
    model.config.seed = get<std::uint64_t>(in, path);
    model.config.tol = get<double>(in, path);
    model.config.max_iter = static_cast<int>(get<std::uint32_t>(in, path));
    model.config.lambda_sparsity = get<double>(in, path);
    model.config.init = static_cast<InitKind>(get<std::uint8_t>(in, path));
    model.config.num_axes = r;

    model.mean = Matrix(model.height, model.width);
    get_doubles(in, model.mean.data(),
                static_cast<std::size_t>(model.height) * model.width, path);
    model.basis = Matrix(model.width, r);
    for (int j = 0; j < r; ++j)
        for (int i = 0; i < model.width; ++i)
            model.basis(i, j) = get<double>(in, path);
    model.objective_values.resize(r);
    get_doubles(in, model.objective_values.data(), static_cast<std::size_t>(r), path);

    const auto m = get<std::uint32_t>(in, path);
    model.relax.class_weight.resize(m);
    model.relax.sample_weight.resize(m);
    get_doubles(in, model.relax.class_weight.data(), m, path);
    get_doubles(in, model.relax.sample_weight.data(), m, path);

    model.iters_per_axis.resize(r);
    for (int t = 0; t < r; ++t)
        model.iters_per_axis[t] = get<std::uint32_t>(in, path);
    model.axis_status.resize(r);
    for (int t = 0; t < r; ++t)
        model.axis_status[t] = get<std::uint8_t>(in, path);
    return model;
}

} // namespace r2dpca
