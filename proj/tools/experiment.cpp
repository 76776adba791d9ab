#include "experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "r2dpca/classifier.hpp"
#include "r2dpca/dataset.hpp"
#include "r2dpca/hypersearch.hpp"
#include "r2dpca/model_io.hpp"
#include "r2dpca/projector.hpp"
#include "r2dpca/relaxation.hpp"
#include "r2dpca/rng.hpp"

namespace r2dpca::cli {

namespace {

namespace fs = std::filesystem;

std::string fmt_acc(double accuracy) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", accuracy);
    return buf;
}

std::string fmt_num(double value) {
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", value);
    return buf;
}

fs::path output_dir(const Options& opts) {
    fs::path dir = opts.get_string("out", ".");
    fs::create_directories(dir);
    return dir;
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path);
    if (!out)
        throw LoadError("cannot write " + path.string());
    return out;
}

LabeledDataset load_experiment_dataset(const Options& opts, std::uint64_t root) {
    if (opts.has("manifest"))
        return load_manifest(opts.get_string("manifest"));
    if (opts.has("synth-m")) {
        return synth_generate(opts.get_int("synth-m", 0),
                              opts.get_int("synth-per-class", 10),
                              opts.get_int("synth-h", 16), opts.get_int("synth-w", 16),
                              opts.get_double("synth-sigma", 0.05),
                              derive_seed(root, "synth"));
    }
    throw InvalidParameter("no dataset: give --manifest or --synth-m/...");
}

RelaxFn relax_fn_from(const Options& opts) {
    return RelaxFn::parse(opts.get_string("relax-fn", "identity-plus-epsilon"),
                          opts.get_double("relax-eps", 1e-12));
}

bool is_relaxed(const std::string& method) {
    return method == "r2dpca" || method == "r2dpca-eig";
}

// Rejects parameters that the chosen method fixes internally.
void check_method_params(const std::string& method, const Options& opts) {
    static const std::set<std::string> known = {
        "2dpca", "2dpca-eig", "2dpca-l1", "2dpca-l1s", "g2dpca", "r2dpca", "r2dpca-eig"};
    if (!known.count(method))
        throw InvalidParameter("unknown method '" + method + "'");
    if (method != "g2dpca" && method != "r2dpca") {
        opts.reject("s", "is fixed by method " + method);
        opts.reject("p", "is fixed by method " + method);
    }
    if (!is_relaxed(method))
        opts.reject("gamma", "is only meaningful for r2dpca / r2dpca-eig");
    if (method != "2dpca-l1s")
        opts.reject("lambda", "is only meaningful for 2dpca-l1s");
    if (method == "2dpca-eig" || method == "r2dpca-eig") {
        opts.reject("init", "is only meaningful for iterative methods");
        opts.reject("tol", "is only meaningful for iterative methods");
        opts.reject("max-iter", "is only meaningful for iterative methods");
    }
}

FitConfig fit_config_from(const Options& opts, std::uint64_t fit_seed) {
    FitConfig cfg;
    cfg.s = opts.get_double("s", 2.0);
    cfg.p = opts.get_extended("p", 2.0);
    cfg.gamma = opts.get_double("gamma", 1.0);
    cfg.num_axes = opts.get_int("r", 5);
    cfg.tol = opts.get_double("tol", 1e-10);
    cfg.max_iter = opts.get_int("max-iter", 500);
    cfg.lambda_sparsity = opts.get_double("lambda", 0.0);
    cfg.init = parse_init(opts.get_string("init", "ones"));
    cfg.seed = fit_seed;
    return cfg;
}

ProjectionModel fit_with_method(const std::string& method, const LabeledDataset& train,
                                const Options& opts, std::uint64_t fit_seed) {
    check_method_params(method, opts);
    FitConfig cfg = fit_config_from(opts, fit_seed);

    if (method == "2dpca") {
        cfg.s = 2.0;
        cfg.p = 2.0;
        return g2dpca_fit(train, cfg);
    }
    if (method == "2dpca-l1") {
        cfg.s = 1.0;
        cfg.p = 2.0;
        return g2dpca_fit(train, cfg);
    }
    if (method == "2dpca-l1s")
        return twodpca_l1s_fit(train, cfg);
    if (method == "g2dpca")
        return g2dpca_fit(train, cfg);
    if (method == "2dpca-eig")
        return relaxed_2dpca_eig(train, RelaxationVector{}, 1.0, cfg.num_axes);

    // relaxed variants default to gamma = 0 (fully label-weighted scatter)
    const double gamma = opts.get_double("gamma", 0.0);
    RelaxationVector relax;
    if (gamma < 1.0)
        relax = relaxation_vector(train, compute_centering(train), relax_fn_from(opts));
    if (method == "r2dpca") {
        cfg.gamma = gamma;
        return r2dpca_fit(train, relax, cfg);
    }
    return relaxed_2dpca_eig(train, relax, gamma, cfg.num_axes); // r2dpca-eig
}

const char* status_name(std::uint8_t status) {
    switch (status) {
    case kAxisConverged:
        return "converged";
    case kAxisMaxIter:
        return "max-iter";
    case kAxisDegenerate:
        return "degenerate";
    }
    return "?";
}

} // namespace

int cmd_synth(const Options& opts) {
    const std::uint64_t root = opts.get_u64("seed", 0);
    if (!opts.has("synth-m"))
        throw InvalidParameter("synth: requires --synth-m (plus optional --synth-per-class, "
                               "--synth-h, --synth-w, --synth-sigma)");
    const LabeledDataset ds = load_experiment_dataset(opts, root);
    const fs::path dir = output_dir(opts);
    save_dataset(ds, dir);
    std::cout << "wrote " << (dir / "manifest.txt").string() << " (" << ds.size()
              << " samples, " << ds.num_classes() << " classes, " << ds.height << "x"
              << ds.width << ")\n";
    return 0;
}

int cmd_fit(const Options& opts) {
    const std::uint64_t root = opts.get_u64("seed", 0);
    LabeledDataset ds = load_experiment_dataset(opts, root);
    const int train_per_class = opts.get_int("train-per-class", 0);
    if (train_per_class > 0)
        ds = split_per_class(ds, train_per_class, derive_seed(root, "split", 0)).first;

    const std::string method = opts.get_string("method", "r2dpca");
    const auto t0 = std::chrono::steady_clock::now();
    const ProjectionModel model = fit_with_method(method, ds, opts, derive_seed(root, "fit", 0));
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const fs::path dir = output_dir(opts);
    save_model(dir / "model.bin", model);

    auto report = open_output(dir / "fit_report.csv");
    report << "axis,iterations,status,objective\n";
    for (int t = 0; t < model.num_axes(); ++t) {
        char obj[40];
        std::snprintf(obj, sizeof(obj), "%.17g", model.objective_values[t]);
        report << (t + 1) << "," << model.iters_per_axis[t] << ","
               << status_name(model.axis_status[t]) << "," << obj << "\n";
    }
    report << "# wall_time_seconds=" << fmt_num(wall) << "\n";

    std::cout << "fit " << method << ": " << model.num_axes() << " axes on " << ds.size()
              << " samples in " << fmt_num(wall) << " s -> " << (dir / "model.bin").string()
              << "\n";
    return 0;
}

int cmd_eval(const Options& opts) {
    const std::uint64_t root = opts.get_u64("seed", 0);
    if (!opts.has("model"))
        throw InvalidParameter("eval: requires --model <path>");
    const ProjectionModel model = load_model(opts.get_string("model"));
    const LabeledDataset ds = load_experiment_dataset(opts, root);
    if (ds.height != model.height || ds.width != model.width)
        throw DimensionError("eval: dataset dimensions do not match the model");

    const int r_min = opts.get_int("r-min", 1);
    const int r_max = opts.get_int("r-max", model.num_axes());
    if (r_min < 1 || r_min > r_max)
        throw InvalidParameter("eval: need 1 <= r-min <= r-max");
    if (r_max > model.num_axes())
        throw InvalidParameter("eval: r-max exceeds the model's axis count");
    const int repeats = opts.get_int("repeats", 1);
    if (repeats < 1)
        throw InvalidParameter("eval: repeats must be >= 1");
    const bool on_train = opts.get_flag("eval-on-train");
    const int train_per_class = opts.get_int("train-per-class", 0);
    if (!on_train && train_per_class < 1)
        throw InvalidParameter("eval: requires --train-per-class or --eval-on-train");

    const fs::path dir = output_dir(opts);
    std::vector<double> acc_sum(r_max - r_min + 1, 0.0);
    bool wrote_predictions = false;

    for (int rep = 0; rep < repeats; ++rep) {
        LabeledDataset gallery_ds, test_ds;
        if (on_train) {
            gallery_ds = (train_per_class > 0)
                             ? split_per_class(ds, train_per_class,
                                               derive_seed(root, "split", rep)).first
                             : ds;
            test_ds = gallery_ds;
        } else {
            auto [train, test] = split_per_class(ds, train_per_class,
                                                 derive_seed(root, "split", rep));
            gallery_ds = std::move(train);
            test_ds = std::move(test);
        }
        for (int r = r_min; r <= r_max; ++r) {
            const ProjectionModel sub = truncated(model, r);
            const Gallery gallery = build_gallery(gallery_ds, sub);
            acc_sum[r - r_min] += accuracy(gallery, test_ds, sub);

            if (rep == 0 && r == r_max && !wrote_predictions) {
                auto pred = open_output(dir / "predictions.csv");
                pred << "test_index,true_label,predicted_label,distance\n";
                for (int i = 0; i < test_ds.size(); ++i) {
                    const Match match = nearest(gallery, project(test_ds.samples[i], sub));
                    pred << i << "," << test_ds.class_names[test_ds.labels[i]] << ","
                         << test_ds.class_names[match.label] << "," << fmt_num(match.distance)
                         << "\n";
                }
                wrote_predictions = true;
            }
        }
    }

    auto out = open_output(dir / "accuracy.csv");
    out << "r,accuracy\n";
    for (int r = r_min; r <= r_max; ++r)
        out << r << "," << fmt_acc(acc_sum[r - r_min] / repeats) << "\n";
    std::cout << "eval: wrote " << (dir / "accuracy.csv").string() << " (r=" << r_min << ".."
              << r_max << ", repeats=" << repeats << ")\n";
    return 0;
}

int cmd_search(const Options& opts) {
    const std::uint64_t root = opts.get_u64("seed", 0);
    const LabeledDataset ds = load_experiment_dataset(opts, root);
    const int train_per_class = opts.get_int("train-per-class", 0);
    if (train_per_class < 1)
        throw InvalidParameter("search: requires --train-per-class >= 1");
    const int repeats = opts.get_int("repeats", 1);
    if (repeats < 1)
        throw InvalidParameter("search: repeats must be >= 1");
    const std::string method = opts.get_string("method", "r2dpca");
    if (method != "r2dpca" && method != "g2dpca")
        throw InvalidParameter("search: method must be r2dpca or g2dpca (s, p must be free)");

    SearchGrid grid;
    grid.s_values = parse_axis(opts.get_string("grid-s", "1.0:0.1:3.0"));
    grid.p_values = parse_axis(opts.get_string("grid-p", "0.9:0.1:3.0"));
    grid.delta = opts.get_double("delta", 0.3);

    // fixed per-repeat splits keep accuracy a pure function of (s, p)
    std::vector<std::pair<LabeledDataset, LabeledDataset>> splits;
    for (int rep = 0; rep < repeats; ++rep)
        splits.push_back(split_per_class(ds, train_per_class, derive_seed(root, "split", rep)));

    Options fit_opts = opts;
    const Evaluator evaluate = [&](double s, double p) {
        fit_opts.set("s", fmt_num(s));
        fit_opts.set("p", fmt_num(p));
        double acc = 0.0;
        for (int rep = 0; rep < repeats; ++rep) {
            const auto& [train, test] = splits[rep];
            const ProjectionModel model =
                fit_with_method(method, train, fit_opts, derive_seed(root, "fit", rep));
            acc += accuracy(build_gallery(train, model), test, model);
        }
        return acc / repeats;
    };

    SearchResult result;
    if (opts.get_flag("exhaustive")) {
        result = exhaustive(grid, evaluate);
    } else {
        double start_s, start_p;
        if (opts.has("start-s") || opts.has("start-p")) {
            start_s = opts.get_double("start-s", grid.s_values.front());
            start_p = opts.get_double("start-p", grid.p_values.front());
        } else {
            Rng rng(derive_seed(root, "search-start"));
            start_s = grid.s_values[rng.uniform_index(grid.s_values.size())];
            start_p = grid.p_values[rng.uniform_index(grid.p_values.size())];
        }
        result = search(grid, evaluate, start_s, start_p);
    }

    const fs::path dir = output_dir(opts);
    auto out = open_output(dir / "search_path.csv");
    out << "step,kind,s,p,accuracy\n";
    for (std::size_t i = 0; i < result.path.size(); ++i) {
        const PathEntry& e = result.path[i];
        out << i << "," << to_string(e.kind) << "," << fmt_num(e.s) << "," << fmt_num(e.p)
            << "," << fmt_acc(e.accuracy) << "\n";
    }
    std::cout << "search: best s=" << fmt_num(result.best_s) << " p=" << fmt_num(result.best_p)
              << " accuracy=" << fmt_acc(result.best_accuracy) << " ("
              << result.evaluations << " evaluations) -> "
              << (dir / "search_path.csv").string() << "\n";
    return 0;
}

int cmd_compare(const Options& opts) {
    const std::uint64_t root = opts.get_u64("seed", 0);
    const LabeledDataset ds = load_experiment_dataset(opts, root);
    const int train_per_class = opts.get_int("train-per-class", 0);
    if (train_per_class < 1)
        throw InvalidParameter("compare: requires --train-per-class >= 1");
    const int repeats = opts.get_int("repeats", 1);
    if (repeats < 1)
        throw InvalidParameter("compare: repeats must be >= 1");
    if (!opts.has("methods"))
        throw InvalidParameter("compare: requires --methods \"name k=v ...; name k=v ...\"");

    std::vector<std::pair<LabeledDataset, LabeledDataset>> splits;
    for (int rep = 0; rep < repeats; ++rep)
        splits.push_back(split_per_class(ds, train_per_class, derive_seed(root, "split", rep)));

    const fs::path dir = output_dir(opts);
    auto out = open_output(dir / "compare.csv");
    out << "method,parameters,accuracy,status\n";

    std::stringstream specs(opts.get_string("methods"));
    std::string spec;
    while (std::getline(specs, spec, ';')) {
        std::stringstream tokens(spec);
        std::string method;
        tokens >> method;
        if (method.empty())
            continue;
        Options method_opts = opts;
        std::string params;
        std::string token;
        while (tokens >> token) {
            const std::size_t eq = token.find('=');
            if (eq == std::string::npos)
                throw InvalidParameter("compare: method parameter must be key=value, got '" +
                                       token + "'");
            method_opts.set(token.substr(0, eq), token.substr(eq + 1));
            params += (params.empty() ? "" : " ") + token;
        }
        if (params.empty())
            params = "-";

        std::string accuracy_text, status = "ok";
        try {
            double acc = 0.0;
            for (int rep = 0; rep < repeats; ++rep) {
                const auto& [train, test] = splits[rep];
                const ProjectionModel model =
                    fit_with_method(method, train, method_opts, derive_seed(root, "fit", rep));
                acc += accuracy(build_gallery(train, model), test, model);
            }
            accuracy_text = fmt_acc(acc / repeats);
        } catch (const Error& e) {
            std::string why = e.what();
            for (char& c : why)
                if (c == ',' || c == '\n')
                    c = ';';
            status = "error: " + why;
        }
        out << method << "," << params << "," << accuracy_text << "," << status << "\n";
    }
    std::cout << "compare: wrote " << (dir / "compare.csv").string() << "\n";
    return 0;
}

} // namespace r2dpca::cli
