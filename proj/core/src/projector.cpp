#include "r2dpca/projector.hpp"

#include <cmath>
#include <limits>

#include "r2dpca/errors.hpp"
#include "r2dpca/rng.hpp"

namespace r2dpca {

InitKind parse_init(const std::string& name) {
    if (name == "ones")
        return InitKind::Ones;
    if (name == "singular-proxy" || name == "first-right-singular-proxy")
        return InitKind::SingularProxy;
    if (name == "unit-e1")
        return InitKind::UnitE1;
    if (name == "seeded-random")
        return InitKind::SeededRandom;
    throw InvalidParameter("unknown init strategy: " + name);
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_config(const FitConfig& cfg, int width) {
    if (!(cfg.s >= 1.0) || std::isinf(cfg.s))
        throw InvalidParameter("fit: s must be a finite real >= 1");
    if (std::isnan(cfg.p) || cfg.p <= 0.0)
        throw InvalidParameter("fit: p must be > 0 or infinity");
    if (!(cfg.gamma >= 0.0 && cfg.gamma <= 1.0))
        throw InvalidParameter("fit: gamma must lie in [0, 1]");
    if (cfg.num_axes < 1 || cfg.num_axes > width)
        throw InvalidParameter("fit: r must satisfy 1 <= r <= image width");
    if (!(cfg.tol > 0.0))
        throw InvalidParameter("fit: tol must be positive");
    if (cfg.max_iter < 1)
        throw InvalidParameter("fit: max_iter must be >= 1");
    if (!(cfg.lambda_sparsity >= 0.0) || std::isinf(cfg.lambda_sparsity))
        throw InvalidParameter("fit: lambda_sparsity must be finite and >= 0");
}

Vector normalized_p(Vector v, double p) {
    const double norm = lp_norm(v, p);
    if (norm == 0.0)
        throw InvalidState("cannot normalize the zero vector");
    for (double& x : v)
        x /= norm;
    return v;
}

Vector initial_axis(const std::vector<Matrix>& work, const FitConfig& cfg, Rng& rng,
                    bool force_random) {
    const int width = work.front().cols();
    InitKind kind = force_random ? InitKind::SeededRandom : cfg.init;
    switch (kind) {
    case InitKind::UnitE1: {
        Vector v(width, 0.0);
        v[0] = 1.0;
        return v;
    }
    case InitKind::SingularProxy: {
        const Vector ones(width, 1.0);
        Vector z(width, 0.0);
        for (const Matrix& x : work) {
            const Vector y = mat_vec(x, ones);
            const Vector back = tmat_vec(x, y);
            for (int i = 0; i < width; ++i)
                z[i] += back[i];
        }
        if (lp_norm(z, cfg.p) == 0.0)
            return normalized_p(Vector(width, 1.0), cfg.p);
        return normalized_p(std::move(z), cfg.p);
    }
    case InitKind::SeededRandom: {
        for (;;) {
            Vector v(width);
            for (double& x : v)
                x = rng.uniform(-1.0, 1.0);
            if (lp_norm(v, cfg.p) > 0.0)
                return normalized_p(std::move(v), cfg.p);
        }
    }
    case InitKind::Ones:
    default:
        return normalized_p(Vector(width, 1.0), cfg.p);
    }
}

// gamma * sum_i X_i^T [|X_i w|^{s-1} o sign(X_i w)]
// + (1-gamma) * sum_j sum_i (c_j X_i^j)^T [|c_j X_i^j w|^{s-1} o sign(.)]
Vector criterion_gradient(const std::vector<Matrix>& work, const std::vector<int>& labels,
                          const RelaxationVector& relax, double gamma, double s,
                          const Vector& w) {
    const int width = work.front().cols();
    Vector grad(width, 0.0);
    if (gamma > 0.0) {
        Vector acc(width, 0.0);
        for (const Matrix& x : work) {
            Vector y = mat_vec(x, w);
            const Vector t = hadamard(pow_abs(y, s - 1.0), signum(y));
            const Vector back = tmat_vec(x, t);
            for (int i = 0; i < width; ++i)
                acc[i] += back[i];
        }
        for (int i = 0; i < width; ++i)
            grad[i] += gamma * acc[i];
    }
    if (gamma < 1.0) {
        Vector acc(width, 0.0);
        for (std::size_t k = 0; k < work.size(); ++k) {
            const double c = relax.sample_weight[labels[k]];
            Vector y = mat_vec(work[k], w);
            for (double& v : y)
                v *= c;
            const Vector t = hadamard(pow_abs(y, s - 1.0), signum(y));
            const Vector back = tmat_vec(work[k], t);
            for (int i = 0; i < width; ++i)
                acc[i] += c * back[i];
        }
        for (int i = 0; i < width; ++i)
            grad[i] += (1.0 - gamma) * acc[i];
    }
    return grad;
}

enum class UpdateRule { Lp, L1sShrink };

// One constraint-projection step; returns false when the direction
// vanished and the axis must stop as degenerate.
bool update_axis(Vector& w, const Vector& grad, const FitConfig& cfg, UpdateRule rule) {
    const int width = static_cast<int>(w.size());
    if (rule == UpdateRule::L1sShrink) {
        Vector u(width);
        for (int i = 0; i < width; ++i) {
            const double aw = std::abs(w[i]);
            const double denom = cfg.lambda_sparsity + aw;
            u[i] = (denom == 0.0) ? 0.0 : grad[i] * (aw / denom);
        }
        const double norm = lp_norm(u, 2.0);
        if (norm == 0.0)
            return false;
        for (int i = 0; i < width; ++i)
            w[i] = u[i] / norm;
        return true;
    }

    const double p = cfg.p;
    if (p == kInf) {
        bool nonzero = false;
        for (double g : grad)
            if (g != 0.0)
                nonzero = true;
        if (!nonzero)
            return false;
        w = signum(grad);
        return true;
    }
    if (p == 1.0) {
        int best = 0;
        double best_mag = -1.0;
        for (int i = 0; i < width; ++i) {
            const double m = std::abs(grad[i]);
            if (m > best_mag) { // first maximum wins, lowest index on ties
                best_mag = m;
                best = i;
            }
        }
        if (best_mag == 0.0)
            return false;
        std::fill(w.begin(), w.end(), 0.0);
        w[best] = (grad[best] > 0.0) ? 1.0 : -1.0;
        return true;
    }
    Vector u;
    if (p > 1.0) {
        const double q = p / (p - 1.0);
        u = hadamard(pow_abs(grad, q - 1.0), signum(grad));
    } else { // 0 < p < 1: multiplicative update, zero entries are absorbing
        u = hadamard(pow_abs(w, 2.0 - p), grad);
    }
    const double norm = lp_norm(u, p);
    if (norm == 0.0)
        return false;
    for (int i = 0; i < width; ++i)
        w[i] = u[i] / norm;
    return true;
}

ProjectionModel fit_iterative(const LabeledDataset& train, const RelaxationVector& relax,
                              const FitConfig& cfg, UpdateRule rule, FitTrace* trace) {
    if (train.samples.empty())
        throw InvalidInput("fit: empty training set");
    validate_config(cfg, train.width);
    if (cfg.gamma < 1.0) {
        if (relax.empty())
            throw InvalidParameter("fit: gamma < 1 requires a relaxation vector");
        if (relax.num_classes() != train.num_classes())
            throw DimensionError("fit: relaxation vector does not match class count");
    }

    const Centering centering = compute_centering(train);
    std::vector<Matrix> work;
    work.reserve(train.samples.size());
    for (const Matrix& x : train.samples)
        work.push_back(x - centering.global_mean);

    auto criterion = [&](const std::vector<Matrix>& samples, const Vector& w) {
        return objective(samples, train.labels, relax, cfg.gamma, cfg.s, w);
    };

    Rng rng(derive_seed(cfg.seed, "fit-init"));

    ProjectionModel model;
    model.height = train.height;
    model.width = train.width;
    model.mean = centering.global_mean;
    model.relax = (cfg.gamma < 1.0) ? relax : RelaxationVector{};
    model.config = cfg;
    model.basis = Matrix(train.width, cfg.num_axes);
    model.objective_values.resize(cfg.num_axes);
    model.iters_per_axis.resize(cfg.num_axes);
    model.axis_status.resize(cfg.num_axes);
    if (trace)
        trace->axes.assign(cfg.num_axes, {});

    Matrix accepted(train.width, 0); // grows one column per accepted axis

    for (int t = 0; t < cfg.num_axes; ++t) {
        Vector w = initial_axis(work, cfg, rng, false);
        double f = criterion(work, w);
        std::uint8_t status = kAxisConverged;
        std::uint32_t iters = 0;

        // degenerate start (e.g. fully deflated data): try random restarts
        int redraws = 0;
        while (f == 0.0 && redraws < 3) {
            w = initial_axis(work, cfg, rng, true);
            f = criterion(work, w);
            ++redraws;
        }

        FitTrace::Axis* ax = trace ? &trace->axes[t] : nullptr;
        if (ax)
            ax->objectives.push_back(f);

        if (f == 0.0) {
            status = kAxisDegenerate;
        } else {
            while (iters < static_cast<std::uint32_t>(cfg.max_iter)) {
                const Vector grad =
                    criterion_gradient(work, train.labels, relax, cfg.gamma, cfg.s, w);
                Vector w_next = w;
                if (!update_axis(w_next, grad, cfg, rule)) {
                    status = kAxisDegenerate;
                    break;
                }
                const double f_next = criterion(work, w_next);
                w = std::move(w_next);
                ++iters;
                if (ax) {
                    ax->objectives.push_back(f_next);
                    ax->iterates.push_back(w);
                }
                const double delta = (std::abs(f) >= 1e-300)
                                         ? std::abs(f_next - f) / std::abs(f)
                                         : std::abs(f_next - f);
                f = f_next;
                if (delta <= cfg.tol)
                    break;
                if (iters == static_cast<std::uint32_t>(cfg.max_iter))
                    status = kAxisMaxIter; // warning, not an error
            }
        }

        for (int i = 0; i < train.width; ++i)
            model.basis(i, t) = w[i];
        model.objective_values[t] = f;
        model.iters_per_axis[t] = iters;
        model.axis_status[t] = status;

        Matrix grown(train.width, t + 1);
        for (int i = 0; i < train.width; ++i) {
            for (int j = 0; j < t; ++j)
                grown(i, j) = accepted(i, j);
            grown(i, t) = w[i];
        }
        accepted = std::move(grown);
        work = deflate(work, accepted);
    }
    return model;
}

} // namespace

double objective(const std::vector<Matrix>& centered_samples,
                 const std::vector<int>& labels, const RelaxationVector& relax,
                 double gamma, double s, const Vector& w) {
    if (centered_samples.empty())
        throw InvalidInput("objective: no samples");
    if (!(gamma >= 0.0 && gamma <= 1.0))
        throw InvalidParameter("objective: gamma must lie in [0, 1]");
    double value = 0.0;
    if (gamma > 0.0) {
        double acc = 0.0;
        for (const Matrix& x : centered_samples)
            acc += sum_abs_pow(mat_vec(x, w), s);
        value += gamma * acc;
    }
    if (gamma < 1.0) {
        if (relax.empty())
            throw InvalidParameter("objective: gamma < 1 requires a relaxation vector");
        if (labels.size() != centered_samples.size())
            throw DimensionError("objective: labels do not match samples");
        double acc = 0.0;
        for (std::size_t k = 0; k < centered_samples.size(); ++k) {
            const double c = relax.sample_weight[labels[k]];
            Vector y = mat_vec(centered_samples[k], w);
            for (double& v : y)
                v *= c;
            acc += sum_abs_pow(y, s);
        }
        value += (1.0 - gamma) * acc;
    }
    return value;
}

std::vector<Matrix> deflate(const std::vector<Matrix>& samples, const Matrix& basis) {
    if (basis.empty())
        return samples;
    std::vector<Matrix> out;
    out.reserve(samples.size());
    for (const Matrix& x : samples) {
        if (x.cols() != basis.rows())
            throw DimensionError("deflate: sample width does not match basis");
        const Matrix proj = x * basis; // h x r
        Matrix deflated = x;
        for (int i = 0; i < x.rows(); ++i)
            for (int j = 0; j < x.cols(); ++j) {
                double acc = 0.0;
                for (int k = 0; k < basis.cols(); ++k)
                    acc += proj(i, k) * basis(j, k);
                deflated(i, j) -= acc;
            }
        out.push_back(std::move(deflated));
    }
    return out;
}

ProjectionModel r2dpca_fit(const LabeledDataset& train, const RelaxationVector& relax,
                           const FitConfig& cfg, FitTrace* trace) {
    return fit_iterative(train, relax, cfg, UpdateRule::Lp, trace);
}

ProjectionModel g2dpca_fit(const LabeledDataset& train, const FitConfig& cfg,
                           FitTrace* trace) {
    FitConfig forced = cfg;
    forced.gamma = 1.0;
    return fit_iterative(train, RelaxationVector{}, forced, UpdateRule::Lp, trace);
}

ProjectionModel twodpca_l1s_fit(const LabeledDataset& train, const FitConfig& cfg,
                                FitTrace* trace) {
    FitConfig forced = cfg;
    forced.gamma = 1.0;
    forced.s = 1.0;
    forced.p = 2.0;
    return fit_iterative(train, RelaxationVector{}, forced, UpdateRule::L1sShrink, trace);
}

ProjectionModel relaxed_2dpca_eig(const LabeledDataset& train,
                                  const RelaxationVector& relax, double gamma, int r) {
    if (train.samples.empty())
        throw InvalidInput("relaxed_2dpca_eig: empty training set");
    if (!(gamma >= 0.0 && gamma <= 1.0))
        throw InvalidParameter("relaxed_2dpca_eig: gamma must lie in [0, 1]");
    if (r < 1 || r > train.width)
        throw InvalidParameter("relaxed_2dpca_eig: r out of range");
    if (gamma < 1.0) {
        if (relax.empty())
            throw InvalidParameter("relaxed_2dpca_eig: gamma < 1 requires a relaxation vector");
        if (relax.num_classes() != train.num_classes())
            throw DimensionError("relaxed_2dpca_eig: relaxation vector does not match class count");
    }

    const Centering centering = compute_centering(train);
    const int width = train.width;
    Matrix scatter(width, width, 0.0);

    auto accumulate = [&](const Matrix& dev, double weight) {
        for (int a = 0; a < dev.rows(); ++a)
            for (int p = 0; p < width; ++p) {
                const double d = dev(a, p);
                if (d == 0.0)
                    continue;
                for (int q = 0; q < width; ++q)
                    scatter(p, q) += weight * d * dev(a, q);
            }
    };

    if (gamma > 0.0) {
        const double wg = gamma / train.size();
        for (const Matrix& x : train.samples)
            accumulate(x - centering.global_mean, wg);
    }
    if (gamma < 1.0) {
        for (int i = 0; i < train.size(); ++i) {
            const double wr = (1.0 - gamma) * relax.sample_weight[train.labels[i]];
            accumulate(train.samples[i] - centering.global_mean, wr);
        }
    }

    auto [basis, values] = sym_eig(scatter, r);
    for (double& d : values)
        d = std::max(0.0, d); // PSD blend; clip fp round-off

    ProjectionModel model;
    model.height = train.height;
    model.width = width;
    model.mean = centering.global_mean;
    model.basis = std::move(basis);
    model.objective_values = std::move(values);
    model.relax = (gamma < 1.0) ? relax : RelaxationVector{};
    model.config.s = 2.0;
    model.config.p = 2.0;
    model.config.gamma = gamma;
    model.config.num_axes = r;
    model.iters_per_axis.assign(r, 0);
    model.axis_status.assign(r, kAxisConverged);
    return model;
}

ProjectionModel truncated(const ProjectionModel& model, int r_prime) {
    if (r_prime < 1 || r_prime > model.num_axes())
        throw InvalidParameter("truncated: r' out of range");
    ProjectionModel out = model;
    out.config.num_axes = r_prime;
    out.basis = Matrix(model.width, r_prime);
    for (int i = 0; i < model.width; ++i)
        for (int j = 0; j < r_prime; ++j)
            out.basis(i, j) = model.basis(i, j);
    out.objective_values.assign(model.objective_values.begin(),
                                model.objective_values.begin() + r_prime);
    out.iters_per_axis.assign(model.iters_per_axis.begin(),
                              model.iters_per_axis.begin() + r_prime);
    out.axis_status.assign(model.axis_status.begin(),
                           model.axis_status.begin() + r_prime);
    return out;
}

} // namespace r2dpca
