#include "r2dpca/relaxation.hpp"

#include <cmath>

#include "r2dpca/errors.hpp"

namespace r2dpca {

double RelaxFn::operator()(double x) const {
    switch (kind) {
    case Kind::IdentityPlusEpsilon:
        return x + epsilon;
    case Kind::Exponential:
        return std::exp(x);
    case Kind::Constant:
        return 1.0;
    }
    return 1.0;
}

RelaxFn RelaxFn::parse(const std::string& name, double epsilon) {
    RelaxFn f;
    f.epsilon = epsilon;
    if (name == "identity-plus-epsilon" || name == "identity")
        f.kind = Kind::IdentityPlusEpsilon;
    else if (name == "exponential" || name == "exp")
        f.kind = Kind::Exponential;
    else if (name == "constant" || name == "const")
        f.kind = Kind::Constant;
    else
        throw InvalidParameter("unknown relaxation function: " + name);
    return f;
}

std::string RelaxFn::name() const {
    switch (kind) {
    case Kind::IdentityPlusEpsilon:
        return "identity-plus-epsilon";
    case Kind::Exponential:
        return "exponential";
    case Kind::Constant:
        return "constant";
    }
    return "?";
}

Matrix within_class_cov(const LabeledDataset& ds, const Centering& c, int class_index) {
    if (class_index < 0 || class_index >= ds.num_classes())
        throw InvalidParameter("within_class_cov: class index out of range");
    const Matrix& mean = c.class_means[class_index];
    Matrix cov(ds.width, ds.width, 0.0);
    int count = 0;
    for (int i = 0; i < ds.size(); ++i) {
        if (ds.labels[i] != class_index)
            continue;
        ++count;
        const Matrix dev = ds.samples[i] - mean;
        // cov += dev^T dev
        for (int a = 0; a < dev.rows(); ++a)
            for (int p = 0; p < dev.cols(); ++p) {
                const double dap = dev(a, p);
                if (dap == 0.0)
                    continue;
                for (int q = 0; q < dev.cols(); ++q)
                    cov(p, q) += dap * dev(a, q);
            }
    }
    if (count == 0)
        throw InvalidState("within_class_cov: class has no samples");
    const double inv = 1.0 / count;
    for (int p = 0; p < cov.rows(); ++p)
        for (int q = 0; q < cov.cols(); ++q)
            cov(p, q) *= inv;
    return cov;
}

RelaxationVector relaxation_vector(const LabeledDataset& ds, const Centering& c,
                                   const RelaxFn& f) {
    const int m = ds.num_classes();
    if (m < 1 || ds.samples.empty())
        throw InvalidInput("relaxation_vector: empty dataset");

    Vector lambda(m, 0.0);
    for (int j = 0; j < m; ++j) {
        const Matrix cov = within_class_cov(ds, c, j);
        lambda[j] = sym_eig(cov, 1).second[0];
    }

    const auto counts = ds.class_counts();
    RelaxationVector relax;
    relax.class_weight.resize(m);
    relax.sample_weight.resize(m);

    bool all_zero = true;
    for (double l : lambda)
        if (l != 0.0)
            all_zero = false;

    if (all_zero) {
        // degenerate case: every class collapses to its mean
        const double uniform = 1.0 / m;
        for (int j = 0; j < m; ++j)
            relax.class_weight[j] = uniform;
    } else {
        double total = 0.0;
        Vector mapped(m);
        for (int j = 0; j < m; ++j) {
            mapped[j] = f(lambda[j]);
            total += mapped[j];
        }
        if (!(total > 0.0))
            throw InvalidState("relaxation_vector: relaxation mass is not positive");
        for (int j = 0; j < m; ++j)
            relax.class_weight[j] = mapped[j] / total;
    }
    for (int j = 0; j < m; ++j)
        relax.sample_weight[j] = relax.class_weight[j] / counts[j];
    return relax;
}

} // namespace r2dpca
