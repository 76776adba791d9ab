#include "r2dpca/hypersearch.hpp"

#include <cmath>
#include <optional>

#include "r2dpca/errors.hpp"

namespace r2dpca {

std::vector<double> grid_axis(double min, double step, double max) {
    if (!(step > 0.0) || !(max >= min))
        throw InvalidParameter("grid_axis: need step > 0 and max >= min");
    const int count = static_cast<int>(std::floor((max - min) / step + 0.5)) + 1;
    std::vector<double> values(count);
    for (int i = 0; i < count; ++i)
        values[i] = min + i * step;
    return values;
}

std::vector<double> parse_axis(const std::string& spec) {
    const std::size_t c1 = spec.find(':');
    const std::size_t c2 = (c1 == std::string::npos) ? c1 : spec.find(':', c1 + 1);
    if (c2 == std::string::npos)
        throw InvalidParameter("axis spec must be min:step:max, got '" + spec + "'");
    try {
        const double min = std::stod(spec.substr(0, c1));
        const double step = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
        const double max = std::stod(spec.substr(c2 + 1));
        return grid_axis(min, step, max);
    } catch (const std::logic_error&) {
        throw InvalidParameter("axis spec must be numeric min:step:max, got '" + spec + "'");
    }
}

std::string to_string(PathEntry::Kind kind) {
    switch (kind) {
    case PathEntry::Kind::Restart:
        return "restart";
    case PathEntry::Kind::SweepS:
        return "sweep-s";
    case PathEntry::Kind::SweepP:
        return "sweep-p";
    case PathEntry::Kind::Box:
        return "box";
    }
    return "?";
}

namespace {

void validate_grid(const SearchGrid& grid) {
    if (grid.s_values.empty() || grid.p_values.empty())
        throw InvalidParameter("search grid: empty axis");
    for (std::size_t i = 1; i < grid.s_values.size(); ++i)
        if (!(grid.s_values[i] > grid.s_values[i - 1]))
            throw InvalidParameter("search grid: s axis not strictly ascending");
    for (std::size_t i = 1; i < grid.p_values.size(); ++i)
        if (!(grid.p_values[i] > grid.p_values[i - 1]))
            throw InvalidParameter("search grid: p axis not strictly ascending");
}

int locate(const std::vector<double>& axis, double value) {
    for (std::size_t i = 0; i < axis.size(); ++i)
        if (std::abs(axis[i] - value) <= 1e-9)
            return static_cast<int>(i);
    return -1;
}

// Single-evaluation-per-point memo over the grid.
class Cache {
public:
    Cache(const SearchGrid& grid, const Evaluator& evaluate)
        : grid_(grid), evaluate_(evaluate),
          cells_(grid.s_values.size() * grid.p_values.size()) {}

    double at(int i, int j) {
        auto& cell = cells_[static_cast<std::size_t>(i) * grid_.p_values.size() + j];
        if (!cell) {
            cell = evaluate_(grid_.s_values[i], grid_.p_values[j]);
            ++evaluations_;
        }
        return *cell;
    }

    int evaluations() const { return evaluations_; }

private:
    const SearchGrid& grid_;
    const Evaluator& evaluate_;
    std::vector<std::optional<double>> cells_;
    int evaluations_ = 0;
};

} // namespace

SearchResult search(const SearchGrid& grid, const Evaluator& evaluate,
                    double start_s, double start_p) {
    validate_grid(grid);
    int si = locate(grid.s_values, start_s);
    int pj = locate(grid.p_values, start_p);
    if (si < 0 || pj < 0)
        throw InvalidParameter("search: start point is not on the grid");

    Cache cache(grid, evaluate);
    SearchResult result;
    auto log = [&](PathEntry::Kind kind, int i, int j, double acc) {
        result.path.push_back({kind, grid.s_values[i], grid.p_values[j], acc});
    };

    double best = cache.at(si, pj);
    log(PathEntry::Kind::Restart, si, pj, best);

    for (;;) {
        // alternate axis sweeps until the incumbent stops moving
        for (;;) {
            const int prev_si = si, prev_pj = pj;
            const double prev_best = best;
            for (int i = 0; i < static_cast<int>(grid.s_values.size()); ++i) {
                const double acc = cache.at(i, pj);
                if (acc > best) {
                    best = acc;
                    si = i;
                }
            }
            log(PathEntry::Kind::SweepS, si, pj, best);
            for (int j = 0; j < static_cast<int>(grid.p_values.size()); ++j) {
                const double acc = cache.at(si, j);
                if (acc > best) {
                    best = acc;
                    pj = j;
                }
            }
            log(PathEntry::Kind::SweepP, si, pj, best);
            if (si == prev_si && pj == prev_pj && best == prev_best)
                break;
        }

        // exhaustive probe of the delta-box around the fixed point
        int box_si = si, box_pj = pj;
        double box_best = best;
        for (int i = 0; i < static_cast<int>(grid.s_values.size()); ++i) {
            if (std::abs(grid.s_values[i] - grid.s_values[si]) > grid.delta)
                continue;
            for (int j = 0; j < static_cast<int>(grid.p_values.size()); ++j) {
                if (std::abs(grid.p_values[j] - grid.p_values[pj]) > grid.delta)
                    continue;
                const double acc = cache.at(i, j);
                if (acc > box_best) {
                    box_best = acc;
                    box_si = i;
                    box_pj = j;
                }
            }
        }
        log(PathEntry::Kind::Box, box_si, box_pj, box_best);
        if (box_best <= best)
            break; // no strict improvement: the fixed point stands
        si = box_si;
        pj = box_pj;
        best = box_best;
        log(PathEntry::Kind::Restart, si, pj, best);
    }

    result.best_s = grid.s_values[si];
    result.best_p = grid.p_values[pj];
    result.best_accuracy = best;
    result.evaluations = cache.evaluations();
    return result;
}

SearchResult exhaustive(const SearchGrid& grid, const Evaluator& evaluate) {
    validate_grid(grid);
    Cache cache(grid, evaluate);
    SearchResult result;
    int best_i = 0, best_j = 0;
    double best = -1.0;
    for (int i = 0; i < static_cast<int>(grid.s_values.size()); ++i)
        for (int j = 0; j < static_cast<int>(grid.p_values.size()); ++j) {
            const double acc = cache.at(i, j);
            result.path.push_back({PathEntry::Kind::Box, grid.s_values[i],
                                   grid.p_values[j], acc});
            if (acc > best) {
                best = acc;
                best_i = i;
                best_j = j;
            }
        }
    result.best_s = grid.s_values[best_i];
    result.best_p = grid.p_values[best_j];
    result.best_accuracy = best;
    result.evaluations = cache.evaluations();
    return result;
}

} // namespace r2dpca
