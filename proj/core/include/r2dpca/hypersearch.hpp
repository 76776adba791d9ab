#pragma once

#include <functional>
#include <string>
#include <vector>

namespace r2dpca {

// Finite (s, p) lattice with the box radius used by the restart probe.
struct SearchGrid {
    std::vector<double> s_values; // strictly ascending
    std::vector<double> p_values; // strictly ascending
    double delta = 0.3;
};

// "min:step:max" axis, inclusive of max up to rounding.
std::vector<double> grid_axis(double min, double step, double max);
std::vector<double> parse_axis(const std::string& spec); // "1.0:0.1:3.0"

struct PathEntry {
    enum class Kind { Restart, SweepS, SweepP, Box } kind;
    double s = 0.0;
    double p = 0.0;
    double accuracy = 0.0;
};

std::string to_string(PathEntry::Kind kind);

struct SearchResult {
    double best_s = 0.0;
    double best_p = 0.0;
    double best_accuracy = 0.0;
    std::vector<PathEntry> path;
    int evaluations = 0; // unique evaluator calls
};

using Evaluator = std::function<double(double s, double p)>;

// Restarted alternating direction search: sweep s at fixed p, sweep p at
// fixed s, repeat to a fixed point, then exhaustively probe the delta-box
// around it and restart from any strict improvement. Sweeps keep the
// incumbent unless a candidate is strictly better; equal strict
// improvements resolve to the smaller parameter value. Every grid point
// is evaluated at most once.
SearchResult search(const SearchGrid& grid, const Evaluator& evaluate,
                    double start_s, double start_p);

// Evaluates every grid point; best is the true grid argmax (smallest
// (s, p) lexicographically on ties).
SearchResult exhaustive(const SearchGrid& grid, const Evaluator& evaluate);

} // namespace r2dpca
