#include <cstring>
#include <iostream>
#include <string>

#include "experiment.hpp"
#include "r2dpca/errors.hpp"

namespace {

constexpr const char* kUsage = R"(usage: r2dpca <command> [--config <path>] [--key value ...]

commands:
  synth     generate a synthetic dataset (manifest + PGM images)
  fit       learn a projection model, write model.bin + fit_report.csv
  eval      evaluate a model over feature counts, write accuracy.csv + predictions.csv
  search    restarted alternating (s, p) search, write search_path.csv
  compare   per-method accuracy table, write compare.csv

common options:
  --config <path>        flat key = value file; command-line flags override it
  --seed <int>           root seed; all randomness derives from it
  --out <dir>            output directory (default .)
  --manifest <path>      dataset manifest, or use --synth-m/--synth-per-class/
                         --synth-h/--synth-w/--synth-sigma for synthetic data
  --method <name>        2dpca | 2dpca-eig | 2dpca-l1 | 2dpca-l1s | g2dpca |
                         r2dpca | r2dpca-eig
  --s --p --gamma --r    model parameters (p accepts "inf")
  --lambda               2dpca-l1s shrinkage parameter
  --relax-fn             identity-plus-epsilon | exponential | constant
  --train-per-class <n>  per-class training split size
  --repeats <n>          number of seeded split repetitions to average
  --grid-s --grid-p      search axes as min:step:max
  --delta                search box radius (default 0.3)
  --exhaustive           evaluate the whole grid instead of searching

exit status: 0 success, 1 usage/config error, 2 data error, 3 numerical failure
)";

int dispatch(const std::string& command, const r2dpca::cli::Options& opts) {
    using namespace r2dpca::cli;
    if (command == "synth")
        return cmd_synth(opts);
    if (command == "fit")
        return cmd_fit(opts);
    if (command == "eval")
        return cmd_eval(opts);
    if (command == "search")
        return cmd_search(opts);
    if (command == "compare")
        return cmd_compare(opts);
    throw r2dpca::InvalidParameter("unknown command '" + command + "'");
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2 || std::strcmp(argv[1], "--help") == 0 || std::strcmp(argv[1], "-h") == 0) {
        std::cout << kUsage;
        return (argc < 2) ? 1 : 0;
    }
    try {
        const auto opts = r2dpca::cli::Options::parse(argc, argv, 2);
        return dispatch(argv[1], opts);
    } catch (const r2dpca::InvalidParameter& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const r2dpca::LoadError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const r2dpca::DimensionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const r2dpca::InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
