#pragma once

#include "options.hpp"

namespace r2dpca::cli {

int cmd_synth(const Options& opts);
int cmd_fit(const Options& opts);
int cmd_eval(const Options& opts);
int cmd_search(const Options& opts);
int cmd_compare(const Options& opts);

} // namespace r2dpca::cli
