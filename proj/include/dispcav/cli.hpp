#pragma once
#include <string>
#include <vector>

namespace dispcav::cli {

// Batch front-end.  Subcommands: dispersion, coupling, exact, series, pt,
// roundtrip, validity-map, compare.  Returns 0 on success, 1 on validation
// errors (bad config, bad flags), 2 on numerical failure (divergence where
// convergence was required).
int run(const std::vector<std::string>& args);

}  // namespace dispcav::cli
