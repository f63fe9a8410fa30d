#pragma once

#include <string>

#include "treesearch/search.hpp"

namespace treesearch {

// Human-readable debug dump, one line per node in pre-order (children by
// ascending action index). Stable across runs for a fixed tree, so the
// output is suitable for golden-file comparisons. Format per line:
//
//   node depth=0 state=[0] sigma=0.5 flags=- edges=[a0 n=1 w=1 q=1 b=1 r=0 | ...]
//
// flags: 'T' terminal, 'L' blocked loop, '-' otherwise. Terminal and looped
// nodes additionally report their stored leaf value instead of edges.
std::string dump_tree(const Node& root);

// %.6g rendering shared by the dump, CSV and plot writers.
std::string format_g6(double value);

}  // namespace treesearch
