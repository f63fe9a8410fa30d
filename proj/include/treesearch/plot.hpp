// SVG rendering for sweep summaries. Pure functions: rows in, markup out.
// Rendering touches no files and no clocks, so identical summaries always
// produce identical bytes.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "treesearch/bench.hpp"

namespace treesearch {

// Renders one chart: mean return vs. trace budget (log-scaled x axis) with a
// shaded standard-error band per variant. `rows` must all share `env_name`.
std::string render_sweep_svg(const std::string& env_name,
                             const std::vector<SweepRow>& rows);

// Splits rows by environment and renders one chart each, keyed by env name.
std::map<std::string, std::string> render_sweep_svgs(
    const std::vector<SweepRow>& rows);

// Fixed per-variant line color, e.g. "#1f77b4".
const char* variant_color(Variant variant);

}  // namespace treesearch
