#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "rbql/bench.hpp"

namespace rbql {

/// Static SVG line chart of one maze size: per agent a shaded band
/// between the trimmed min/max plus a mean polyline, and a horizontal
/// reference line at 2*size-2 (the best possible step count). Bands are
/// the only <polygon> elements and means the only <polyline> elements.
/// Byte-identical output for identical input. Throws
/// std::invalid_argument when the summary has no rows for the size.
std::string render_plot_svg(const std::vector<SummaryRow>& summary, int size);

void render_plot(const std::vector<SummaryRow>& summary, int size,
                 const std::filesystem::path& path);

} // namespace rbql
