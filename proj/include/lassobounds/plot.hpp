#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lassobounds/runner.hpp"

namespace lassobounds {

/// gnuplot-readable table: one whitespace-delimited line per row.
std::string render_gnuplot_data(const std::vector<SummaryRow>& rows);

/// Standalone SVG with mean_mspe, mean_mspe_hat, thm1_bound and thm2_bound
/// against n on log-log axes. Non-positive values are left out of the curves.
std::string render_svg(const std::vector<SummaryRow>& rows);

/// Writes summary.dat and summary.svg into out_dir. Throws
/// std::invalid_argument on empty rows, IoError on write failure.
void emit_plot_data(const std::vector<SummaryRow>& rows, const std::filesystem::path& out_dir);

}  // namespace lassobounds
