#include "lassobounds/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "lassobounds/csv.hpp"
#include "lassobounds/errors.hpp"

namespace lassobounds {

namespace {

struct Series {
  const char* label;
  const char* color;
  const char* dash;
  double SummaryRow::*field;
};

constexpr Series kSeries[] = {
    {"mean MSPE", "#1f77b4", "", &SummaryRow::mean_mspe},
    {"mean estimated MSPE", "#ff7f0e", "", &SummaryRow::mean_mspe_hat},
    {"MSPE bound", "#1f77b4", "6,4", &SummaryRow::thm1_bound},
    {"estimated MSPE bound", "#ff7f0e", "6,4", &SummaryRow::thm2_bound},
};

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 80, kRight = 200, kTop = 30, kBottom = 60;

// [lo, hi] in log10 space, widened when degenerate.
struct LogRange {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (v > 0 && std::isfinite(v)) {
      lo = std::min(lo, std::log10(v));
      hi = std::max(hi, std::log10(v));
    }
  }
  void finalize() {
    if (!std::isfinite(lo)) lo = 0, hi = 1;
    if (hi - lo < 1e-9) lo -= 0.5, hi += 0.5;
  }
};

std::string num(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

}  // namespace

std::string render_gnuplot_data(const std::vector<SummaryRow>& rows) {
  std::ostringstream out;
  out << "# n p K mean_mspe se_mspe mean_mspe_hat se_mspe_hat thm1_bound thm2_bound\n";
  for (const auto& r : rows) {
    out << r.n << ' ' << r.p << ' ' << format_double(r.K) << ' ' << format_double(r.mean_mspe) << ' '
        << format_double(r.se_mspe) << ' ' << format_double(r.mean_mspe_hat) << ' ' << format_double(r.se_mspe_hat)
        << ' ' << format_double(r.thm1_bound) << ' ' << format_double(r.thm2_bound) << '\n';
  }
  return out.str();
}

std::string render_svg(const std::vector<SummaryRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("render_svg: no rows to plot");
  LogRange xr, yr;
  for (const auto& r : rows) {
    xr.add(static_cast<double>(r.n));
    for (const auto& s : kSeries) yr.add(r.*s.field);
  }
  xr.finalize();
  yr.finalize();
  const double plot_w = kWidth - kLeft - kRight, plot_h = kHeight - kTop - kBottom;
  auto sx = [&](double v) { return kLeft + (std::log10(v) - xr.lo) / (xr.hi - xr.lo) * plot_w; };
  auto sy = [&](double v) { return kTop + (yr.hi - std::log10(v)) / (yr.hi - yr.lo) * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\"" << plot_h
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  // Decade gridlines and labels.
  for (int e = static_cast<int>(std::ceil(xr.lo - 1e-9)); e <= static_cast<int>(std::floor(xr.hi + 1e-9)); ++e) {
    const double x = sx(std::pow(10.0, e));
    svg << "<line x1=\"" << num(x) << "\" y1=\"" << kTop << "\" x2=\"" << num(x) << "\" y2=\"" << kTop + plot_h
        << "\" stroke=\"#dddddd\"/>\n";
    svg << "<text x=\"" << num(x) << "\" y=\"" << kTop + plot_h + 18 << "\" text-anchor=\"middle\">1e" << e
        << "</text>\n";
  }
  for (int e = static_cast<int>(std::ceil(yr.lo - 1e-9)); e <= static_cast<int>(std::floor(yr.hi + 1e-9)); ++e) {
    const double y = sy(std::pow(10.0, e));
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << num(y) << "\" x2=\"" << kLeft + plot_w << "\" y2=\"" << num(y)
        << "\" stroke=\"#dddddd\"/>\n";
    svg << "<text x=\"" << kLeft - 6 << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">1e" << e << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\">n</text>\n";
  svg << "<text x=\"20\" y=\"" << kTop + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
      << kTop + plot_h / 2 << ")\">error</text>\n";

  int legend_row = 0;
  for (const auto& s : kSeries) {
    std::ostringstream points;
    int count = 0;
    for (const auto& r : rows) {
      const double v = r.*s.field;
      if (!(v > 0) || !std::isfinite(v)) continue;
      points << (count++ ? " " : "") << num(sx(static_cast<double>(r.n))) << ',' << num(sy(v));
    }
    svg << "<g class=\"series\" data-label=\"" << s.label << "\">\n";
    if (count > 1) {
      svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\"";
      if (*s.dash) svg << " stroke-dasharray=\"" << s.dash << "\"";
      svg << " points=\"" << points.str() << "\"/>\n";
    }
    for (const auto& r : rows) {
      const double v = r.*s.field;
      if (!(v > 0) || !std::isfinite(v)) continue;
      svg << "<circle cx=\"" << num(sx(static_cast<double>(r.n))) << "\" cy=\"" << num(sy(v)) << "\" r=\"3\" fill=\""
          << s.color << "\"/>\n";
    }
    svg << "</g>\n";
    const double ly = kTop + 10 + 20 * legend_row++;
    svg << "<line x1=\"" << kLeft + plot_w + 15 << "\" y1=\"" << ly << "\" x2=\"" << kLeft + plot_w + 45
        << "\" y2=\"" << ly << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"";
    if (*s.dash) svg << " stroke-dasharray=\"" << s.dash << "\"";
    svg << "/>\n<text x=\"" << kLeft + plot_w + 50 << "\" y=\"" << ly + 4 << "\">" << s.label << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void emit_plot_data(const std::vector<SummaryRow>& rows, const std::filesystem::path& out_dir) {
  if (rows.empty()) throw std::invalid_argument("emit_plot_data: no summary rows");
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
  const std::pair<const char*, std::string> files[] = {
      {"summary.dat", render_gnuplot_data(rows)},
      {"summary.svg", render_svg(rows)},
  };
  for (const auto& [name, content] : files) {
    std::ofstream out(out_dir / name, std::ios::binary | std::ios::trunc);
    out << content;
    if (!out) throw IoError("cannot write " + (out_dir / name).string());
  }
}

}  // namespace lassobounds
