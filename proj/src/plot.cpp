#include "vadecon/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string_view>

#include "vadecon/errors.hpp"
#include "vadecon/io/csv.hpp"

namespace vadecon {

namespace {

constexpr double kWidth = 960.0;
constexpr double kHeight = 360.0;
constexpr double kMarginLeft = 56.0;
constexpr double kMarginRight = 16.0;
constexpr double kMarginTop = 24.0;
constexpr double kMarginBottom = 36.0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string escape_xml(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace

AnnotationStyle parse_annotation_style(std::string_view s) {
  if (s == "presidency-dotted") return AnnotationStyle::kPresidencyDotted;
  if (s == "break-solid") return AnnotationStyle::kBreakSolid;
  if (s == "recession-shaded") return AnnotationStyle::kRecessionShaded;
  throw ValidationError("unknown annotation style '" + std::string(s) + "'");
}

std::string_view annotation_style_name(AnnotationStyle s) {
  switch (s) {
    case AnnotationStyle::kPresidencyDotted:
      return "presidency-dotted";
    case AnnotationStyle::kBreakSolid:
      return "break-solid";
    default:
      return "recession-shaded";
  }
}

std::string render_plot_svg(const MonthlySeries& series,
                            const econ::BreakResult& breaks,
                            std::span<const PlotAnnotation> annotations) {
  const std::size_t n = series.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    if (series.is_missing(i)) continue;
    lo = std::min(lo, series.value(i));
    hi = std::max(hi, series.value(i));
  }
  if (!(lo <= hi)) {
    throw DataError("plot: series '" + series.label() + "' has no values");
  }
  if (lo == hi) {
    lo -= 1.0;
    hi += 1.0;
  }
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const int start_idx = series.start().index();
  const auto x_of = [&](double month_idx) {
    const double span = n > 1 ? static_cast<double>(n - 1) : 1.0;
    return kMarginLeft + plot_w * (month_idx - start_idx) / span;
  };
  const auto y_of = [&](double v) {
    return kMarginTop + plot_h * (1.0 - (v - lo) / (hi - lo));
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) +
         "\" height=\"" + fmt(kHeight) + "\" viewBox=\"0 0 " + fmt(kWidth) +
         " " + fmt(kHeight) + "\">\n";
  svg += "  <title>" + escape_xml(series.label()) + "</title>\n";
  svg += "  <rect class=\"background\" x=\"0\" y=\"0\" width=\"" +
         fmt(kWidth) + "\" height=\"" + fmt(kHeight) + "\" fill=\"white\"/>\n";

  // Shaded interval annotations sit behind everything else.
  for (const PlotAnnotation& a : annotations) {
    if (a.style != AnnotationStyle::kRecessionShaded) continue;
    const YearMonth end = a.end.value_or(a.date);
    const double x0 = std::clamp(x_of(a.date.index()), kMarginLeft,
                                 kWidth - kMarginRight);
    const double x1 = std::clamp(x_of(end.index() + 1.0), kMarginLeft,
                                 kWidth - kMarginRight);
    svg += "  <rect class=\"shade\" x=\"" + fmt(x0) + "\" y=\"" +
           fmt(kMarginTop) + "\" width=\"" + fmt(std::max(0.0, x1 - x0)) +
           "\" height=\"" + fmt(plot_h) +
           "\" fill=\"#c8c8c8\" fill-opacity=\"0.45\"><title>" +
           escape_xml(a.label) + "</title></rect>\n";
  }

  // Axes.
  svg += "  <line class=\"axis\" x1=\"" + fmt(kMarginLeft) + "\" y1=\"" +
         fmt(kMarginTop + plot_h) + "\" x2=\"" + fmt(kWidth - kMarginRight) +
         "\" y2=\"" + fmt(kMarginTop + plot_h) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "  <line class=\"axis\" x1=\"" + fmt(kMarginLeft) + "\" y1=\"" +
         fmt(kMarginTop) + "\" x2=\"" + fmt(kMarginLeft) + "\" y2=\"" +
         fmt(kMarginTop + plot_h) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";

  // Series polyline, broken at missing slots.
  std::string points;
  const auto flush_segment = [&]() {
    if (points.empty()) return;
    svg += "  <polyline class=\"series\" fill=\"none\" stroke=\"#1459a8\" "
           "stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
    points.clear();
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (series.is_missing(i)) {
      flush_segment();
      continue;
    }
    if (!points.empty()) points += ' ';
    points += fmt(x_of(series.month_at(i).index())) + "," +
              fmt(y_of(series.value(i)));
  }
  flush_segment();

  // Break dates: solid vertical lines.
  for (std::size_t b = 0; b < breaks.break_indices.size(); ++b) {
    const double month_idx =
        b < breaks.break_dates.size()
            ? static_cast<double>(breaks.break_dates[b].index())
            : static_cast<double>(start_idx + breaks.break_indices[b]);
    const double x = x_of(month_idx);
    svg += "  <line class=\"break-line\" x1=\"" + fmt(x) + "\" y1=\"" +
           fmt(kMarginTop) + "\" x2=\"" + fmt(x) + "\" y2=\"" +
           fmt(kMarginTop + plot_h) +
           "\" stroke=\"#c22020\" stroke-width=\"1.5\"/>\n";
  }

  // Dated annotations: dotted (or solid) vertical lines with labels.
  for (const PlotAnnotation& a : annotations) {
    if (a.style == AnnotationStyle::kRecessionShaded) continue;
    const double x = x_of(a.date.index());
    const bool solid = a.style == AnnotationStyle::kBreakSolid;
    svg += "  <line class=\"";
    svg += solid ? "annotation-solid" : "annotation-dotted";
    svg += "\" x1=\"" + fmt(x) + "\" y1=\"" + fmt(kMarginTop) + "\" x2=\"" +
           fmt(x) + "\" y2=\"" + fmt(kMarginTop + plot_h) + "\" stroke=\"";
    svg += solid ? "#c22020" : "#303030";
    svg += "\" stroke-width=\"1\"";
    if (!solid) svg += " stroke-dasharray=\"2,3\"";
    svg += "/>\n";
    if (!a.label.empty()) {
      svg += "  <text class=\"annotation-label\" x=\"" + fmt(x + 3.0) +
             "\" y=\"" + fmt(kMarginTop + 12.0) +
             "\" font-size=\"10\" font-family=\"sans-serif\">" +
             escape_xml(a.label) + "</text>\n";
    }
  }

  // Y-axis extremes and x-axis endpoints.
  svg += "  <text class=\"tick\" x=\"4\" y=\"" + fmt(kMarginTop + 4.0) +
         "\" font-size=\"10\" font-family=\"sans-serif\">" +
         io::format_double(hi) + "</text>\n";
  svg += "  <text class=\"tick\" x=\"4\" y=\"" + fmt(kMarginTop + plot_h) +
         "\" font-size=\"10\" font-family=\"sans-serif\">" +
         io::format_double(lo) + "</text>\n";
  svg += "  <text class=\"tick\" x=\"" + fmt(kMarginLeft) + "\" y=\"" +
         fmt(kHeight - 12.0) +
         "\" font-size=\"10\" font-family=\"sans-serif\">" +
         format_month(series.start()) + "</text>\n";
  svg += "  <text class=\"tick\" x=\"" + fmt(kWidth - kMarginRight - 52.0) +
         "\" y=\"" + fmt(kHeight - 12.0) +
         "\" font-size=\"10\" font-family=\"sans-serif\">" +
         format_month(series.month_at(n - 1)) + "</text>\n";
  svg += "</svg>\n";
  return svg;
}

void emit_plot(const MonthlySeries& series, const econ::BreakResult& breaks,
               std::span<const PlotAnnotation> annotations,
               const std::filesystem::path& path) {
  io::write_text_file(path, render_plot_svg(series, breaks, annotations));
}

}  // namespace vadecon
