#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vadecon/dates.hpp"
#include "vadecon/econ/breaks.hpp"
#include "vadecon/series.hpp"

namespace vadecon {

enum class AnnotationStyle { kPresidencyDotted, kBreakSolid, kRecessionShaded };

AnnotationStyle parse_annotation_style(std::string_view s);
std::string_view annotation_style_name(AnnotationStyle s);

struct PlotAnnotation {
  YearMonth date;
  std::optional<YearMonth> end;  // shaded styles span [date, end]
  std::string label;
  AnnotationStyle style = AnnotationStyle::kPresidencyDotted;
};

// Writes a self-contained SVG line chart: the series with gaps at missing
// slots, solid vertical lines at break dates, dotted vertical lines at
// labeled annotation dates, shaded rectangles for annotated intervals.
// Output is deterministic for fixed input.
void emit_plot(const MonthlySeries& series, const econ::BreakResult& breaks,
               std::span<const PlotAnnotation> annotations,
               const std::filesystem::path& path);

// Render to a string (what emit_plot writes).
std::string render_plot_svg(const MonthlySeries& series,
                            const econ::BreakResult& breaks,
                            std::span<const PlotAnnotation> annotations);

}  // namespace vadecon
