#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "vadecon/econ/adf.hpp"
#include "vadecon/econ/breaks.hpp"
#include "vadecon/econ/stats.hpp"
#include "vadecon/scorer.hpp"
#include "vadecon/series.hpp"

namespace vadecon::io {

// Scored corpus: `id,source,date,valence,arousal,dominance,coverage`.
void write_scored_csv(const ScoredCorpus& scored,
                      const std::filesystem::path& path);
ScoredCorpus read_scored_csv(const std::filesystem::path& path);

// Monthly series: `month,value,provenance`, month as YYYY-MM, empty value
// field for MISSING slots. Months must be consecutive.
void write_series_csv(const MonthlySeries& s, const std::filesystem::path& path);
MonthlySeries read_series_csv(const std::filesystem::path& path,
                              const std::string& label = "");

// Quarterly series reuse the schema with YYYY-Qn in the month column.
void write_quarterly_csv(const QuarterlySeries& s,
                         const std::filesystem::path& path);

// Indicator CSV: `month,value`, complete over its window.
MonthlySeries read_indicator_csv(const std::filesystem::path& path,
                                 const std::string& name);

nlohmann::json adf_to_json(const econ::AdfResult& r);
nlohmann::json test_result_to_json(const econ::TestResult& r);
nlohmann::json break_result_to_json(const econ::BreakResult& r);

// Two sections: an `m,bic,ssr` table, a blank line, then the selected
// `break_index,break_month` list.
void write_break_csv(const econ::BreakResult& r,
                     const std::filesystem::path& path);

}  // namespace vadecon::io
