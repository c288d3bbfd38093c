#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "vadecon/corpus.hpp"
#include "vadecon/econ/breaks.hpp"
#include "vadecon/plot.hpp"
#include "vadecon/scorer.hpp"
#include "vadecon/series.hpp"

namespace vadecon {

// How each source's monthly emotion series is completed before testing.
enum class InterpMode { kLinear, kRegression, kNoneQuarterly };

InterpMode parse_interp_mode(std::string_view s);
std::string_view interp_mode_name(InterpMode m);

OovMode parse_oov_mode(std::string_view s);
std::string_view oov_mode_name(OovMode m);

struct RunConfig {
  std::filesystem::path corpus_root;
  std::filesystem::path manifest;
  std::filesystem::path lexicon;
  double scale_min = 1.0;
  double scale_max = 9.0;
  std::vector<std::string> sources;  // empty: every source in the corpus
  OovMode oov = OovMode::kNeutral;
  InterpMode default_interp = InterpMode::kLinear;
  std::map<std::string, InterpMode> interp_by_source;
  std::map<std::string, std::filesystem::path> indicators;  // name -> csv
  std::vector<std::string> impute_refs;  // empty: all indicators
  econ::BreakModelConfig breaks;
  bool breaks_on_differences = false;
  bool emit_plots = true;
  std::filesystem::path out_dir;
  std::vector<PlotAnnotation> annotations;

  InterpMode interp_for(const std::string& source_label) const;
};

// Reads the JSON run configuration. Relative paths are resolved against
// the config file's directory.
RunConfig load_run_config(const std::filesystem::path& path);

// Fail-fast validation: checks referenced inputs and parameters without
// creating any output.
void validate_config(const RunConfig& config);

struct ReportBundle {
  std::filesystem::path run_manifest;
  std::vector<std::filesystem::path> files;  // everything written
};

// A monthly series taken through its configured completion step, carrying
// the gap-free value window the statistical battery runs on.
struct CompletedSeries {
  MonthlySeries monthly;                     // completed (raw under quarterly)
  std::optional<QuarterlySeries> quarterly;  // set for kNoneQuarterly
  std::vector<double> values;
  bool is_quarterly = false;
  YearMonth month_start{};      // first analysis slot, monthly modes
  YearQuarter quarter_start{};  // first analysis slot, quarterly mode
  std::optional<ImputationDiagnostics> imputation;
  std::vector<std::string> references;  // imputation regressors used
};

CompletedSeries complete_for_analysis(const MonthlySeries& raw, InterpMode mode,
                                      const IndicatorSet& indicators,
                                      const std::vector<std::string>& impute_refs);

enum class BreakTransform { kDetrended, kDifferenced };

std::string_view break_transform_name(BreakTransform t);

// Break detection on the detrended or first-differenced analysis values,
// with break indices mapped back to calendar months (first month of the
// quarter under quarterly aggregation).
econ::BreakResult detect_breaks_on(const CompletedSeries& s, BreakTransform t,
                                   const econ::BreakModelConfig& cfg);

// Pearson correlation between the analysis values and an indicator over
// their calendar overlap; the indicator is aggregated to quarters when the
// series is quarterly. Requires an overlap of at least 3 periods.
double indicator_correlation(const CompletedSeries& s,
                             const MonthlySeries& indicator);

// ingest -> score -> monthly series -> completion -> correlations,
// source comparison, ADF, break detection, plots -> run manifest.
// Outputs are byte-identical across runs on identical inputs, except for
// the timestamp field inside the run manifest. On a stage failure the
// partially written files are removed and the error names the stage.
ReportBundle run_pipeline(const RunConfig& config);

}  // namespace vadecon
