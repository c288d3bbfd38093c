#include "vadecon/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <optional>
#include <set>
#include <utility>

#include <json.hpp>

#include "vadecon/econ/adf.hpp"
#include "vadecon/econ/stats.hpp"
#include "vadecon/errors.hpp"
#include "vadecon/io/csv.hpp"
#include "vadecon/io/formats.hpp"
#include "vadecon/version.hpp"

namespace vadecon {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string stage_message(const std::string& stage, const char* what) {
  return "stage " + stage + ": " + what;
}

// Rethrows with the failing stage in the message, preserving the error
// class so CLI exit codes stay meaningful.
template <typename F>
auto run_stage(const std::string& name, F&& f) {
  try {
    return f();
  } catch (const ValidationError& e) {
    throw ValidationError(stage_message(name, e.what()));
  } catch (const DataError& e) {
    throw DataError(stage_message(name, e.what()));
  } catch (const NumericError& e) {
    throw NumericError(stage_message(name, e.what()));
  }
}

std::string sanitize_for_filename(std::string_view label) {
  std::string s;
  s.reserve(label.size());
  for (char c : label) {
    unsigned char u = static_cast<unsigned char>(c);
    if (std::isalnum(u) != 0) {
      s.push_back(static_cast<char>(std::tolower(u)));
    } else {
      s.push_back('_');
    }
  }
  return s;
}

std::string now_iso8601_utc() {
  std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ",
                tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                tm.tm_min, tm.tm_sec);
  return buf;
}

// Tracks every file the pipeline writes so a failed run can be cleaned up
// and the run manifest can list names with content checksums.
class OutputWriter {
 public:
  explicit OutputWriter(fs::path dir) : dir_(std::move(dir)) {}

  const fs::path& dir() const { return dir_; }
  const std::vector<fs::path>& paths() const { return paths_; }
  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }

  fs::path write(const std::string& name, std::string_view content) {
    fs::path p = dir_ / name;
    io::write_text_file(p, content);
    entries_.emplace_back(name, io::fnv1a64_hex(content));
    paths_.push_back(p);
    return p;
  }

  // For outputs emitted by dedicated writers: checksum what landed on disk.
  void record(const std::string& name) {
    fs::path p = dir_ / name;
    entries_.emplace_back(name, io::fnv1a64_hex(io::read_text_file(p)));
    paths_.push_back(p);
  }

 private:
  fs::path dir_;
  std::vector<std::pair<std::string, std::string>> entries_;
  std::vector<fs::path> paths_;
};

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

fs::path resolve_relative(const fs::path& base, const std::string& value) {
  fs::path p = value;
  if (p.is_absolute()) return p;
  return base / p;
}

json config_to_json(const RunConfig& c) {
  json j;
  j["corpus_root"] = c.corpus_root.generic_string();
  j["manifest"] = c.manifest.generic_string();
  j["lexicon"] = c.lexicon.generic_string();
  j["scale_min"] = c.scale_min;
  j["scale_max"] = c.scale_max;
  j["sources"] = c.sources;
  j["oov"] = std::string(oov_mode_name(c.oov));
  json interp;
  interp["default"] = std::string(interp_mode_name(c.default_interp));
  for (const auto& [src, mode] : c.interp_by_source) {
    interp[src] = std::string(interp_mode_name(mode));
  }
  j["interp"] = interp;
  json inds = json::object();
  for (const auto& [name, path] : c.indicators) {
    inds[name] = path.generic_string();
  }
  j["indicators"] = inds;
  j["impute_refs"] = c.impute_refs;
  j["breaks"] = {{"max_breaks", c.breaks.max_breaks},
                 {"trim", c.breaks.trim_fraction},
                 {"ar_order", c.breaks.ar_order}};
  j["breaks_on_differences"] = c.breaks_on_differences;
  j["emit_plots"] = c.emit_plots;
  j["out"] = c.out_dir.generic_string();
  json anns = json::array();
  for (const auto& a : c.annotations) {
    json e;
    e["date"] = format_month(a.date);
    if (a.end.has_value()) e["end"] = format_month(*a.end);
    e["label"] = a.label;
    e["style"] = std::string(annotation_style_name(a.style));
    anns.push_back(e);
  }
  j["annotations"] = anns;
  return j;
}

}  // namespace

InterpMode parse_interp_mode(std::string_view s) {
  if (s == "linear") return InterpMode::kLinear;
  if (s == "regression") return InterpMode::kRegression;
  if (s == "none-quarterly") return InterpMode::kNoneQuarterly;
  throw ValidationError("unknown interpolation mode '" + std::string(s) +
                        "' (expected linear, regression, or none-quarterly)");
}

std::string_view interp_mode_name(InterpMode m) {
  switch (m) {
    case InterpMode::kLinear: return "linear";
    case InterpMode::kRegression: return "regression";
    case InterpMode::kNoneQuarterly: return "none-quarterly";
  }
  return "linear";
}

OovMode parse_oov_mode(std::string_view s) {
  if (s == "neutral") return OovMode::kNeutral;
  if (s == "skip") return OovMode::kSkip;
  throw ValidationError("unknown OOV mode '" + std::string(s) +
                        "' (expected neutral or skip)");
}

std::string_view oov_mode_name(OovMode m) {
  return m == OovMode::kNeutral ? "neutral" : "skip";
}

InterpMode RunConfig::interp_for(const std::string& source_label) const {
  auto it = interp_by_source.find(source_label);
  return it == interp_by_source.end() ? default_interp : it->second;
}

RunConfig load_run_config(const fs::path& path) {
  std::string text = io::read_text_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError("run config " + path.generic_string() + ": " +
                          e.what());
  }
  fs::path base = fs::absolute(path).parent_path();
  RunConfig c;
  try {
    if (!j.is_object()) throw ValidationError("run config: not a JSON object");
    if (!j.contains("manifest") || !j.contains("lexicon")) {
      throw ValidationError(
          "run config: 'manifest' and 'lexicon' are required");
    }
    c.manifest = resolve_relative(base, j.at("manifest").get<std::string>());
    c.lexicon = resolve_relative(base, j.at("lexicon").get<std::string>());
    c.corpus_root =
        j.contains("corpus_root")
            ? resolve_relative(base, j.at("corpus_root").get<std::string>())
            : base;
    c.scale_min = j.value("scale_min", 1.0);
    c.scale_max = j.value("scale_max", 9.0);
    if (j.contains("sources")) {
      for (const auto& s : j.at("sources")) {
        c.sources.push_back(Source::parse(s.get<std::string>()).label);
      }
    }
    if (j.contains("oov")) {
      c.oov = parse_oov_mode(j.at("oov").get<std::string>());
    }
    if (j.contains("interp")) {
      const json& it = j.at("interp");
      if (it.is_string()) {
        c.default_interp = parse_interp_mode(it.get<std::string>());
      } else if (it.is_object()) {
        for (const auto& [key, val] : it.items()) {
          InterpMode m = parse_interp_mode(val.get<std::string>());
          if (key == "default") {
            c.default_interp = m;
          } else {
            c.interp_by_source[Source::parse(key).label] = m;
          }
        }
      } else {
        throw ValidationError("run config: 'interp' must be a string or map");
      }
    }
    if (j.contains("indicators")) {
      for (const auto& [name, val] : j.at("indicators").items()) {
        c.indicators[name] = resolve_relative(base, val.get<std::string>());
      }
    }
    if (j.contains("impute_refs")) {
      for (const auto& s : j.at("impute_refs")) {
        c.impute_refs.push_back(s.get<std::string>());
      }
    }
    if (j.contains("breaks")) {
      const json& b = j.at("breaks");
      c.breaks.max_breaks = b.value("max_breaks", c.breaks.max_breaks);
      c.breaks.trim_fraction = b.value("trim", c.breaks.trim_fraction);
      c.breaks.ar_order = b.value("ar_order", c.breaks.ar_order);
    }
    c.breaks_on_differences =
        j.value("breaks_on_differences", c.breaks_on_differences);
    c.emit_plots = j.value("emit_plots", c.emit_plots);
    if (j.contains("out")) {
      c.out_dir = resolve_relative(base, j.at("out").get<std::string>());
    }
    if (j.contains("annotations")) {
      for (const auto& a : j.at("annotations")) {
        PlotAnnotation ann;
        ann.date = parse_month(a.at("date").get<std::string>());
        if (a.contains("end")) {
          ann.end = parse_month(a.at("end").get<std::string>());
        }
        ann.label = a.value("label", std::string());
        if (a.contains("style")) {
          ann.style = parse_annotation_style(a.at("style").get<std::string>());
        }
        if (ann.end.has_value() && *ann.end < ann.date) {
          throw ValidationError("annotation '" + ann.label +
                                "': end month precedes start");
        }
        c.annotations.push_back(std::move(ann));
      }
    }
  } catch (const json::exception& e) {
    throw ValidationError("run config " + path.generic_string() + ": " +
                          e.what());
  }
  return c;
}

void validate_config(const RunConfig& config) {
  auto require_file = [](const fs::path& p, const char* what) {
    if (p.empty()) {
      throw ValidationError(std::string(what) + " path is empty");
    }
    if (!fs::exists(p) || fs::is_directory(p)) {
      throw ValidationError(std::string(what) +
                            " not found: " + p.generic_string());
    }
  };
  require_file(config.manifest, "manifest");
  require_file(config.lexicon, "lexicon");
  if (config.corpus_root.empty() || !fs::is_directory(config.corpus_root)) {
    throw ValidationError("corpus root is not a directory: " +
                          config.corpus_root.generic_string());
  }
  if (!(config.scale_min < config.scale_max)) {
    throw ValidationError("scale_min must be less than scale_max");
  }
  config.breaks.validate();
  if (config.out_dir.empty()) {
    throw ValidationError("output directory is not set");
  }
  for (const auto& [name, path] : config.indicators) {
    if (name.empty()) throw ValidationError("indicator with empty name");
    require_file(path, "indicator");
  }
  for (const auto& name : config.impute_refs) {
    if (config.indicators.find(name) == config.indicators.end()) {
      throw ValidationError("impute reference '" + name +
                            "' is not a configured indicator");
    }
  }
  bool wants_regression = config.default_interp == InterpMode::kRegression;
  for (const auto& [src, mode] : config.interp_by_source) {
    wants_regression = wants_regression || mode == InterpMode::kRegression;
  }
  if (wants_regression && config.indicators.empty()) {
    throw ValidationError(
        "regression imputation requires at least one indicator");
  }
  for (const auto& s : config.sources) {
    if (s.empty()) throw ValidationError("empty source label in config");
  }
}

CompletedSeries complete_for_analysis(
    const MonthlySeries& raw, InterpMode mode, const IndicatorSet& indicators,
    const std::vector<std::string>& impute_refs) {
  switch (mode) {
    case InterpMode::kLinear: {
      CompletedSeries out{interpolate_linear(raw), std::nullopt, {}, false,
                          {},                      {},           {}, {}};
      out.values = out.monthly.complete_values(&out.month_start);
      return out;
    }
    case InterpMode::kRegression: {
      std::vector<std::string> refs = impute_refs;
      if (refs.empty()) {
        for (const auto& [name, s] : indicators) refs.push_back(name);
      }
      auto [filled, diag] = impute_by_regression(raw, indicators, refs);
      CompletedSeries out{std::move(filled), std::nullopt, {}, false,
                          {},                {},           {}, {}};
      out.values = out.monthly.complete_values(&out.month_start);
      out.imputation = diag;
      out.references = std::move(refs);
      return out;
    }
    case InterpMode::kNoneQuarterly: {
      CompletedSeries out{raw, aggregate_quarterly(raw), {}, true,
                          {},  {},                       {}, {}};
      out.values = out.quarterly->complete_values(&out.quarter_start);
      return out;
    }
  }
  throw ValidationError("unknown interpolation mode");
}

std::string_view break_transform_name(BreakTransform t) {
  return t == BreakTransform::kDetrended ? "detrended" : "differenced";
}

econ::BreakResult detect_breaks_on(const CompletedSeries& s, BreakTransform t,
                                   const econ::BreakModelConfig& cfg) {
  std::vector<double> xs =
      t == BreakTransform::kDetrended
          ? detrend(s.values)
          : difference(std::span<const double>(s.values));
  // Differencing drops the first slot, shifting the calendar origin by one.
  int shift = t == BreakTransform::kDifferenced ? 1 : 0;
  if (s.is_quarterly) {
    econ::BreakResult br = econ::detect_breaks(xs, cfg);
    for (int idx : br.break_indices) {
      YearQuarter q =
          YearQuarter::from_index(s.quarter_start.index() + shift + idx);
      br.break_dates.push_back(YearMonth{q.year, (q.quarter - 1) * 3 + 1});
    }
    return br;
  }
  YearMonth start = YearMonth::from_index(s.month_start.index() + shift);
  return econ::detect_breaks(xs, start, cfg);
}

double indicator_correlation(const CompletedSeries& s,
                             const MonthlySeries& indicator) {
  std::vector<double> x, y;
  if (s.is_quarterly) {
    QuarterlySeries ind = aggregate_quarterly(indicator);
    int lo = std::max(s.quarter_start.index(), ind.start().index());
    int hi = std::min(
        s.quarter_start.index() + static_cast<int>(s.values.size()),
        ind.start().index() + static_cast<int>(ind.size()));
    if (hi - lo < 3) {
      throw DataError("indicator '" + indicator.label() +
                      "': fewer than 3 overlapping quarters for correlation");
    }
    for (int q = lo; q < hi; ++q) {
      std::size_t i = static_cast<std::size_t>(q - ind.start().index());
      if (ind.is_missing(i)) {
        throw DataError("indicator '" + indicator.label() +
                        "': quarter " +
                        format_quarter(YearQuarter::from_index(q)) +
                        " has no observations");
      }
      x.push_back(s.values[static_cast<std::size_t>(q - s.quarter_start.index())]);
      y.push_back(ind.value(i));
    }
  } else {
    int lo = std::max(s.month_start.index(), indicator.start().index());
    int hi =
        std::min(s.month_start.index() + static_cast<int>(s.values.size()),
                 indicator.start().index() + static_cast<int>(indicator.size()));
    if (hi - lo < 3) {
      throw DataError("indicator '" + indicator.label() +
                      "': fewer than 3 overlapping months for correlation");
    }
    for (int m = lo; m < hi; ++m) {
      x.push_back(s.values[static_cast<std::size_t>(m - s.month_start.index())]);
      y.push_back(
          indicator.value(static_cast<std::size_t>(m - indicator.start().index())));
    }
  }
  return econ::pearson(x, y);
}

ReportBundle run_pipeline(const RunConfig& config) {
  run_stage("config", [&] { validate_config(config); });

  Corpus corpus = run_stage("ingest", [&] {
    return ingest_corpus(config.corpus_root, config.manifest);
  });
  EmotionLexicon lexicon = run_stage("lexicon", [&] {
    return load_lexicon(config.lexicon, config.scale_min, config.scale_max);
  });
  ScoredCorpus scored = run_stage("score", [&] {
    return score_corpus(corpus.documents, lexicon, WeightingMode::kAbsoluteTf,
                        config.oov);
  });

  IndicatorSet indicators = run_stage("indicators", [&] {
    IndicatorSet set;
    for (const auto& [name, path] : config.indicators) {
      set.emplace(name, io::read_indicator_csv(path, name));
    }
    return set;
  });

  // Sources analyzed, in config order or (by default) sorted label order.
  std::vector<std::string> order = config.sources;
  if (order.empty()) {
    for (const auto& [label, st] : corpus.stats) order.push_back(label);
  }
  run_stage("score", [&] {
    for (const auto& label : order) {
      bool any = std::any_of(
          scored.rows.begin(), scored.rows.end(),
          [&](const ScoredRow& r) { return r.source.label == label; });
      if (!any) {
        throw DataError("source '" + label + "' has no scorable documents");
      }
    }
  });

  fs::create_directories(config.out_dir);
  OutputWriter out(config.out_dir);

  try {
    run_stage("corpus-stats", [&] {
      json stats;
      json sources = json::object();
      std::size_t total = 0;
      for (const auto& [label, st] : corpus.stats) {
        sources[label] = {{"documents", st.documents},
                          {"mean_tokens", st.mean_tokens}};
        total += st.documents;
      }
      stats["sources"] = sources;
      stats["total_documents"] = total;
      json excluded = json::array();
      for (const auto& e : scored.excluded) {
        excluded.push_back({{"id", e.id}, {"reason", e.reason}});
      }
      stats["excluded"] = excluded;
      out.write("corpus_stats.json", dump_json(stats));
    });

    run_stage("scores", [&] {
      io::write_scored_csv(scored, out.dir() / "scored.csv");
      out.record("scored.csv");
    });

    json series_summary = json::object();
    json adf_results = json::array();
    // Correlation rows in analysis order: (row label, value per indicator).
    std::vector<std::pair<std::string, std::vector<double>>> corr_rows;

    for (const auto& src_label : order) {
      const Source source = Source::parse(src_label);
      const std::string file_tag = sanitize_for_filename(src_label);
      const InterpMode mode = config.interp_for(src_label);

      for (Dimension dim : kAllDimensions) {
        const std::string dim_name(dimension_name(dim));
        const std::string series_id =
            src_label + "_" + std::string(1, dimension_letter(dim));
        const std::string series_stage = src_label + " " + dim_name;
        const std::string stem = "series_" + file_tag + "_" + dim_name;

        MonthlySeries raw = run_stage("series " + series_stage, [&] {
          return build_monthly(scored, source, dim);
        });
        CompletedSeries completed = run_stage("series " + series_stage, [&] {
          io::write_series_csv(raw, out.dir() / (stem + ".csv"));
          out.record(stem + ".csv");

          CompletedSeries cs = complete_for_analysis(
              raw, mode, indicators, config.impute_refs);
          switch (mode) {
            case InterpMode::kLinear:
              io::write_series_csv(cs.monthly,
                                   out.dir() / (stem + "_linear.csv"));
              out.record(stem + "_linear.csv");
              break;
            case InterpMode::kRegression:
              io::write_series_csv(cs.monthly,
                                   out.dir() / (stem + "_imputed.csv"));
              out.record(stem + "_imputed.csv");
              break;
            case InterpMode::kNoneQuarterly:
              io::write_quarterly_csv(*cs.quarterly,
                                      out.dir() / (stem + "_quarterly.csv"));
              out.record(stem + "_quarterly.csv");
              break;
          }
          return cs;
        });

        json summary;
        summary["label"] = raw.label();
        summary["months"] = raw.size();
        summary["observed"] = raw.observed_count();
        summary["missing_fraction"] = raw.missing_fraction();
        summary["mode"] = std::string(interp_mode_name(mode));
        if (completed.imputation.has_value()) {
          summary["imputation"] = {
              {"references", completed.references},
              {"coefficients", completed.imputation->coefficients},
              {"r_squared", completed.imputation->r_squared},
              {"n_observed", completed.imputation->n_observed}};
        }
        summary["analysis"] = {
            {"start", completed.is_quarterly
                          ? format_quarter(completed.quarter_start)
                          : format_month(completed.month_start)},
            {"length", completed.values.size()},
            {"frequency", completed.is_quarterly ? "quarterly" : "monthly"}};
        series_summary[series_id] = summary;

        if (!indicators.empty()) {
          run_stage("correlate " + series_stage, [&] {
            std::vector<double> row;
            for (const auto& [name, ind] : indicators) {
              row.push_back(indicator_correlation(completed, ind));
            }
            corr_rows.emplace_back(series_id, std::move(row));
          });
        }

        run_stage("adf " + series_stage, [&] {
          for (auto spec : {econ::DeterministicSpec::kConstant,
                            econ::DeterministicSpec::kConstantTrend}) {
            econ::AdfResult r = econ::adf_test(completed.values, spec);
            json entry = io::adf_to_json(r);
            entry["series"] = series_id;
            adf_results.push_back(std::move(entry));
          }
        });

        econ::BreakResult breaks = run_stage("breaks " + series_stage, [&] {
          econ::BreakResult br = detect_breaks_on(
              completed, BreakTransform::kDetrended, config.breaks);
          json bj = io::break_result_to_json(br);
          bj["series"] = series_id;
          bj["transform"] = std::string(
              break_transform_name(BreakTransform::kDetrended));
          const std::string base = "breaks_" + file_tag + "_" + dim_name;
          out.write(base + ".json", dump_json(bj));
          io::write_break_csv(br, out.dir() / (base + ".csv"));
          out.record(base + ".csv");
          return br;
        });

        if (config.breaks_on_differences) {
          run_stage("breaks " + series_stage + " (differences)", [&] {
            econ::BreakResult br = detect_breaks_on(
                completed, BreakTransform::kDifferenced, config.breaks);
            json bj = io::break_result_to_json(br);
            bj["series"] = series_id;
            bj["transform"] = std::string(
                break_transform_name(BreakTransform::kDifferenced));
            const std::string base =
                "breaks_" + file_tag + "_" + dim_name + "_diff";
            out.write(base + ".json", dump_json(bj));
            io::write_break_csv(br, out.dir() / (base + ".csv"));
            out.record(base + ".csv");
          });
        }

        if (config.emit_plots) {
          run_stage("plot " + series_stage, [&] {
            const std::string name =
                "plot_" + file_tag + "_" + dim_name + ".svg";
            emit_plot(completed.monthly, breaks, config.annotations,
                      out.dir() / name);
            out.record(name);
          });
        }
      }
    }

    run_stage("series-summary", [&] {
      out.write("series_summary.json", dump_json(series_summary));
    });

    if (!indicators.empty()) {
      run_stage("correlate", [&] {
        std::string csv = "series";
        for (const auto& [name, ind] : indicators) csv += "," + name;
        csv += "\n";
        for (const auto& [label, row] : corr_rows) {
          csv += label;
          for (double v : row) csv += "," + io::format_double(v);
          csv += "\n";
        }
        out.write("correlations.csv", csv);
      });
    }

    run_stage("adf", [&] {
      out.write("adf_results.json", dump_json(adf_results));
    });

    if (order.size() >= 2) {
      run_stage("compare", [&] {
        const std::string& a_label = order[0];
        const std::string& b_label = order[1];
        json cmp;
        cmp["sources"] = {a_label, b_label};
        json mw = json::object();
        for (Dimension dim : kAllDimensions) {
          std::vector<double> a, b;
          for (const auto& r : scored.rows) {
            if (r.source.label == a_label) {
              a.push_back(component(r.emotion, dim));
            } else if (r.source.label == b_label) {
              b.push_back(component(r.emotion, dim));
            }
          }
          econ::TestResult t = econ::mann_whitney_u(a, b);
          mw[std::string(dimension_name(dim))] = io::test_result_to_json(t);
        }
        cmp["mann_whitney"] = mw;

        // Pooled document scatter across the analyzed sources, z-scored
        // per dimension; Pearson is scale-free so raw values feed it.
        std::set<std::string> analyzed(order.begin(), order.end());
        std::vector<const ScoredRow*> pooled;
        for (const auto& r : scored.rows) {
          if (analyzed.count(r.source.label) != 0) pooled.push_back(&r);
        }
        std::vector<double> v, ar, d;
        for (const ScoredRow* r : pooled) {
          v.push_back(r->emotion.valence);
          ar.push_back(r->emotion.arousal);
          d.push_back(r->emotion.dominance);
        }
        cmp["valence_dominance_pearson"] = econ::pearson(v, d);
        out.write("comparison.json", dump_json(cmp));

        std::vector<double> vz = zscore(v), az = zscore(ar), dz = zscore(d);
        std::string csv = "id,source,valence,arousal,dominance\n";
        for (std::size_t i = 0; i < pooled.size(); ++i) {
          csv += pooled[i]->id + "," + pooled[i]->source.label + "," +
                 io::format_double(vz[i]) + "," + io::format_double(az[i]) +
                 "," + io::format_double(dz[i]) + "\n";
        }
        out.write("scatter.csv", csv);
      });
    }

    ReportBundle bundle;
    run_stage("manifest", [&] {
      json man;
      man["tool"] = {{"name", "vadecon"}, {"version", kVersionString}};
      man["generated_at"] = now_iso8601_utc();  // sole run-varying field
      man["config"] = config_to_json(config);

      json inputs;
      inputs["manifest"] = {
          {"path", config.manifest.generic_string()},
          {"fnv1a64", io::fnv1a64_hex(io::read_text_file(config.manifest))}};
      inputs["lexicon"] = {
          {"path", config.lexicon.generic_string()},
          {"fnv1a64", io::fnv1a64_hex(io::read_text_file(config.lexicon))}};
      // One digest over the sorted per-document hashes.
      std::vector<std::pair<std::string, std::string>> doc_hashes;
      for (const auto& doc : corpus.documents) {
        doc_hashes.emplace_back(doc.id, io::fnv1a64_hex(doc.text));
      }
      std::sort(doc_hashes.begin(), doc_hashes.end());
      std::string combined;
      for (const auto& [id, h] : doc_hashes) {
        combined += id + ":" + h + "\n";
      }
      inputs["corpus"] = {{"documents", corpus.documents.size()},
                          {"fnv1a64", io::fnv1a64_hex(combined)}};
      json ind_inputs = json::object();
      for (const auto& [name, path] : config.indicators) {
        ind_inputs[name] = {
            {"path", path.generic_string()},
            {"fnv1a64", io::fnv1a64_hex(io::read_text_file(path))}};
      }
      inputs["indicators"] = ind_inputs;
      man["inputs"] = inputs;

      json outputs = json::object();
      for (const auto& [name, checksum] : out.entries()) {
        outputs[name] = checksum;
      }
      man["outputs"] = outputs;

      bundle.run_manifest = out.write("run_manifest.json", dump_json(man));
    });
    bundle.files = out.paths();
    return bundle;
  } catch (...) {
    for (const auto& p : out.paths()) {
      std::error_code ec;
      fs::remove(p, ec);
    }
    throw;
  }
}

}  // namespace vadecon
