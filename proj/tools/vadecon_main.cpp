// Command-line front end: one subcommand per pipeline slice, `report` for
// the whole run. Configuration comes from an optional JSON file plus flag
// overrides; logs go to stderr, data only to files.

#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vadecon/econ/adf.hpp"
#include "vadecon/econ/stats.hpp"
#include "vadecon/errors.hpp"
#include "vadecon/io/csv.hpp"
#include "vadecon/io/formats.hpp"
#include "vadecon/pipeline.hpp"
#include "vadecon/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace vadecon;

namespace {

struct CommonOpts {
  std::string config;
  std::string corpus;
  std::string manifest;
  std::string lexicon;
  std::string out;
  std::string oov;
  double scale_min = 0.0;
  double scale_max = 0.0;
  double trim = 0.0;
  int max_breaks = 0;
  int ar_order = 0;
  bool quarterly = false;
  std::vector<std::string> indicators;  // name=path
  std::vector<std::string> interp;      // mode, or source=mode
};

struct OptionHandles {
  CLI::Option* corpus = nullptr;
  CLI::Option* manifest = nullptr;
  CLI::Option* lexicon = nullptr;
  CLI::Option* out = nullptr;
  CLI::Option* oov = nullptr;
  CLI::Option* scale_min = nullptr;
  CLI::Option* scale_max = nullptr;
  CLI::Option* trim = nullptr;
  CLI::Option* max_breaks = nullptr;
  CLI::Option* ar_order = nullptr;
  CLI::Option* quarterly = nullptr;
};

OptionHandles add_common_options(CLI::App* sub, CommonOpts& o) {
  OptionHandles h;
  sub->add_option("--config", o.config, "JSON run configuration file");
  h.corpus = sub->add_option("--corpus", o.corpus, "Corpus root directory");
  h.manifest =
      sub->add_option("--manifest", o.manifest, "Corpus manifest CSV");
  h.lexicon = sub->add_option("--lexicon", o.lexicon, "Emotion lexicon CSV");
  h.scale_min =
      sub->add_option("--scale-min", o.scale_min, "Lexicon scale minimum");
  h.scale_max =
      sub->add_option("--scale-max", o.scale_max, "Lexicon scale maximum");
  sub->add_option("--indicators", o.indicators,
                  "Indicator series as name=path (repeatable)");
  sub->add_option("--interp", o.interp,
                  "Interpolation mode (linear|regression|none-quarterly), "
                  "optionally per source as SOURCE=mode (repeatable)");
  h.oov = sub->add_option("--oov", o.oov,
                          "Out-of-vocabulary handling: neutral|skip");
  h.out = sub->add_option("--out", o.out, "Output directory");
  h.quarterly = sub->add_flag(
      "--quarterly", o.quarterly,
      "Aggregate every source to quarters (overrides interp settings)");
  h.max_breaks = sub->add_option("--max-breaks", o.max_breaks,
                                 "Maximum number of structural breaks");
  h.trim =
      sub->add_option("--trim", o.trim, "Minimum segment trim fraction");
  h.ar_order =
      sub->add_option("--ar-order", o.ar_order, "Segment AR order");
  return h;
}

std::pair<std::string, std::string> split_key_value(const std::string& s,
                                                    const char* what) {
  auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 >= s.size()) {
    throw ValidationError(std::string(what) + " '" + s +
                          "' is not of the form name=value");
  }
  return {s.substr(0, eq), s.substr(eq + 1)};
}

RunConfig build_config(const CommonOpts& o, const OptionHandles& h) {
  RunConfig cfg;
  if (!o.config.empty()) cfg = load_run_config(o.config);
  if (h.corpus->count() > 0) cfg.corpus_root = fs::path(o.corpus);
  if (h.manifest->count() > 0) cfg.manifest = fs::path(o.manifest);
  if (h.lexicon->count() > 0) cfg.lexicon = fs::path(o.lexicon);
  if (h.out->count() > 0) cfg.out_dir = fs::path(o.out);
  if (h.scale_min->count() > 0) cfg.scale_min = o.scale_min;
  if (h.scale_max->count() > 0) cfg.scale_max = o.scale_max;
  if (h.oov->count() > 0) cfg.oov = parse_oov_mode(o.oov);
  for (const auto& spec : o.indicators) {
    auto [name, path] = split_key_value(spec, "indicator");
    cfg.indicators[name] = fs::path(path);
  }
  for (const auto& spec : o.interp) {
    if (spec.find('=') == std::string::npos) {
      cfg.default_interp = parse_interp_mode(spec);
    } else {
      auto [src, mode] = split_key_value(spec, "interp");
      cfg.interp_by_source[Source::parse(src).label] =
          parse_interp_mode(mode);
    }
  }
  if (h.quarterly->count() > 0 && o.quarterly) {
    cfg.default_interp = InterpMode::kNoneQuarterly;
    cfg.interp_by_source.clear();
  }
  if (h.max_breaks->count() > 0) cfg.breaks.max_breaks = o.max_breaks;
  if (h.trim->count() > 0) cfg.breaks.trim_fraction = o.trim;
  if (h.ar_order->count() > 0) cfg.breaks.ar_order = o.ar_order;
  if (cfg.corpus_root.empty()) cfg.corpus_root = fs::current_path();
  return cfg;
}

struct Prepared {
  Corpus corpus;
  ScoredCorpus scored;
  IndicatorSet indicators;
  std::vector<std::string> order;
};

Prepared prepare(const RunConfig& cfg) {
  Prepared p;
  p.corpus = ingest_corpus(cfg.corpus_root, cfg.manifest);
  EmotionLexicon lexicon =
      load_lexicon(cfg.lexicon, cfg.scale_min, cfg.scale_max);
  p.scored = score_corpus(p.corpus.documents, lexicon,
                          WeightingMode::kAbsoluteTf, cfg.oov);
  for (const auto& [name, path] : cfg.indicators) {
    p.indicators.emplace(name, io::read_indicator_csv(path, name));
  }
  p.order = cfg.sources;
  if (p.order.empty()) {
    for (const auto& [label, st] : p.corpus.stats) p.order.push_back(label);
  }
  for (const auto& label : p.order) {
    bool any = false;
    for (const auto& r : p.scored.rows) {
      if (r.source.label == label) {
        any = true;
        break;
      }
    }
    if (!any) {
      throw DataError("source '" + label + "' has no scorable documents");
    }
  }
  return p;
}

std::string sanitize_for_filename(std::string_view label) {
  std::string s;
  for (char c : label) {
    unsigned char u = static_cast<unsigned char>(c);
    s.push_back(std::isalnum(u) != 0
                    ? static_cast<char>(std::tolower(u))
                    : '_');
  }
  return s;
}

// Runs fn(source label, file tag, dimension, raw series, completed series)
// over every analyzed source and dimension, in report order.
template <typename F>
void for_each_series(const Prepared& p, const RunConfig& cfg, F&& fn) {
  for (const auto& src_label : p.order) {
    const Source source = Source::parse(src_label);
    const std::string tag = sanitize_for_filename(src_label);
    const InterpMode mode = cfg.interp_for(src_label);
    for (Dimension dim : kAllDimensions) {
      MonthlySeries raw = build_monthly(p.scored, source, dim);
      CompletedSeries completed =
          complete_for_analysis(raw, mode, p.indicators, cfg.impute_refs);
      fn(src_label, tag, dim, raw, completed);
    }
  }
}

std::string series_id(const std::string& src, Dimension dim) {
  return src + "_" + std::string(1, dimension_letter(dim));
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

void log_written(const fs::path& p) {
  std::cerr << "wrote " << p.generic_string() << "\n";
}

int cmd_score(const RunConfig& cfg) {
  Prepared p = prepare(cfg);
  fs::create_directories(cfg.out_dir);
  fs::path out = cfg.out_dir / "scored.csv";
  io::write_scored_csv(p.scored, out);
  std::cerr << "scored " << p.scored.rows.size() << " documents, excluded "
            << p.scored.excluded.size() << "\n";
  log_written(out);
  return 0;
}

int cmd_series(const RunConfig& cfg) {
  Prepared p = prepare(cfg);
  fs::create_directories(cfg.out_dir);
  for_each_series(p, cfg, [&](const std::string& src, const std::string& tag,
                              Dimension dim, const MonthlySeries& raw,
                              const CompletedSeries& completed) {
    const std::string stem =
        "series_" + tag + "_" + std::string(dimension_name(dim));
    fs::path raw_path = cfg.out_dir / (stem + ".csv");
    io::write_series_csv(raw, raw_path);
    log_written(raw_path);
    const InterpMode mode = cfg.interp_for(src);
    switch (mode) {
      case InterpMode::kLinear: {
        fs::path path = cfg.out_dir / (stem + "_linear.csv");
        io::write_series_csv(completed.monthly, path);
        log_written(path);
        break;
      }
      case InterpMode::kRegression: {
        fs::path path = cfg.out_dir / (stem + "_imputed.csv");
        io::write_series_csv(completed.monthly, path);
        log_written(path);
        break;
      }
      case InterpMode::kNoneQuarterly: {
        fs::path path = cfg.out_dir / (stem + "_quarterly.csv");
        io::write_quarterly_csv(*completed.quarterly, path);
        log_written(path);
        break;
      }
    }
  });
  return 0;
}

int cmd_correlate(const RunConfig& cfg) {
  if (cfg.indicators.empty()) {
    throw ValidationError("correlate requires at least one indicator");
  }
  Prepared p = prepare(cfg);
  fs::create_directories(cfg.out_dir);
  std::string csv = "series";
  for (const auto& [name, path] : cfg.indicators) csv += "," + name;
  csv += "\n";
  for_each_series(p, cfg, [&](const std::string& src, const std::string&,
                              Dimension dim, const MonthlySeries&,
                              const CompletedSeries& completed) {
    csv += series_id(src, dim);
    for (const auto& [name, ind] : p.indicators) {
      csv += "," + io::format_double(indicator_correlation(completed, ind));
    }
    csv += "\n";
  });
  fs::path out = cfg.out_dir / "correlations.csv";
  io::write_text_file(out, csv);
  log_written(out);
  return 0;
}

int cmd_compare(const RunConfig& cfg) {
  Prepared p = prepare(cfg);
  if (p.order.size() < 2) {
    throw DataError("compare requires at least two sources");
  }
  fs::create_directories(cfg.out_dir);
  const std::string& a_label = p.order[0];
  const std::string& b_label = p.order[1];
  json cmp;
  cmp["sources"] = {a_label, b_label};
  json mw = json::object();
  for (Dimension dim : kAllDimensions) {
    std::vector<double> a, b;
    for (const auto& r : p.scored.rows) {
      if (r.source.label == a_label) a.push_back(component(r.emotion, dim));
      else if (r.source.label == b_label) b.push_back(component(r.emotion, dim));
    }
    mw[std::string(dimension_name(dim))] =
        io::test_result_to_json(econ::mann_whitney_u(a, b));
  }
  cmp["mann_whitney"] = mw;

  std::vector<const ScoredRow*> pooled;
  for (const auto& r : p.scored.rows) {
    for (const auto& label : p.order) {
      if (r.source.label == label) {
        pooled.push_back(&r);
        break;
      }
    }
  }
  std::vector<double> v, ar, d;
  for (const ScoredRow* r : pooled) {
    v.push_back(r->emotion.valence);
    ar.push_back(r->emotion.arousal);
    d.push_back(r->emotion.dominance);
  }
  cmp["valence_dominance_pearson"] = econ::pearson(v, d);
  fs::path cmp_path = cfg.out_dir / "comparison.json";
  io::write_text_file(cmp_path, dump_json(cmp));
  log_written(cmp_path);

  std::vector<double> vz = zscore(v), az = zscore(ar), dz = zscore(d);
  std::string csv = "id,source,valence,arousal,dominance\n";
  for (std::size_t i = 0; i < pooled.size(); ++i) {
    csv += pooled[i]->id + "," + pooled[i]->source.label + "," +
           io::format_double(vz[i]) + "," + io::format_double(az[i]) + "," +
           io::format_double(dz[i]) + "\n";
  }
  fs::path scatter_path = cfg.out_dir / "scatter.csv";
  io::write_text_file(scatter_path, csv);
  log_written(scatter_path);
  return 0;
}

int cmd_adf(const RunConfig& cfg) {
  Prepared p = prepare(cfg);
  fs::create_directories(cfg.out_dir);
  json results = json::array();
  for_each_series(p, cfg, [&](const std::string& src, const std::string&,
                              Dimension dim, const MonthlySeries&,
                              const CompletedSeries& completed) {
    for (auto spec : {econ::DeterministicSpec::kConstant,
                      econ::DeterministicSpec::kConstantTrend}) {
      econ::AdfResult r = econ::adf_test(completed.values, spec);
      json entry = io::adf_to_json(r);
      entry["series"] = series_id(src, dim);
      results.push_back(std::move(entry));
    }
  });
  fs::path out = cfg.out_dir / "adf_results.json";
  io::write_text_file(out, dump_json(results));
  log_written(out);
  return 0;
}

int cmd_breaks(const RunConfig& cfg) {
  Prepared p = prepare(cfg);
  fs::create_directories(cfg.out_dir);
  for_each_series(p, cfg, [&](const std::string& src, const std::string& tag,
                              Dimension dim, const MonthlySeries&,
                              const CompletedSeries& completed) {
    std::vector<BreakTransform> transforms{BreakTransform::kDetrended};
    if (cfg.breaks_on_differences) {
      transforms.push_back(BreakTransform::kDifferenced);
    }
    for (BreakTransform t : transforms) {
      econ::BreakResult br = detect_breaks_on(completed, t, cfg.breaks);
      std::string base = "breaks_" + tag + "_" +
                         std::string(dimension_name(dim)) +
                         (t == BreakTransform::kDifferenced ? "_diff" : "");
      json bj = io::break_result_to_json(br);
      bj["series"] = series_id(src, dim);
      bj["transform"] = std::string(break_transform_name(t));
      fs::path jpath = cfg.out_dir / (base + ".json");
      io::write_text_file(jpath, dump_json(bj));
      log_written(jpath);
      fs::path cpath = cfg.out_dir / (base + ".csv");
      io::write_break_csv(br, cpath);
      log_written(cpath);
    }
  });
  return 0;
}

int cmd_plot(const RunConfig& cfg) {
  Prepared p = prepare(cfg);
  fs::create_directories(cfg.out_dir);
  for_each_series(p, cfg, [&](const std::string&, const std::string& tag,
                              Dimension dim, const MonthlySeries&,
                              const CompletedSeries& completed) {
    econ::BreakResult br =
        detect_breaks_on(completed, BreakTransform::kDetrended, cfg.breaks);
    fs::path path = cfg.out_dir /
                    ("plot_" + tag + "_" + std::string(dimension_name(dim)) +
                     ".svg");
    emit_plot(completed.monthly, br, cfg.annotations, path);
    log_written(path);
  });
  return 0;
}

int cmd_report(const RunConfig& cfg) {
  ReportBundle bundle = run_pipeline(cfg);
  std::cerr << "report: " << bundle.files.size() << " files in "
            << cfg.out_dir.generic_string() << "\n";
  log_written(bundle.run_manifest);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Emotion scoring and time-series analysis for dated document "
               "corpora"};
  app.set_version_flag("--version", kVersionString);
  app.require_subcommand(1);

  CommonOpts opts;
  std::map<std::string, std::pair<CLI::App*, OptionHandles>> subs;
  for (const char* name : {"score", "series", "correlate", "compare", "adf",
                           "breaks", "report", "plot"}) {
    CLI::App* sub = app.add_subcommand(name, "");
    subs[name] = {sub, add_common_options(sub, opts)};
  }
  subs["score"].first->description("Score every document against the lexicon");
  subs["series"].first->description(
      "Build monthly emotion series (raw and completed)");
  subs["correlate"].first->description(
      "Correlate emotion series with indicator series");
  subs["compare"].first->description(
      "Rank-test and scatter the first two sources against each other");
  subs["adf"].first->description("Unit-root tests per emotion series");
  subs["breaks"].first->description(
      "Structural break detection per emotion series");
  subs["report"].first->description("Run the full pipeline");
  subs["plot"].first->description("Render SVG charts per emotion series");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    for (auto& [name, entry] : subs) {
      if (!entry.first->parsed()) continue;
      RunConfig cfg = build_config(opts, entry.second);
      if (name == "report") return cmd_report(cfg);
      validate_config(cfg);
      if (name == "score") return cmd_score(cfg);
      if (name == "series") return cmd_series(cfg);
      if (name == "correlate") return cmd_correlate(cfg);
      if (name == "compare") return cmd_compare(cfg);
      if (name == "adf") return cmd_adf(cfg);
      if (name == "breaks") return cmd_breaks(cfg);
      if (name == "plot") return cmd_plot(cfg);
    }
    std::cerr << "no subcommand given\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
}
