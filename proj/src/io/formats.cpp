#include "vadecon/io/formats.hpp"

#include <string_view>

#include "vadecon/errors.hpp"
#include "vadecon/io/csv.hpp"

namespace vadecon::io {

namespace {

std::string spec_name(econ::DeterministicSpec spec) {
  return spec == econ::DeterministicSpec::kConstantTrend ? "constant_trend"
                                                         : "constant";
}

std::string level_name(double level) {
  if (level == 0.01) return "1%";
  if (level == 0.05) return "5%";
  if (level == 0.10) return "10%";
  return format_double(level);
}

}  // namespace

void write_scored_csv(const ScoredCorpus& scored,
                      const std::filesystem::path& path) {
  std::string out = "id,source,date,valence,arousal,dominance,coverage\n";
  for (const ScoredRow& row : scored.rows) {
    out += row.id;
    out += ',';
    out += row.source.label;
    out += ',';
    out += format_date(row.date);
    out += ',';
    out += format_double(row.emotion.valence);
    out += ',';
    out += format_double(row.emotion.arousal);
    out += ',';
    out += format_double(row.emotion.dominance);
    out += ',';
    out += format_double(row.coverage);
    out += '\n';
  }
  write_text_file(path, out);
}

ScoredCorpus read_scored_csv(const std::filesystem::path& path) {
  CsvTable table = read_csv(path);
  const std::vector<std::string> expected = {
      "id", "source", "date", "valence", "arousal", "dominance", "coverage"};
  if (table.header != expected) {
    throw ValidationError(path.string() + ": unexpected scored-corpus header");
  }
  ScoredCorpus scored;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& f = table.rows[i];
    const std::string where = path.string() + ": row " + std::to_string(i + 1);
    ScoredRow row;
    row.id = f[0];
    row.source = Source::parse(f[1]);
    row.date = parse_date(f[2]);
    row.emotion.valence = parse_double(f[3], where);
    row.emotion.arousal = parse_double(f[4], where);
    row.emotion.dominance = parse_double(f[5], where);
    row.coverage = parse_double(f[6], where);
    scored.rows.push_back(std::move(row));
  }
  if (scored.rows.empty()) {
    throw DataError(path.string() + ": no scored rows");
  }
  return scored;
}

void write_series_csv(const MonthlySeries& s,
                      const std::filesystem::path& path) {
  std::string out = "month,value,provenance\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    out += format_month(s.month_at(i));
    out += ',';
    if (!s.is_missing(i)) out += format_double(s.value(i));
    out += ',';
    out += provenance_name(s.provenance(i));
    out += '\n';
  }
  write_text_file(path, out);
}

MonthlySeries read_series_csv(const std::filesystem::path& path,
                              const std::string& label) {
  CsvTable table = read_csv(path);
  const std::vector<std::string> expected = {"month", "value", "provenance"};
  if (table.header != expected) {
    throw ValidationError(path.string() +
                          ": expected header 'month,value,provenance'");
  }
  if (table.rows.empty()) {
    throw DataError(path.string() + ": series has no rows");
  }
  YearMonth start = parse_month(table.rows.front()[0]);
  MonthlySeries s(start, table.rows.size(),
                  label.empty() ? path.stem().string() : label);
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& f = table.rows[i];
    const std::string where = path.string() + ": row " + std::to_string(i + 1);
    YearMonth ym = parse_month(f[0]);
    if (ym.index() != start.index() + static_cast<int>(i)) {
      throw ValidationError(where + ": months must be consecutive");
    }
    Provenance p = parse_provenance(f[2]);
    if (p == Provenance::kMissing) {
      if (!f[1].empty()) {
        throw ValidationError(where + ": MISSING slot carries a value");
      }
    } else {
      s.set(i, parse_double(f[1], where), p);
    }
  }
  return s;
}

void write_quarterly_csv(const QuarterlySeries& s,
                         const std::filesystem::path& path) {
  std::string out = "month,value,provenance\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    out += format_quarter(s.quarter_at(i));
    out += ',';
    if (!s.is_missing(i)) out += format_double(s.value(i));
    out += ',';
    out += provenance_name(s.provenance(i));
    out += '\n';
  }
  write_text_file(path, out);
}

MonthlySeries read_indicator_csv(const std::filesystem::path& path,
                                 const std::string& name) {
  CsvTable table = read_csv(path);
  const std::vector<std::string> expected = {"month", "value"};
  if (table.header != expected) {
    throw ValidationError(path.string() + ": expected header 'month,value'");
  }
  if (table.rows.empty()) {
    throw DataError(path.string() + ": indicator has no rows");
  }
  YearMonth start = parse_month(table.rows.front()[0]);
  MonthlySeries s(start, table.rows.size(), name);
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& f = table.rows[i];
    const std::string where = path.string() + ": row " + std::to_string(i + 1);
    YearMonth ym = parse_month(f[0]);
    if (ym.index() != start.index() + static_cast<int>(i)) {
      throw ValidationError(where +
                            ": indicator months must be consecutive (gap at " +
                            f[0] + ")");
    }
    s.set(i, parse_double(f[1], where), Provenance::kObserved);
  }
  return s;
}

nlohmann::json adf_to_json(const econ::AdfResult& r) {
  nlohmann::json cv = nlohmann::json::object();
  for (const auto& [level, value] : r.critical_values) {
    cv[level_name(level)] = value;
  }
  nlohmann::json rejected = nlohmann::json::array();
  for (double level : r.rejected_at) rejected.push_back(level_name(level));
  return nlohmann::json{{"tau_statistic", r.tau_statistic},
                        {"lags_used", r.lags_used},
                        {"deterministic_spec", spec_name(r.spec)},
                        {"critical_values", cv},
                        {"rejected_at", rejected}};
}

nlohmann::json test_result_to_json(const econ::TestResult& r) {
  return nlohmann::json{{"statistic", r.statistic}, {"p_value", r.p_value},
                        {"method", r.method},       {"n1", r.n1},
                        {"n2", r.n2},               {"exact", r.exact}};
}

nlohmann::json break_result_to_json(const econ::BreakResult& r) {
  nlohmann::json by_m = nlohmann::json::array();
  for (std::size_t m = 0; m < r.ssr_by_m.size(); ++m) {
    nlohmann::json breaks = nlohmann::json::array();
    for (int b : r.breaks_by_m[m]) breaks.push_back(b);
    by_m.push_back({{"m", m},
                    {"ssr", r.ssr_by_m[m]},
                    {"bic", r.bic_by_m[m]},
                    {"break_indices", breaks}});
  }
  nlohmann::json segs = nlohmann::json::array();
  for (const econ::SegmentFit& seg : r.segment_fits) {
    segs.push_back({{"begin", seg.begin},
                    {"end", seg.end},
                    {"coefficients", seg.coefficients},
                    {"ssr", seg.ssr},
                    {"n_obs", seg.n_obs}});
  }
  nlohmann::json dates = nlohmann::json::array();
  for (const YearMonth& ym : r.break_dates) dates.push_back(format_month(ym));
  return nlohmann::json{
      {"n_breaks", r.n_breaks},
      {"break_indices", r.break_indices},
      {"break_dates", dates},
      {"by_m", by_m},
      {"segment_fits", segs},
      {"config",
       {{"max_breaks", r.config.max_breaks},
        {"trim_fraction", r.config.trim_fraction},
        {"ar_order", r.config.ar_order}}}};
}

void write_break_csv(const econ::BreakResult& r,
                     const std::filesystem::path& path) {
  std::string out = "m,bic,ssr\n";
  for (std::size_t m = 0; m < r.ssr_by_m.size(); ++m) {
    out += std::to_string(m);
    out += ',';
    out += format_double(r.bic_by_m[m]);
    out += ',';
    out += format_double(r.ssr_by_m[m]);
    out += '\n';
  }
  out += "\nbreak_index,break_month\n";
  for (std::size_t i = 0; i < r.break_indices.size(); ++i) {
    out += std::to_string(r.break_indices[i]);
    out += ',';
    if (i < r.break_dates.size()) out += format_month(r.break_dates[i]);
    out += '\n';
  }
  write_text_file(path, out);
}

}  // namespace vadecon::io
