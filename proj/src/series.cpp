#include "vadecon/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "vadecon/econ/ols.hpp"
#include "vadecon/errors.hpp"

namespace vadecon {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

std::string_view provenance_name(Provenance p) {
  switch (p) {
    case Provenance::kObserved:
      return "OBSERVED";
    case Provenance::kLinearInterp:
      return "LINEAR_INTERP";
    case Provenance::kRegressionImputed:
      return "REGRESSION_IMPUTED";
    default:
      return "MISSING";
  }
}

Provenance parse_provenance(std::string_view s) {
  if (s == "OBSERVED") return Provenance::kObserved;
  if (s == "LINEAR_INTERP") return Provenance::kLinearInterp;
  if (s == "REGRESSION_IMPUTED") return Provenance::kRegressionImputed;
  if (s == "MISSING") return Provenance::kMissing;
  throw ValidationError("unknown provenance tag '" + std::string(s) + "'");
}

MonthlySeries::MonthlySeries(YearMonth start, std::size_t size,
                             std::string label)
    : start_(start),
      values_(size, kNaN),
      provenance_(size, Provenance::kMissing),
      label_(std::move(label)) {
  if (size == 0) {
    throw ValidationError("monthly series must have at least one slot");
  }
}

std::optional<double> MonthlySeries::value_or_missing(std::size_t i) const {
  if (is_missing(i)) return std::nullopt;
  return values_[i];
}

void MonthlySeries::set(std::size_t i, double value, Provenance p) {
  if (provenance_[i] == Provenance::kObserved) {
    throw ValidationError("series '" + label_ + "': observed slot " +
                          format_month(month_at(i)) + " cannot be rewritten");
  }
  if (p == Provenance::kMissing) {
    values_[i] = kNaN;
  } else {
    if (!std::isfinite(value)) {
      throw ValidationError("series value must be finite");
    }
    values_[i] = value;
  }
  provenance_[i] = p;
}

std::size_t MonthlySeries::observed_count() const {
  return static_cast<std::size_t>(std::count(
      provenance_.begin(), provenance_.end(), Provenance::kObserved));
}

double MonthlySeries::missing_fraction() const {
  auto missing = std::count(provenance_.begin(), provenance_.end(),
                            Provenance::kMissing);
  return static_cast<double>(missing) / static_cast<double>(size());
}

std::vector<std::optional<double>> MonthlySeries::optional_values() const {
  std::vector<std::optional<double>> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = value_or_missing(i);
  return out;
}

std::vector<double> MonthlySeries::complete_values(YearMonth* span_start) const {
  std::size_t first = 0;
  std::size_t last = size();
  while (first < last && is_missing(first)) ++first;
  while (last > first && is_missing(last - 1)) --last;
  if (first == last) {
    throw DataError("series '" + label_ + "' has no defined slots");
  }
  std::vector<double> out;
  out.reserve(last - first);
  for (std::size_t i = first; i < last; ++i) {
    if (is_missing(i)) {
      throw DataError("series '" + label_ + "' has an interior gap at " +
                      format_month(month_at(i)));
    }
    out.push_back(values_[i]);
  }
  if (span_start != nullptr) *span_start = month_at(first);
  return out;
}

QuarterlySeries::QuarterlySeries(YearQuarter start, std::size_t size,
                                 std::string label)
    : start_(start),
      values_(size, kNaN),
      provenance_(size, Provenance::kMissing),
      label_(std::move(label)) {
  if (size == 0) {
    throw ValidationError("quarterly series must have at least one slot");
  }
}

void QuarterlySeries::set(std::size_t i, double value, Provenance p) {
  if (provenance_[i] == Provenance::kObserved) {
    throw ValidationError("series '" + label_ + "': observed slot " +
                          format_quarter(quarter_at(i)) +
                          " cannot be rewritten");
  }
  if (p == Provenance::kMissing) {
    values_[i] = kNaN;
  } else {
    if (!std::isfinite(value)) {
      throw ValidationError("series value must be finite");
    }
    values_[i] = value;
  }
  provenance_[i] = p;
}

std::vector<std::optional<double>> QuarterlySeries::optional_values() const {
  std::vector<std::optional<double>> out(size());
  for (std::size_t i = 0; i < size(); ++i) {
    out[i] = is_missing(i) ? std::nullopt : std::optional<double>(values_[i]);
  }
  return out;
}

std::vector<double> QuarterlySeries::complete_values(
    YearQuarter* span_start) const {
  std::size_t first = 0;
  std::size_t last = size();
  while (first < last && is_missing(first)) ++first;
  while (last > first && is_missing(last - 1)) --last;
  if (first == last) {
    throw DataError("series '" + label_ + "' has no defined slots");
  }
  std::vector<double> out;
  for (std::size_t i = first; i < last; ++i) {
    if (is_missing(i)) {
      throw DataError("series '" + label_ + "' has an interior gap at " +
                      format_quarter(quarter_at(i)));
    }
    out.push_back(values_[i]);
  }
  if (span_start != nullptr) *span_start = quarter_at(first);
  return out;
}

MonthlySeries build_monthly(const ScoredCorpus& scored, const Source& source,
                            Dimension dimension) {
  std::vector<const ScoredRow*> rows;
  for (const ScoredRow& row : scored.rows) {
    if (row.source == source) rows.push_back(&row);
  }
  if (rows.empty()) {
    throw DataError("no scored documents for source '" + source.label + "'");
  }

  int first_idx = std::numeric_limits<int>::max();
  int last_idx = std::numeric_limits<int>::min();
  for (const ScoredRow* row : rows) {
    int idx = row->date.year_month().index();
    first_idx = std::min(first_idx, idx);
    last_idx = std::max(last_idx, idx);
  }

  const auto slots = static_cast<std::size_t>(last_idx - first_idx + 1);
  std::string label = source.label + " " + std::string(dimension_name(dimension));
  MonthlySeries series(YearMonth::from_index(first_idx), slots, label);

  std::vector<double> sums(slots, 0.0);
  std::vector<std::size_t> counts(slots, 0);
  for (const ScoredRow* row : rows) {
    auto slot = static_cast<std::size_t>(row->date.year_month().index() -
                                         first_idx);
    sums[slot] += component(row->emotion, dimension);
    ++counts[slot];
  }
  for (std::size_t i = 0; i < slots; ++i) {
    if (counts[i] > 0) {
      series.set(i, sums[i] / static_cast<double>(counts[i]),
                 Provenance::kObserved);
    }
  }
  return series;
}

MonthlySeries interpolate_linear(const MonthlySeries& s) {
  std::vector<std::size_t> observed;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!s.is_missing(i)) observed.push_back(i);
  }
  if (observed.size() < 2) {
    throw DataError("linear interpolation needs at least two defined slots");
  }
  MonthlySeries out = s;
  for (std::size_t seg = 0; seg + 1 < observed.size(); ++seg) {
    std::size_t left = observed[seg];
    std::size_t right = observed[seg + 1];
    double lv = s.value(left);
    double rv = s.value(right);
    for (std::size_t i = left + 1; i < right; ++i) {
      double t = static_cast<double>(i - left) /
                 static_cast<double>(right - left);
      out.set(i, lv + t * (rv - lv), Provenance::kLinearInterp);
    }
  }
  return out;
}

std::pair<MonthlySeries, ImputationDiagnostics> impute_by_regression(
    const MonthlySeries& s, const IndicatorSet& refs,
    const std::vector<std::string>& selected) {
  std::vector<const MonthlySeries*> ref_series;
  for (const std::string& name : selected) {
    auto it = refs.find(name);
    if (it == refs.end()) {
      throw ValidationError("unknown reference series '" + name + "'");
    }
    ref_series.push_back(&it->second);
  }

  // References must cover the target window without gaps.
  const int target_start = s.start().index();
  for (std::size_t r = 0; r < ref_series.size(); ++r) {
    const MonthlySeries& ref = *ref_series[r];
    int offset = target_start - ref.start().index();
    for (std::size_t i = 0; i < s.size(); ++i) {
      int j = offset + static_cast<int>(i);
      if (j < 0 || j >= static_cast<int>(ref.size()) ||
          ref.is_missing(static_cast<std::size_t>(j))) {
        throw DataError("reference series '" + selected[r] +
                        "' does not cover " + format_month(s.month_at(i)));
      }
    }
  }

  std::vector<std::size_t> observed;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.provenance(i) == Provenance::kObserved) observed.push_back(i);
  }
  const std::size_t k = ref_series.size() + 1;
  if (observed.size() < ref_series.size() + 2) {
    throw DataError("regression imputation needs at least " +
                    std::to_string(ref_series.size() + 2) +
                    " observed slots, have " + std::to_string(observed.size()));
  }

  const auto ref_value = [&](std::size_t r, std::size_t slot) {
    const MonthlySeries& ref = *ref_series[r];
    int j = target_start - ref.start().index() + static_cast<int>(slot);
    return ref.value(static_cast<std::size_t>(j));
  };

  Eigen::MatrixXd design(observed.size(), k);
  Eigen::VectorXd y(observed.size());
  for (std::size_t row = 0; row < observed.size(); ++row) {
    design(static_cast<Eigen::Index>(row), 0) = 1.0;
    for (std::size_t r = 0; r < ref_series.size(); ++r) {
      design(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(r + 1)) =
          ref_value(r, observed[row]);
    }
    y(static_cast<Eigen::Index>(row)) = s.value(observed[row]);
  }

  econ::OlsFit fit;
  try {
    fit = econ::ols(design, y);
  } catch (const NumericError& e) {
    throw NumericError(std::string("regression imputation failed: ") +
                       e.what());
  }

  MonthlySeries out = s;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!s.is_missing(i)) continue;
    double fitted = fit.coefficients[0];
    for (std::size_t r = 0; r < ref_series.size(); ++r) {
      fitted += fit.coefficients[r + 1] * ref_value(r, i);
    }
    out.set(i, fitted, Provenance::kRegressionImputed);
  }

  ImputationDiagnostics diag;
  diag.coefficients = fit.coefficients;
  diag.r_squared = fit.r_squared;
  diag.n_observed = observed.size();
  return {std::move(out), std::move(diag)};
}

QuarterlySeries aggregate_quarterly(const MonthlySeries& s) {
  YearQuarter first = YearQuarter::of(s.start());
  YearQuarter last = YearQuarter::of(s.month_at(s.size() - 1));
  const auto slots = static_cast<std::size_t>(last.index() - first.index() + 1);
  QuarterlySeries out(first, slots, s.label() + " (quarterly)");

  std::vector<double> sums(slots, 0.0);
  std::vector<std::size_t> counts(slots, 0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.provenance(i) != Provenance::kObserved) continue;
    auto q = static_cast<std::size_t>(YearQuarter::of(s.month_at(i)).index() -
                                      first.index());
    sums[q] += s.value(i);
    ++counts[q];
  }
  for (std::size_t q = 0; q < slots; ++q) {
    if (counts[q] > 0) {
      out.set(q, sums[q] / static_cast<double>(counts[q]),
              Provenance::kObserved);
    }
  }
  return out;
}

std::vector<double> zscore(std::span<const double> xs) {
  if (xs.size() < 2) {
    throw DataError("zscore needs at least two values");
  }
  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  if (sd == 0.0) {
    throw NumericError("zscore: input is constant");
  }
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = (xs[i] - mean) / sd;
  return out;
}

std::vector<double> detrend(std::span<const double> xs) {
  if (xs.size() < 3) {
    throw DataError("detrend needs at least three values");
  }
  Eigen::MatrixXd design(xs.size(), 2);
  Eigen::VectorXd y(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    design(static_cast<Eigen::Index>(i), 0) = 1.0;
    design(static_cast<Eigen::Index>(i), 1) = static_cast<double>(i);
    y(static_cast<Eigen::Index>(i)) = xs[i];
  }
  return econ::ols(design, y).residuals;
}

std::vector<std::optional<double>> difference(
    std::span<const std::optional<double>> xs) {
  if (xs.size() < 2) {
    throw DataError("difference needs at least two values");
  }
  std::vector<std::optional<double>> out(xs.size() - 1);
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (xs[i].has_value() && xs[i + 1].has_value()) {
      out[i] = *xs[i + 1] - *xs[i];
    }
  }
  return out;
}

std::vector<double> difference(std::span<const double> xs) {
  if (xs.size() < 2) {
    throw DataError("difference needs at least two values");
  }
  std::vector<double> out(xs.size() - 1);
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) out[i] = xs[i + 1] - xs[i];
  return out;
}

}  // namespace vadecon
