#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vadecon/dates.hpp"
#include "vadecon/scorer.hpp"
#include "vadecon/vad.hpp"

namespace vadecon {

enum class Provenance { kObserved, kLinearInterp, kRegressionImputed, kMissing };

std::string_view provenance_name(Provenance p);
Provenance parse_provenance(std::string_view s);

// Real-valued series on a contiguous monthly grid. Every slot carries a
// provenance tag; a slot holds a value iff its tag is not kMissing.
// Observed values are never rewritten by interpolation or imputation.
class MonthlySeries {
 public:
  MonthlySeries(YearMonth start, std::size_t size, std::string label);

  std::size_t size() const { return values_.size(); }
  YearMonth start() const { return start_; }
  YearMonth month_at(std::size_t i) const {
    return YearMonth::from_index(start_.index() + static_cast<int>(i));
  }
  const std::string& label() const { return label_; }

  bool is_missing(std::size_t i) const {
    return provenance_[i] == Provenance::kMissing;
  }
  Provenance provenance(std::size_t i) const { return provenance_[i]; }
  // Valid only for non-missing slots.
  double value(std::size_t i) const { return values_[i]; }
  std::optional<double> value_or_missing(std::size_t i) const;

  void set(std::size_t i, double value, Provenance p);

  std::size_t observed_count() const;
  double missing_fraction() const;
  // Slots as an optional-valued list, for the missing-aware vector ops.
  std::vector<std::optional<double>> optional_values() const;
  // Values of the longest prefix-trimmed fully defined span [first, last]
  // of non-missing slots; throws DataError if interior gaps remain.
  std::vector<double> complete_values(YearMonth* span_start = nullptr) const;

 private:
  YearMonth start_;
  std::vector<double> values_;
  std::vector<Provenance> provenance_;
  std::string label_;
};

// Quarterly counterpart produced by aggregate_quarterly.
class QuarterlySeries {
 public:
  QuarterlySeries(YearQuarter start, std::size_t size, std::string label);

  std::size_t size() const { return values_.size(); }
  YearQuarter start() const { return start_; }
  YearQuarter quarter_at(std::size_t i) const {
    return YearQuarter::from_index(start_.index() + static_cast<int>(i));
  }
  const std::string& label() const { return label_; }
  bool is_missing(std::size_t i) const {
    return provenance_[i] == Provenance::kMissing;
  }
  Provenance provenance(std::size_t i) const { return provenance_[i]; }
  double value(std::size_t i) const { return values_[i]; }
  void set(std::size_t i, double value, Provenance p);
  std::vector<std::optional<double>> optional_values() const;
  std::vector<double> complete_values(YearQuarter* span_start = nullptr) const;

 private:
  YearQuarter start_;
  std::vector<double> values_;
  std::vector<Provenance> provenance_;
  std::string label_;
};

// Named complete monthly reference series (economic indicators).
using IndicatorSet = std::map<std::string, MonthlySeries>;

// One slot per month between the first and last document month of the
// source; months with k >= 1 documents hold the mean of their k scores.
// Throws DataError when the source has no rows.
MonthlySeries build_monthly(const ScoredCorpus& scored, const Source& source,
                            Dimension dimension);

// Fills interior gaps with the linear interpolant between the nearest
// observed neighbors. Leading and trailing gaps stay missing. Requires at
// least two observed slots.
MonthlySeries interpolate_linear(const MonthlySeries& s);

struct ImputationDiagnostics {
  std::vector<double> coefficients;  // intercept first, then refs in order
  double r_squared = 0.0;
  std::size_t n_observed = 0;
};

// OLS of the observed slots on intercept + selected reference series, then
// fills every missing slot (edges included) with the fitted value.
// Requires n_observed >= selected.size() + 2 and complete references over
// the series window.
std::pair<MonthlySeries, ImputationDiagnostics> impute_by_regression(
    const MonthlySeries& s, const IndicatorSet& refs,
    const std::vector<std::string>& selected);

// Mean of each quarter's observed monthly slots; interpolated or imputed
// slots do not contribute. Quarters with no observed month are missing.
QuarterlySeries aggregate_quarterly(const MonthlySeries& s);

// Center to mean 0 and scale to unit sample standard deviation (n-1
// denominator). Throws NumericError on constant input.
std::vector<double> zscore(std::span<const double> xs);

// Residuals of OLS on intercept + linear time index.
std::vector<double> detrend(std::span<const double> xs);

// First differences; an output slot is defined only when both operands are.
std::vector<std::optional<double>> difference(
    std::span<const std::optional<double>> xs);
std::vector<double> difference(std::span<const double> xs);

}  // namespace vadecon
