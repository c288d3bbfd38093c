#include <doctest.h>

#include <cmath>
#include <vector>

#include "test_support.hpp"
#include "vadecon/econ/adf.hpp"
#include "vadecon/errors.hpp"

using namespace vadecon;
using econ::adf_test;
using econ::AdfResult;
using econ::DeterministicSpec;

namespace {

std::vector<double> white_noise(std::uint64_t seed, std::size_t n) {
  testsupport::NormalSampler sampler(seed);
  std::vector<double> xs(n);
  for (auto& v : xs) v = sampler.next();
  return xs;
}

std::vector<double> random_walk(std::uint64_t seed, std::size_t n) {
  testsupport::NormalSampler sampler(seed);
  std::vector<double> xs(n);
  double level = 0.0;
  for (auto& v : xs) {
    level += sampler.next();
    v = level;
  }
  return xs;
}

}  // namespace

TEST_CASE("white noise rejects the unit root at 5%") {
  int rejections = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto res = adf_test(white_noise(seed * 7919, 200),
                        DeterministicSpec::kConstant);
    if (res.rejected(0.05)) ++rejections;
  }
  CHECK(rejections >= 18);
}

TEST_CASE("a random walk is rarely rejected") {
  int rejections = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto res = adf_test(random_walk(seed * 104729, 200),
                        DeterministicSpec::kConstant);
    if (res.rejected(0.05)) ++rejections;
  }
  CHECK(rejections <= 3);
}

TEST_CASE("trend spec rejects trend-stationary noise") {
  testsupport::NormalSampler sampler(42);
  std::vector<double> xs(200);
  for (std::size_t t = 0; t < xs.size(); ++t) {
    xs[t] = 0.05 * static_cast<double>(t) + sampler.next();
  }
  auto res = adf_test(xs, DeterministicSpec::kConstantTrend);
  CHECK(res.spec == DeterministicSpec::kConstantTrend);
  CHECK(res.rejected(0.05));
}

TEST_CASE("critical values carry the published asymptotic table") {
  auto res = adf_test(white_noise(11, 60), DeterministicSpec::kConstant);
  REQUIRE(res.critical_values.size() == 3);
  CHECK(res.critical_values.at(0.01) == doctest::Approx(-3.43035));
  CHECK(res.critical_values.at(0.05) == doctest::Approx(-2.86154));
  CHECK(res.critical_values.at(0.10) == doctest::Approx(-2.56677));

  auto trend = adf_test(white_noise(11, 60), DeterministicSpec::kConstantTrend);
  CHECK(trend.critical_values.at(0.01) == doctest::Approx(-3.95877));
  CHECK(trend.critical_values.at(0.05) == doctest::Approx(-3.41049));
  CHECK(trend.critical_values.at(0.10) == doctest::Approx(-3.12705));
}

TEST_CASE("rejection set is downward closed in significance") {
  for (std::uint64_t seed : {5ULL, 6ULL, 7ULL, 8ULL}) {
    for (auto series : {white_noise(seed, 120), random_walk(seed, 120)}) {
      auto res = adf_test(series, DeterministicSpec::kConstant);
      if (res.rejected(0.01)) {
        CHECK(res.rejected(0.05));
        CHECK(res.rejected(0.10));
      }
      if (res.rejected(0.05)) CHECK(res.rejected(0.10));
      // rejected_at holds exactly the levels where tau < critical value
      for (auto& [level, cv] : res.critical_values) {
        CHECK(res.rejected(level) == (res.tau_statistic < cv));
      }
      CHECK(std::isfinite(res.tau_statistic));
    }
  }
}

TEST_CASE("max_lags zero forces the no-augmentation regression") {
  auto res = adf_test(white_noise(17, 80), DeterministicSpec::kConstant, 0);
  CHECK(res.lags_used == 0);
}

TEST_CASE("chosen lag respects the requested cap") {
  auto res = adf_test(white_noise(23, 120), DeterministicSpec::kConstant, 3);
  CHECK(res.lags_used >= 0);
  CHECK(res.lags_used <= 3);
}

TEST_CASE("series shorter than 15 observations is a data error") {
  std::vector<double> xs = white_noise(3, 14);
  CHECK_THROWS_AS(adf_test(xs, DeterministicSpec::kConstant), DataError);
  std::vector<double> ok = white_noise(3, 15);
  CHECK_NOTHROW(adf_test(ok, DeterministicSpec::kConstant));
}

TEST_CASE("explicit lag order needs matching length") {
  std::vector<double> xs = white_noise(9, 18);
  CHECK_NOTHROW(adf_test(xs, DeterministicSpec::kConstant, 3));
  CHECK_THROWS_AS(adf_test(xs, DeterministicSpec::kConstant, 4), DataError);
  CHECK_THROWS_AS(adf_test(xs, DeterministicSpec::kConstant, -1),
                  ValidationError);
}

TEST_CASE("constant series yields a numeric error") {
  std::vector<double> xs(40, 2.5);
  CHECK_THROWS_AS(adf_test(xs, DeterministicSpec::kConstant), NumericError);
}

TEST_CASE("non-finite input is a validation error") {
  std::vector<double> xs = white_noise(4, 40);
  xs[10] = std::nan("");
  CHECK_THROWS_AS(adf_test(xs, DeterministicSpec::kConstant), ValidationError);
}

TEST_CASE("deterministic across repeated calls") {
  auto xs = white_noise(31, 90);
  auto a = adf_test(xs, DeterministicSpec::kConstant);
  auto b = adf_test(xs, DeterministicSpec::kConstant);
  CHECK(a.tau_statistic == b.tau_statistic);
  CHECK(a.lags_used == b.lags_used);
  CHECK(a.rejected_at == b.rejected_at);
}
