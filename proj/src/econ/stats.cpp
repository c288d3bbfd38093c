#include "vadecon/econ/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "vadecon/errors.hpp"

namespace vadecon::econ {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

namespace {

void require_finite(std::span<const double> xs, const char* who) {
  for (double v : xs) {
    if (!std::isfinite(v)) {
      throw ValidationError(std::string(who) + ": non-finite input value");
    }
  }
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw ValidationError("pearson: input lengths differ");
  }
  require_finite(x, "pearson");
  require_finite(y, "pearson");
  if (x.size() < 3) {
    throw DataError("pearson: need at least 3 complete pairs, have " +
                    std::to_string(x.size()));
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw NumericError("pearson: constant input");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double pearson(std::span<const std::optional<double>> x,
               std::span<const std::optional<double>> y) {
  if (x.size() != y.size()) {
    throw ValidationError("pearson: input lengths differ");
  }
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].has_value() && y[i].has_value()) {
      xs.push_back(*x[i]);
      ys.push_back(*y[i]);
    }
  }
  return pearson(std::span<const double>(xs), std::span<const double>(ys));
}

namespace {

// Midranks of the pooled sample; also reports tie group sizes.
std::vector<double> midranks(const std::vector<double>& pooled,
                             std::vector<std::size_t>* tie_sizes) {
  const std::size_t n = pooled.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return pooled[a] < pooled[b];
  });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = rank;
    if (tie_sizes != nullptr) tie_sizes->push_back(j - i + 1);
    i = j + 1;
  }
  return ranks;
}

// Counts of rank arrangements achieving each U value under the tie-free
// null, via the recurrence on the largest pooled element:
// f(m, k, u) = f(m-1, k, u-k) + f(m, k-1, u).
std::vector<double> exact_u_distribution(std::size_t n1, std::size_t n2) {
  const std::size_t max_u = n1 * n2;
  std::vector<std::vector<double>> prev(n1 + 1,
                                        std::vector<double>(max_u + 1, 0.0));
  for (std::size_t m = 0; m <= n1; ++m) prev[m][0] = 1.0;  // k = 0
  for (std::size_t k = 1; k <= n2; ++k) {
    std::vector<std::vector<double>> cur(n1 + 1,
                                         std::vector<double>(max_u + 1, 0.0));
    cur[0][0] = 1.0;
    for (std::size_t m = 1; m <= n1; ++m) {
      for (std::size_t u = 0; u <= m * k; ++u) {
        const double from_first = (u >= k) ? cur[m - 1][u - k] : 0.0;
        cur[m][u] = from_first + prev[m][u];
      }
    }
    prev = std::move(cur);
  }
  return prev[n1];
}

}  // namespace

TestResult mann_whitney_u(std::span<const double> a, std::span<const double> b,
                          PValueMethod method) {
  if (a.empty() || b.empty()) {
    throw DataError("mann_whitney_u: both samples must be non-empty");
  }
  require_finite(a, "mann_whitney_u");
  require_finite(b, "mann_whitney_u");
  const std::size_t n1 = a.size();
  const std::size_t n2 = b.size();
  const std::size_t n = n1 + n2;

  std::vector<double> pooled;
  pooled.reserve(n);
  pooled.insert(pooled.end(), a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());

  std::vector<std::size_t> tie_sizes;
  std::vector<double> ranks = midranks(pooled, &tie_sizes);

  double rank_sum_a = 0.0;
  for (std::size_t i = 0; i < n1; ++i) rank_sum_a += ranks[i];
  const double u_a =
      rank_sum_a - static_cast<double>(n1) * static_cast<double>(n1 + 1) / 2.0;

  const bool has_ties =
      std::any_of(tie_sizes.begin(), tie_sizes.end(),
                  [](std::size_t t) { return t > 1; });

  bool use_exact = false;
  switch (method) {
    case PValueMethod::kExact:
      if (has_ties) {
        throw ValidationError(
            "mann_whitney_u: exact method requires tie-free samples");
      }
      use_exact = true;
      break;
    case PValueMethod::kNormal:
      use_exact = false;
      break;
    case PValueMethod::kAuto:
      use_exact = std::max(n1, n2) <= 8 && !has_ties;
      break;
  }

  TestResult result;
  result.statistic = u_a;
  result.n1 = n1;
  result.n2 = n2;
  result.exact = use_exact;

  const double max_u = static_cast<double>(n1) * static_cast<double>(n2);
  if (use_exact) {
    std::vector<double> dist = exact_u_distribution(n1, n2);
    double total = 0.0;
    for (double c : dist) total += c;
    // Two-sided tail by symmetry around n1*n2/2.
    const double lo = std::min(u_a, max_u - u_a);
    const double hi = std::max(u_a, max_u - u_a);
    double tail = 0.0;
    for (std::size_t u = 0; u < dist.size(); ++u) {
      const double uv = static_cast<double>(u);
      if (uv <= lo || uv >= hi) tail += dist[u];
    }
    result.p_value = std::min(1.0, tail / total);
    result.method = "mann-whitney exact";
  } else {
    const double mu = max_u / 2.0;
    double tie_term = 0.0;
    for (std::size_t t : tie_sizes) {
      const double td = static_cast<double>(t);
      tie_term += td * td * td - td;
    }
    const double nd = static_cast<double>(n);
    const double sigma2 = (max_u / 12.0) *
                          ((nd + 1.0) - tie_term / (nd * (nd - 1.0)));
    if (sigma2 <= 0.0) {
      result.p_value = 1.0;
    } else {
      const double z =
          std::max(0.0, std::abs(u_a - mu) - 0.5) / std::sqrt(sigma2);
      result.p_value = std::min(1.0, 2.0 * (1.0 - normal_cdf(z)));
    }
    result.method = "mann-whitney normal-approx";
  }
  return result;
}

}  // namespace vadecon::econ
