#include "wirehead/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "wirehead/error.hpp"

namespace wirehead::stats {

double mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double stddev(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

MannWhitneyResult mann_whitney_greater(std::span<const double> x, std::span<const double> y) {
  if (x.empty() || y.empty()) throw DomainError("mann_whitney_greater: empty sample");
  const std::size_t nx = x.size();
  const std::size_t ny = y.size();
  const std::size_t total = nx + ny;

  struct Tagged {
    double value;
    bool from_x;
  };
  std::vector<Tagged> pooled;
  pooled.reserve(total);
  for (double v : x) pooled.push_back({v, true});
  for (double v : y) pooled.push_back({v, false});
  std::sort(pooled.begin(), pooled.end(), [](const Tagged& a, const Tagged& b) { return a.value < b.value; });

  double rank_sum_x = 0.0;
  double tie_term = 0.0;
  for (std::size_t i = 0; i < total;) {
    std::size_t j = i;
    while (j < total && pooled[j].value == pooled[i].value) ++j;
    const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    const double t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    for (std::size_t m = i; m < j; ++m) {
      if (pooled[m].from_x) rank_sum_x += avg_rank;
    }
    i = j;
  }

  MannWhitneyResult res;
  const double fx = static_cast<double>(nx);
  const double fy = static_cast<double>(ny);
  const double fn = static_cast<double>(total);
  res.u = rank_sum_x - fx * (fx + 1.0) / 2.0;
  const double mu = fx * fy / 2.0;
  const double var = fx * fy / 12.0 * ((fn + 1.0) - tie_term / (fn * (fn - 1.0)));
  if (!(var > 0.0)) {
    res.z = 0.0;
    res.p_value = 1.0;
    return res;
  }
  res.z = (res.u - mu - 0.5) / std::sqrt(var);
  res.p_value = 0.5 * std::erfc(res.z / std::sqrt(2.0));
  return res;
}

}  // namespace wirehead::stats
