#pragma once

#include <span>

namespace wirehead::stats {

double mean(std::span<const double> xs);

// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double stddev(std::span<const double> xs);

struct MannWhitneyResult {
  double u = 0.0;  // U statistic of the first sample
  double z = 0.0;
  double p_value = 1.0;
};

// One-sided Mann-Whitney U test of "x tends to be larger than y", normal
// approximation with tie and continuity corrections.
MannWhitneyResult mann_whitney_greater(std::span<const double> x, std::span<const double> y);

}  // namespace wirehead::stats
