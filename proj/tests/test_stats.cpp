#include <doctest.h>

#include <vector>

#include "wirehead/error.hpp"
#include "wirehead/stats.hpp"

using namespace wirehead::stats;

TEST_CASE("mean and sample standard deviation") {
  const std::vector<double> xs = {2, 4, 4, 4, 5, 5, 7, 9};
  CHECK(mean(xs) == 5.0);
  CHECK(stddev(xs) == doctest::Approx(2.138089935299395));
  const std::vector<double> one = {3.0};
  CHECK(stddev(one) == 0.0);
  CHECK(mean(std::vector<double>{}) == 0.0);
}

// Expected values from scipy.stats.mannwhitneyu(x, y, alternative="greater",
// method="asymptotic", use_continuity=True).
TEST_CASE("Mann-Whitney U, one-sided, normal approximation") {
  SUBCASE("no ties") {
    const std::vector<double> x = {3.1, 4.2, 5.5, 6.0, 7.7, 8.1};
    const std::vector<double> y = {1.0, 2.2, 2.9, 3.3, 4.0};
    const auto r = mann_whitney_greater(x, y);
    CHECK(r.u == 28.0);
    CHECK(r.p_value == doctest::Approx(0.011239436683062633).epsilon(1e-12));
  }
  SUBCASE("ties") {
    const std::vector<double> x = {1, 2, 2, 3, 3, 3, 4};
    const std::vector<double> y = {2, 2, 3, 4, 4, 5};
    const auto r = mann_whitney_greater(x, y);
    CHECK(r.u == 13.5);
    CHECK(r.p_value == doctest::Approx(0.8814974136431721).epsilon(1e-12));
  }
  SUBCASE("twenty per group") {
    std::vector<double> x, y;
    for (int i = 0; i < 20; ++i) {
      x.push_back(10.0 + i);
      y.push_back(1.0 + i);
    }
    y.back() = 20.5;
    const auto r = mann_whitney_greater(x, y);
    CHECK(r.u == 339.0);
    CHECK(r.p_value == doctest::Approx(8.90555912803796e-05).epsilon(1e-10));
  }
  SUBCASE("all tied gives no evidence") {
    const std::vector<double> x = {1, 1, 1}, y = {1, 1};
    CHECK(mann_whitney_greater(x, y).p_value == 1.0);
  }
  SUBCASE("empty sample") {
    const std::vector<double> x = {1.0}, y;
    CHECK_THROWS_AS(mann_whitney_greater(x, y), wirehead::DomainError);
  }
}
