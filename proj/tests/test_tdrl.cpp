#include <doctest.h>

#include <cmath>
#include <vector>

#include "wirehead/error.hpp"
#include "wirehead/report.hpp"
#include "wirehead/tdrl.hpp"

using namespace wirehead;
using namespace wirehead::tdrl;

namespace {

ChainMdp three_state_chain(bool drug_at_end) {
  return ChainMdp({0.0, 0.0, 1.0}, drug_at_end ? std::vector<std::size_t>{2} : std::vector<std::size_t>{});
}

}  // namespace

TEST_CASE("td_delta follows gamma * (R + V') - V") {
  TdrlModel m(3, 0.1, 1.0, 0.0);
  CHECK(td_delta(m, 0, 1, 1.0) == 1.0);

  TdrlModel fixed(3, 0.1, 0.9, 0.0);
  fixed.values = {0.9, 0.0, 0.0};
  CHECK(td_delta(fixed, 0, 1, 1.0) == 0.0);

  TdrlModel neg(3, 0.1, 0.5, 0.0);
  neg.values = {2.0, 1.0, 0.0};
  CHECK(td_delta(neg, 0, 1, 0.0) == -1.5);

  TdrlModel alt(3, 0.1, 0.5, 0.0, DeltaForm::discount_value);
  alt.values = {2.0, 1.0, 0.0};
  CHECK(td_delta(alt, 0, 1, 1.0) == 1.0 + 0.5 - 2.0);
}

TEST_CASE("apply_surge is a non-compensable floor") {
  CHECK(apply_surge(-0.2, 0.5) == 0.5);
  CHECK(apply_surge(0.3, 0.5) == 0.8);
  for (double d : {-3.0, -0.5, 0.0, 0.25, 7.0}) {
    CHECK(apply_surge(d, 0.0) == d);
    CHECK(apply_surge(d, 0.4) >= 0.4);
  }
  CHECK_THROWS_AS(apply_surge(0.1, -0.1), ConfigError);
}

TEST_CASE("value_update moves one state by nu * delta") {
  TdrlModel m(3, 0.1, 0.9, 0.0);
  value_update(m, 1, 1.0);
  CHECK(m.values == std::vector<double>{0.0, 0.1, 0.0});
  const auto before = m.values;
  value_update(m, 1, 0.0);
  CHECK(m.values == before);

  TdrlModel lin(2, 0.25, 0.9, 0.0);
  value_update(lin, 0, 0.5);
  value_update(lin, 0, 1.5);
  CHECK(lin.values[0] == 0.25 * (0.5 + 1.5));
}

TEST_CASE("model and chain validation") {
  CHECK_THROWS_AS(TdrlModel(3, 0.0, 0.9, 0.0), ConfigError);
  CHECK_THROWS_AS(TdrlModel(3, 0.1, 1.5, 0.0), ConfigError);
  CHECK_THROWS_AS(TdrlModel(3, 0.1, 0.9, -1.0), ConfigError);
  CHECK_THROWS_AS(ChainMdp({1.0}, {}), ConfigError);
  CHECK_THROWS_AS(ChainMdp({0.0, 1.0}, {2}), ConfigError);
  const ChainMdp c({0.0, 0.0, 1.0}, {2});
  CHECK(c.successor(0) == std::optional<std::size_t>(1));
  CHECK_FALSE(c.successor(2).has_value());
}

TEST_CASE("without a surge the chain converges to the TD fixed point") {
  // Fixed point of gamma (R' + V') - V = 0 along 0 -> 1 -> 2(terminal, V = 0):
  //   V1 = gamma * (1 + 0) = 0.9,  V0 = gamma * (0 + V1) = 0.81.
  const ChainMdp mdp = three_state_chain(false);
  TdrlModel m(3, 0.1, 0.9, 0.0);
  const ValueHistory h = simulate_trials(mdp, m, 5000);
  CHECK(h.values.size() == 5000);
  CHECK(h.max_abs_last_delta() < 1e-6);
  CHECK(std::abs(m.values[1] - 0.9) < 1e-3);
  CHECK(std::abs(m.values[0] - 0.81) < 1e-3);
  CHECK(m.values[2] == 0.0);
}

TEST_CASE("the surge grows the pre-drug value without bound") {
  const double nu = 0.1, gamma = 0.9, surge = 0.5;
  const ChainMdp mdp = three_state_chain(true);
  TdrlModel m(3, nu, gamma, surge);
  const ValueHistory h = simulate_trials(mdp, m, 5000);

  // Independent scripted pass over the same chain.
  double v0 = 0.0, v1 = 0.0;
  for (std::size_t t = 0; t < 5000; ++t) {
    const double d0 = gamma * (0.0 + v1) - v0;
    v0 += nu * d0;
    double d1 = gamma * (1.0 + 0.0) - v1;
    d1 = d1 + surge > surge ? d1 + surge : surge;
    v1 += nu * d1;
    REQUIRE(std::abs(h.values[t][0] - v0) <= 1e-12 * (1.0 + std::abs(v0)));
    REQUIRE(std::abs(h.values[t][1] - v1) <= 1e-12 * (1.0 + std::abs(v1)));
  }

  // Each trial adds at least nu * surge to the pre-drug state.
  for (std::size_t t = 1; t < h.values.size(); ++t) {
    CHECK(h.values[t][1] - h.values[t - 1][1] >= nu * surge - 1e-12);
  }
  CHECK(h.values.back()[1] > 100.0);
  CHECK(h.last_deltas[1] >= surge);
}

TEST_CASE("zero surge equals never applying the surge") {
  const ChainMdp mdp = three_state_chain(true);
  TdrlModel a(3, 0.1, 0.9, 0.0), b(3, 0.1, 0.9, 0.0);
  const ValueHistory ha = simulate_trials(mdp, a, 500, true);
  const ValueHistory hb = simulate_trials(mdp, b, 500, false);
  CHECK(ha.values == hb.values);
}

TEST_CASE("simulation only touches chain states and the terminal stays at zero") {
  const ChainMdp mdp({0.0, 0.5, 0.0, 2.0, 1.0}, {1, 3});
  TdrlModel m(5, 0.2, 0.95, 0.3);
  const ValueHistory h = simulate_trials(mdp, m, 100);
  for (const auto& row : h.values) {
    CHECK(row.size() == 5);
    CHECK(row[4] == 0.0);
  }
  TdrlModel wrong(4, 0.2, 0.95, 0.3);
  CHECK_THROWS_AS(simulate_trials(mdp, wrong, 1), ConfigError);
}

TEST_CASE("value history CSV") {
  const ChainMdp mdp = three_state_chain(false);
  TdrlModel m(3, 0.5, 1.0, 0.0);
  const std::string csv = value_history_csv(simulate_trials(mdp, m, 2));
  CHECK(csv == "trial,state_index,value\n1,0,0\n1,1,0.5\n1,2,0\n2,0,0.25\n2,1,0.75\n2,2,0\n");
  const CsvTable parsed = parse_csv(csv);
  CHECK(parsed.rows.size() == 6);
}
