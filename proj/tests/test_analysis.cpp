#include <doctest.h>

#include <cmath>

#include "wirehead/analysis.hpp"
#include "wirehead/error.hpp"
#include "wirehead/rng.hpp"

using namespace wirehead;
using namespace wirehead::analysis;

namespace {

ConditionInputs cond(double k, double gamma, int n, int l0, double u = 1.0) {
  ConditionInputs in;
  in.k = k;
  in.u = u;
  in.gamma = gamma;
  in.n = n;
  in.initial_length = l0;
  return in;
}

PreferenceInputs pref(double k, double r_c, double gamma, double v_g, double l) {
  return PreferenceInputs{k, r_c, gamma, v_g, l};
}

}  // namespace

TEST_CASE("v_max") {
  CHECK(v_max(20.0, 8, 4) == 1200.0);
  CHECK(v_max(7.5, 5, 24) == 7.5);
  CHECK(v_max(1.0, 2, 0) == 4.0);
  CHECK_THROWS_AS(v_max(1.0, 2, 4), DomainError);
}

TEST_CASE("q_values_at_choice") {
  const ChoiceValues q = q_values_at_choice(pref(6.0, 20.0, 0.9, 100.0, 2.0));
  CHECK(q.q_drug == 165.0);
  CHECK(q.q_healthy == 110.0);

  const ChoiceValues near = q_values_at_choice(pref(1.0, 20.0, 0.9, 100.0, 1.0 + 1e-12));
  CHECK(near.q_drug == doctest::Approx(near.q_healthy).epsilon(1e-10));

  const ChoiceValues zero = q_values_at_choice(pref(0.0, 20.0, 0.9, 0.0, 2.0));
  CHECK(zero.q_drug == 0.0);
  CHECK(zero.q_healthy == 20.0);

  CHECK_THROWS_AS(q_values_at_choice(pref(1.0, 20.0, 0.9, 10.0, 1.0)), DomainError);
  CHECK_THROWS_AS(q_values_at_choice(pref(1.0, 20.0, 0.9, -1.0, 2.0)), DomainError);
}

TEST_CASE("addiction_preferred") {
  CHECK(addiction_preferred(pref(6.0, 20.0, 0.9, 100.0, 2.0)));
  for (double v : {0.5, 10.0, 1000.0}) {
    for (double l : {1.01, 2.0, 50.0}) CHECK_FALSE(addiction_preferred(pref(1.0, 20.0, 0.9, v, l)));
  }
  // q_drug = 2*10 + 1*(20/2) = 30 = 10 + 20 = q_healthy: strictness.
  const PreferenceInputs tie = pref(2.0, 10.0, 1.0, 20.0, 2.0);
  CHECK(q_values_at_choice(tie).q_drug == q_values_at_choice(tie).q_healthy);
  CHECK_FALSE(addiction_preferred(tie));
  CHECK_FALSE(addiction_preferred_rearranged(tie));
}

TEST_CASE("the rearranged inequality agrees with the direct comparison") {
  Rng rng(2024);
  int agree = 0;
  const int total = 5000;
  for (int i = 0; i < total; ++i) {
    const PreferenceInputs in = pref(10.0 * rng.uniform01(), 1.0 + 50.0 * rng.uniform01(), 0.05 + 0.95 * rng.uniform01(),
                                     2000.0 * rng.uniform01(), 1.001 + 4.0 * rng.uniform01());
    agree += addiction_preferred(in) == addiction_preferred_rearranged(in);
  }
  CHECK(agree == total);
}

TEST_CASE("sufficient_condition") {
  CHECK_FALSE(sufficient_condition(cond(6.0, 0.9, 8, 4)));
  CHECK(sufficient_condition(cond(56.0, 0.9, 8, 4)));
  CHECK_FALSE(sufficient_condition(cond(55.0, 0.9, 8, 4)));
  for (double g : {0.1, 0.5, 1.0}) CHECK_FALSE(sufficient_condition(cond(1.0, g, 8, 4)));
  CHECK_THROWS_AS(sufficient_condition(cond(6.0, 0.0, 8, 4)), DomainError);
  CHECK_THROWS_AS(sufficient_condition(cond(6.0, 0.9, 2, 4)), DomainError);
}

TEST_CASE("minimal k for the sufficient condition matches a direct search") {
  // Independent search written out against the inequality itself.
  auto search = [](double gamma, int n, int l0) {
    int k = 0;
    while (!((k - 1.0) / gamma > static_cast<double>(n * n - l0))) ++k;
    return k;
  };
  CHECK(search(0.9, 8, 4) == 56);
  CHECK(minimal_k_for_sufficient(0.9, 8, 4) == 56);
  for (double g : {0.3, 0.75, 0.99, 1.0}) {
    for (int n : {4, 6, 10}) {
      for (int l0 : {1, 3, 4}) CHECK(minimal_k_for_sufficient(g, n, l0) == search(g, n, l0));
    }
  }
}

TEST_CASE("growth_condition") {
  CHECK(growth_condition(1.5, 4.0));
  CHECK(growth_condition(6.0, 8.0));
  CHECK_FALSE(growth_condition(5.0, 5.0));
  CHECK_FALSE(growth_condition(9.0, 8.0));
  CHECK_THROWS_AS(growth_condition(1.0, 0.0), DomainError);
}

TEST_CASE("sufficient_condition monotonicity") {
  Rng rng(31);
  for (int i = 0; i < 2000; ++i) {
    const double k = 200.0 * rng.uniform01();
    const double g = 0.01 + 0.99 * rng.uniform01();
    const int n = 3 + static_cast<int>(rng.uniform_index(8));
    const int l0 = 1 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(n)));
    const bool base = sufficient_condition(cond(k, g, n, l0));
    if (base) {
      CHECK(sufficient_condition(cond(k + 1.0 + rng.uniform01(), g, n, l0)));
      CHECK(sufficient_condition(cond(k, g * (0.5 + 0.5 * rng.uniform01()), n, l0)));
      CHECK(sufficient_condition(cond(k, g, n - 1 >= 2 && (n - 1) * (n - 1) > l0 ? n - 1 : n, l0)));
      if (l0 + 1 < n * n) CHECK(sufficient_condition(cond(k, g, n, l0 + 1)));
    } else {
      if (k > 1.0) CHECK_FALSE(sufficient_condition(cond(k, std::min(1.0, g * 1.5), n, l0)));
      CHECK_FALSE(sufficient_condition(cond(k * rng.uniform01(), g, n, l0)));
      CHECK_FALSE(sufficient_condition(cond(k, g, n + 1, l0)));
    }
  }
}

TEST_CASE("sufficiency chain: the condition forces the drug preference below v_max") {
  Rng rng(77);
  int checked = 0;
  for (int i = 0; i < 3000; ++i) {
    const int n = 3 + static_cast<int>(rng.uniform_index(6));
    const int l0 = 1 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(n)));
    const double g = 0.05 + 0.95 * rng.uniform01();
    const double r_c = 1.0 + 30.0 * rng.uniform01();
    const int k_min = minimal_k_for_sufficient(g, n, l0);
    const double k = k_min + 20.0 * rng.uniform01();
    REQUIRE(sufficient_condition(cond(k, g, n, l0)));
    const double v_g = v_max(r_c, n, l0) * rng.uniform01();
    const double l = 1.0 + 1e-6 + 10.0 * rng.uniform01();
    CHECK(addiction_preferred(pref(k, r_c, g, v_g, l)));
    ++checked;
  }
  CHECK(checked == 3000);
}

TEST_CASE("value iteration on explicit MDPs") {
  SUBCASE("two-state cycle") {
    FiniteMdp m;
    m.gamma = 0.9;
    m.actions = {{MdpAction{{Transition{1, 1.0, 1.0}}}}, {MdpAction{{Transition{0, 1.0, 0.0}}}}};
    const auto r = value_iteration(m, 1e-12);
    CHECK(r.values[0] == doctest::Approx(1.0 / 0.19).epsilon(1e-12));
    CHECK(r.values[1] == doctest::Approx(0.9 / 0.19).epsilon(1e-12));
  }
  SUBCASE("stochastic branch") {
    FiniteMdp m;
    m.gamma = 0.5;
    m.actions.resize(3);
    m.actions[0] = {MdpAction{{Transition{1, 0.25, 4.0}, Transition{2, 0.75, 0.0}}}, MdpAction{{Transition{2, 1.0, 0.9}}}};
    m.actions[1] = {MdpAction{{Transition{2, 1.0, 2.0}}}};
    const auto r = value_iteration(m);
    CHECK(r.values[1] == 2.0);
    CHECK(r.values[0] == doctest::Approx(0.25 * (4.0 + 0.5 * 2.0)));
  }
  SUBCASE("gamma = 1 with a reward cycle does not converge") {
    FiniteMdp m;
    m.gamma = 1.0;
    m.actions = {{MdpAction{{Transition{0, 1.0, 1.0}}}}};
    CHECK_THROWS_AS(value_iteration(m, 1e-10, 1000), ConvergenceError);
  }
  SUBCASE("malformed MDPs are rejected") {
    FiniteMdp m;
    m.actions = {{MdpAction{{Transition{3, 1.0, 0.0}}}}};
    CHECK_THROWS_AS(value_iteration(m), DomainError);
    m.actions = {{MdpAction{{Transition{0, 0.5, 0.0}}}}};
    CHECK_THROWS_AS(value_iteration(m), DomainError);
  }
}

TEST_CASE("oracle on the worked choice") {
  const PreferenceInputs in = pref(6.0, 20.0, 0.9, 100.0, 2.0);
  const ChoiceMdp mdp = build_choice_mdp(in);
  const OracleResult res = vi_oracle(mdp);
  CHECK(res.drug_chosen);
  CHECK(res.choice_q[mdp.drug_action] == doctest::Approx(165.0).epsilon(1e-12));
  CHECK(res.choice_q[mdp.healthy_action] == doctest::Approx(110.0).epsilon(1e-12));
  CHECK(res.values[1] == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(res.values[1 + 4] == doctest::Approx(50.0).epsilon(1e-12));
}

TEST_CASE("oracle picks the healthy move when the drug is worthless") {
  const PreferenceInputs in = pref(0.0, 20.0, 0.9, 1e-9, 1e9);
  const OracleResult res = vi_oracle(build_choice_mdp(in));
  CHECK_FALSE(res.drug_chosen);
  CHECK_FALSE(addiction_preferred(in));
}

TEST_CASE("oracle agrees with the formula on sampled choices") {
  const SweepResult sweep = oracle_sweep(600, 99);
  CHECK(sweep.samples == 600);
  CHECK(sweep.agreements == 600);
  CHECK(sweep.mismatches.empty());
  // The sample must exercise both outcomes.
  CHECK(sweep.drug_preferred > 50);
  CHECK(sweep.drug_preferred < 550);
}

TEST_CASE("oracle works for short horizons and gamma = 0") {
  for (std::size_t h : {1, 2, 7}) {
    const PreferenceInputs in = pref(3.0, 10.0, 0.6, 40.0, 1.5);
    CHECK(vi_oracle(build_choice_mdp(in, h)).drug_chosen == addiction_preferred(in));
  }
  const PreferenceInputs myopic = pref(1.5, 10.0, 0.0, 1000.0, 3.0);
  CHECK(vi_oracle(build_choice_mdp(myopic)).drug_chosen);
  CHECK(addiction_preferred(myopic));
}
