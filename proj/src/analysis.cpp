#include "wirehead/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wirehead/error.hpp"
#include "wirehead/rng.hpp"

namespace wirehead::analysis {

void ConditionInputs::validate() const {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw DomainError("gamma must lie in (0, 1]");
  if (!(r_c > 0.0)) throw DomainError("r_c must be > 0");
  if (!(static_cast<long>(n) * n > initial_length)) throw DomainError("n^2 must exceed L0");
  if (!(k >= 0.0) || !(u >= 0.0)) throw DomainError("k and u must be >= 0");
}

void PreferenceInputs::validate() const {
  if (!(l > 1.0)) throw DomainError("value ratio l must be > 1");
  if (!(v_g >= 0.0)) throw DomainError("v_g must be >= 0");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw DomainError("gamma must lie in [0, 1]");
  if (!(r_c > 0.0)) throw DomainError("r_c must be > 0");
}

double v_max(double r_c, int n, int initial_length) {
  const long cells = static_cast<long>(n) * n;
  if (cells <= initial_length) throw DomainError("v_max requires n^2 > L0");
  return r_c * static_cast<double>(cells - initial_length);
}

ChoiceValues q_values_at_choice(const PreferenceInputs& in) {
  in.validate();
  return {in.k * in.r_c + in.gamma * (in.v_g / in.l), in.r_c + in.gamma * in.v_g};
}

bool addiction_preferred(const PreferenceInputs& in) {
  const ChoiceValues q = q_values_at_choice(in);
  return q.q_drug > q.q_healthy;
}

bool addiction_preferred_rearranged(const PreferenceInputs& in) {
  in.validate();
  if (in.gamma == 0.0) return (in.k - 1.0) * in.r_c > 0.0;
  return (in.k - 1.0) * in.r_c / (in.gamma * (1.0 - 1.0 / in.l)) > in.v_g;
}

bool sufficient_condition(const ConditionInputs& in) {
  in.validate();
  const double cells = static_cast<double>(static_cast<long>(in.n) * in.n - in.initial_length);
  return (in.k - 1.0) / in.gamma > cells;
}

bool growth_condition(double k, double u) {
  if (!(u > 0.0)) throw DomainError("growth condition requires u > 0");
  return k / u < 1.0;
}

int minimal_k_for_sufficient(double gamma, int n, int initial_length) {
  ConditionInputs in;
  in.gamma = gamma;
  in.n = n;
  in.initial_length = initial_length;
  in.validate();
  for (int k = 0;; ++k) {
    in.k = k;
    if (sufficient_condition(in)) return k;
  }
}

void FiniteMdp::validate() const {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw DomainError("mdp gamma must lie in [0, 1]");
  for (std::size_t s = 0; s < actions.size(); ++s) {
    for (const MdpAction& a : actions[s]) {
      double total = 0.0;
      for (const Transition& t : a.outcomes) {
        if (t.next >= actions.size()) throw DomainError("transition from state " + std::to_string(s) + " leaves the MDP");
        if (!(t.probability >= 0.0) || !std::isfinite(t.reward)) throw DomainError("bad transition");
        total += t.probability;
      }
      if (std::abs(total - 1.0) > 1e-12) throw DomainError("action probabilities at state " + std::to_string(s) + " do not sum to 1");
    }
  }
}

namespace {

double backup(const MdpAction& a, const std::vector<double>& values, double gamma) {
  double q = 0.0;
  for (const Transition& t : a.outcomes) q += t.probability * (t.reward + gamma * values[t.next]);
  return q;
}

}  // namespace

ValueIterationResult value_iteration(const FiniteMdp& mdp, double tolerance, std::size_t max_iterations) {
  mdp.validate();
  ValueIterationResult res;
  res.values.assign(mdp.num_states(), 0.0);
  std::vector<double> next(mdp.num_states(), 0.0);
  for (std::size_t it = 1; it <= max_iterations; ++it) {
    double change = 0.0;
    for (std::size_t s = 0; s < mdp.num_states(); ++s) {
      const auto& acts = mdp.actions[s];
      if (acts.empty()) {
        next[s] = 0.0;
        continue;
      }
      double best = backup(acts.front(), res.values, mdp.gamma);
      for (std::size_t a = 1; a < acts.size(); ++a) best = std::max(best, backup(acts[a], res.values, mdp.gamma));
      next[s] = best;
      change = std::max(change, std::abs(best - res.values[s]));
    }
    res.values.swap(next);
    res.iterations = it;
    res.residual = change;
    if (change < tolerance) return res;
  }
  throw ConvergenceError("value iteration did not converge in " + std::to_string(max_iterations) +
                         " sweeps (gamma = 1 with a reward cycle?)");
}

std::vector<double> action_values(const FiniteMdp& mdp, const std::vector<double>& values, std::size_t state) {
  std::vector<double> q;
  for (const MdpAction& a : mdp.actions.at(state)) q.push_back(backup(a, values, mdp.gamma));
  return q;
}

ChoiceMdp build_choice_mdp(const PreferenceInputs& in, std::size_t horizon) {
  in.validate();
  if (horizon == 0) throw DomainError("continuation horizon must be >= 1");
  if (in.gamma == 0.0 && horizon > 1) horizon = 1;

  ChoiceMdp out;
  FiniteMdp& mdp = out.mdp;
  mdp.gamma = in.gamma;
  const std::size_t healthy_start = 1;
  const std::size_t drug_start = 1 + horizon;
  const std::size_t terminal = 1 + 2 * horizon;
  mdp.actions.resize(terminal + 1);

  // Chain worth `total`: step j pays total / (horizon * gamma^j).
  auto add_chain = [&](std::size_t start, double total) {
    double discount = 1.0;
    for (std::size_t j = 0; j < horizon; ++j) {
      const std::size_t s = start + j;
      const std::size_t next = j + 1 < horizon ? s + 1 : terminal;
      const double reward = total / (static_cast<double>(horizon) * discount);
      mdp.actions[s].push_back(MdpAction{{Transition{next, 1.0, reward}}});
      discount *= in.gamma;
    }
  };
  add_chain(healthy_start, in.v_g);
  add_chain(drug_start, in.v_g / in.l);

  out.choice_state = 0;
  out.healthy_action = 0;
  out.drug_action = 1;
  mdp.actions[0].push_back(MdpAction{{Transition{healthy_start, 1.0, in.r_c}}});
  mdp.actions[0].push_back(MdpAction{{Transition{drug_start, 1.0, in.k * in.r_c}}});
  return out;
}

OracleResult vi_oracle(const ChoiceMdp& choice, double tolerance) {
  OracleResult out;
  ValueIterationResult vi = value_iteration(choice.mdp, tolerance);
  out.choice_q = action_values(choice.mdp, vi.values, choice.choice_state);
  out.values = std::move(vi.values);
  for (std::size_t a = 1; a < out.choice_q.size(); ++a) {
    if (out.choice_q[a] > out.choice_q[out.best_action]) out.best_action = a;
  }
  out.drug_chosen = out.best_action == choice.drug_action;
  return out;
}

SweepResult oracle_sweep(std::size_t samples, std::uint64_t seed, double tolerance) {
  Rng rng(seed);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * rng.uniform01(); };
  SweepResult res;
  for (std::size_t i = 0; i < samples; ++i) {
    PreferenceInputs in;
    in.k = uniform(0.0, 10.0);
    in.r_c = uniform(1.0, 50.0);
    in.gamma = uniform(0.05, 1.0);
    in.v_g = uniform(1e-3, 2000.0);
    in.l = 1.0 + uniform(1e-3, 4.0);
    const bool analytic = addiction_preferred(in);
    const bool oracle = vi_oracle(build_choice_mdp(in), tolerance).drug_chosen;
    ++res.samples;
    if (analytic) ++res.drug_preferred;
    if (analytic == oracle) {
      ++res.agreements;
    } else {
      res.mismatches.push_back(in);
    }
  }
  return res;
}

}  // namespace wirehead::analysis
