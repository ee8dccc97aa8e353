#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace wirehead::analysis {

// Parameters of the closed-form addiction conditions.
struct ConditionInputs {
  double k = 0.0;
  double u = 0.0;
  double r_c = 20.0;
  double gamma = 0.9;
  int n = 8;
  int initial_length = 4;

  void validate() const;
};

// A single choice between a drug move and a healthy move. v_g is the value of
// the successor after the healthy move; the drug successor is worth v_g / l.
struct PreferenceInputs {
  double k = 0.0;
  double r_c = 20.0;
  double gamma = 0.9;
  double v_g = 0.0;
  double l = 2.0;

  void validate() const;
};

// Upper bound on the game value: r_c * (n^2 - L0).
double v_max(double r_c, int n, int initial_length);

struct ChoiceValues {
  double q_drug = 0.0;
  double q_healthy = 0.0;
};

// q_drug = k r_c + gamma v_g / l,  q_healthy = r_c + gamma v_g.
ChoiceValues q_values_at_choice(const PreferenceInputs& in);

// q_drug > q_healthy (strict).
bool addiction_preferred(const PreferenceInputs& in);

// The same preference through the rearranged form
// (k - 1) r_c / (gamma (1 - 1/l)) > v_g.
bool addiction_preferred_rearranged(const PreferenceInputs& in);

// (k - 1) / gamma > n^2 - L0. Sufficient for the drug move to win at any
// reachable continuation value.
bool sufficient_condition(const ConditionInputs& in);

// k / u < 1. Necessary for the drug successor to be worth less than the
// healthy one.
bool growth_condition(double k, double u);

// Smallest non-negative integer k for which sufficient_condition holds.
int minimal_k_for_sufficient(double gamma, int n, int initial_length);

// Explicit finite MDP for exact value iteration. States without actions are
// terminal (value 0).
struct Transition {
  std::size_t next = 0;
  double probability = 1.0;
  double reward = 0.0;
};

struct MdpAction {
  std::vector<Transition> outcomes;
};

struct FiniteMdp {
  std::vector<std::vector<MdpAction>> actions;  // actions[state]
  double gamma = 0.9;

  std::size_t num_states() const { return actions.size(); }
  void validate() const;
};

struct ValueIterationResult {
  std::vector<double> values;
  std::size_t iterations = 0;
  double residual = 0.0;
};

// Synchronous Bellman optimality sweeps until the max change drops below
// tolerance. Throws ConvergenceError when max_iterations is exhausted.
ValueIterationResult value_iteration(const FiniteMdp& mdp, double tolerance = 1e-10,
                                     std::size_t max_iterations = 1'000'000);

// Action values at `state` under the given value function.
std::vector<double> action_values(const FiniteMdp& mdp, const std::vector<double>& values,
                                  std::size_t state);

// Choice MDP layout built by build_choice_mdp.
struct ChoiceMdp {
  FiniteMdp mdp;
  std::size_t choice_state = 0;
  std::size_t healthy_action = 0;
  std::size_t drug_action = 1;
};

// State 0 is the choice. The healthy move pays r_c and enters a reward chain
// worth v_g; the drug move pays k r_c and enters a chain worth v_g / l. Each
// continuation spreads its value over `horizon` discounted steps.
ChoiceMdp build_choice_mdp(const PreferenceInputs& in, std::size_t horizon = 4);

struct OracleResult {
  std::vector<double> values;
  std::vector<double> choice_q;  // indexed by action at the choice state
  std::size_t best_action = 0;   // lowest index among the maxima
  bool drug_chosen = false;
};

OracleResult vi_oracle(const ChoiceMdp& choice, double tolerance = 1e-10);

struct SweepResult {
  std::size_t samples = 0;
  std::size_t agreements = 0;
  std::size_t drug_preferred = 0;
  std::vector<PreferenceInputs> mismatches;
};

// Samples PreferenceInputs with l > 1 and v_g > 0 and compares the oracle's
// choice with addiction_preferred on each.
SweepResult oracle_sweep(std::size_t samples, std::uint64_t seed, double tolerance = 1e-10);

}  // namespace wirehead::analysis
