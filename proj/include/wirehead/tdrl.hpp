#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace wirehead::tdrl {

// Deterministic chain 0 -> 1 -> ... -> num_states-1; the last state is
// terminal. rewards[s] is the reward received on entering s.
class ChainMdp {
 public:
  ChainMdp(std::vector<double> rewards, std::vector<std::size_t> drug_states);

  std::size_t num_states() const { return rewards_.size(); }
  double reward(std::size_t s) const { return rewards_.at(s); }
  std::optional<std::size_t> successor(std::size_t s) const;
  bool is_drug(std::size_t s) const { return drug_.at(s); }
  const std::vector<std::size_t>& drug_states() const { return drug_states_; }

 private:
  std::vector<double> rewards_;
  std::vector<bool> drug_;
  std::vector<std::size_t> drug_states_;
};

// Target convention for the reward-error signal.
enum class DeltaForm {
  // gamma * (R(s') + V(s')) - V(s)
  discount_both,
  // R(s') + gamma * V(s') - V(s)
  discount_value,
};

struct TdrlModel {
  std::vector<double> values;
  double nu = 0.1;
  double gamma = 0.9;
  double surge = 0.0;
  DeltaForm form = DeltaForm::discount_both;

  TdrlModel(std::size_t num_states, double nu, double gamma, double surge,
            DeltaForm form = DeltaForm::discount_both);
};

double td_delta(const TdrlModel& model, std::size_t s, std::size_t s_next, double reward);

// Non-compensable drug surge: max(delta + surge, surge). Identity at surge 0.
double apply_surge(double delta, double surge);

void value_update(TdrlModel& model, std::size_t s, double delta);

struct ValueHistory {
  // values[t][s] is V(s) after trial t + 1.
  std::vector<std::vector<double>> values;
  // Reward-error applied on each transition of the final trial, indexed by the
  // source state.
  std::vector<double> last_deltas;

  double max_abs_last_delta() const;
};

// Runs num_trials start-to-terminal passes over the chain, updating `model`.
// When `with_surge` is false apply_surge is never invoked.
ValueHistory simulate_trials(const ChainMdp& mdp, TdrlModel& model, std::size_t num_trials,
                             bool with_surge = true);

// CSV with header "trial,state_index,value"; trials are 1-based.
std::string value_history_csv(const ValueHistory& history);

}  // namespace wirehead::tdrl
