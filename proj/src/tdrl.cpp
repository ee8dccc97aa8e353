#include "wirehead/tdrl.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "wirehead/error.hpp"

namespace wirehead::tdrl {

ChainMdp::ChainMdp(std::vector<double> rewards, std::vector<std::size_t> drug_states)
    : rewards_(std::move(rewards)), drug_(rewards_.size(), false), drug_states_(std::move(drug_states)) {
  if (rewards_.size() < 2) throw ConfigError("chain needs at least two states");
  for (double r : rewards_) {
    if (!std::isfinite(r)) throw ConfigError("chain rewards must be finite");
  }
  std::sort(drug_states_.begin(), drug_states_.end());
  drug_states_.erase(std::unique(drug_states_.begin(), drug_states_.end()), drug_states_.end());
  for (std::size_t s : drug_states_) {
    if (s >= rewards_.size()) throw ConfigError("drug state " + std::to_string(s) + " is not on the chain");
    drug_[s] = true;
  }
}

std::optional<std::size_t> ChainMdp::successor(std::size_t s) const {
  if (s + 1 >= rewards_.size()) return std::nullopt;
  return s + 1;
}

TdrlModel::TdrlModel(std::size_t num_states, double nu_, double gamma_, double surge_, DeltaForm form_)
    : values(num_states, 0.0), nu(nu_), gamma(gamma_), surge(surge_), form(form_) {
  if (!(nu > 0.0 && nu <= 1.0)) throw ConfigError("tdrl nu must lie in (0, 1]");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ConfigError("tdrl gamma must lie in [0, 1]");
  if (!(surge >= 0.0) || !std::isfinite(surge)) throw ConfigError("tdrl drug surge must be finite and >= 0");
}

double td_delta(const TdrlModel& m, std::size_t s, std::size_t s_next, double reward) {
  const double v = m.values.at(s);
  const double v_next = m.values.at(s_next);
  if (m.form == DeltaForm::discount_both) return m.gamma * (reward + v_next) - v;
  return reward + m.gamma * v_next - v;
}

double apply_surge(double delta, double surge) {
  if (!(surge >= 0.0)) throw ConfigError("drug surge must be >= 0");
  if (surge == 0.0) return delta;
  return std::max(delta + surge, surge);
}

void value_update(TdrlModel& m, std::size_t s, double delta) { m.values.at(s) += m.nu * delta; }

double ValueHistory::max_abs_last_delta() const {
  double worst = 0.0;
  for (double d : last_deltas) worst = std::max(worst, std::abs(d));
  return worst;
}

ValueHistory simulate_trials(const ChainMdp& mdp, TdrlModel& model, std::size_t num_trials,
                             bool with_surge) {
  if (model.values.size() != mdp.num_states()) throw ConfigError("model and chain sizes differ");
  ValueHistory history;
  history.values.reserve(num_trials);
  history.last_deltas.assign(mdp.num_states() - 1, 0.0);
  for (std::size_t trial = 0; trial < num_trials; ++trial) {
    for (std::size_t s = 0;;) {
      const auto next = mdp.successor(s);
      if (!next) break;
      double delta = td_delta(model, s, *next, mdp.reward(*next));
      if (with_surge && mdp.is_drug(*next)) delta = apply_surge(delta, model.surge);
      value_update(model, s, delta);
      history.last_deltas[s] = delta;
      s = *next;
    }
    history.values.push_back(model.values);
  }
  return history;
}

std::string value_history_csv(const ValueHistory& history) {
  std::string out = "trial,state_index,value\n";
  char buf[64];
  for (std::size_t t = 0; t < history.values.size(); ++t) {
    const auto& row = history.values[t];
    for (std::size_t s = 0; s < row.size(); ++s) {
      out.append(std::to_string(t + 1)).push_back(',');
      out.append(std::to_string(s)).push_back(',');
      const auto res = std::to_chars(buf, buf + sizeof buf, row[s]);
      out.append(buf, res.ptr).push_back('\n');
    }
  }
  return out;
}

}  // namespace wirehead::tdrl
