#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wirehead/rng.hpp"
#include "wirehead/snake_env.hpp"

namespace wirehead {

using ActionValues = std::array<double, kNumActions>;

// Tabular action-value function over Observation keys. Unseen keys read as
// all-zero rows and are not materialized by lookups.
class QTable {
 public:
  QTable();

  ActionValues values(const Observation& obs) const { return values(obs.key()); }
  ActionValues values(std::uint32_t key) const;
  bool contains(std::uint32_t key) const { return present_[key] != 0; }
  std::size_t size() const { return count_; }

  // Materializes the row for writing.
  ActionValues& row(std::uint32_t key);

  // Present keys in ascending order.
  std::vector<std::uint32_t> keys() const;

  void scale(double factor);

  bool operator==(const QTable&) const = default;

  static constexpr double default_value = 0.0;

 private:
  std::vector<ActionValues> rows_;
  std::vector<std::uint8_t> present_;
  std::size_t count_ = 0;
};

struct LearnParams {
  double gamma = 0.9;
  double nu = 0.1;
  double epsilon0 = 0.99;
  double epsilon_min = 0.01;
  double epsilon_decay = 0.9995;

  void validate() const;
  bool operator==(const LearnParams&) const = default;
};

// Q(s,a) += nu * (target - Q(s,a)); target = r (+ gamma * max Q(s') if not terminal).
void q_update(QTable& table, const Observation& obs, RelativeAction action, double reward,
              const Observation& next_obs, bool terminal, const LearnParams& params);

// Epsilon-greedy with uniform random tie-breaking among maximal actions.
RelativeAction select_action(const QTable& table, const Observation& obs, double epsilon, Rng& rng);

// max(epsilon_min, epsilon0 * epsilon_decay^episode)
double epsilon_at(std::uint64_t episode, const LearnParams& params);

struct EpisodeStats {
  double episode_return = 0.0;
  int steps = 0;
  int seeds_eaten = 0;
  int drugs_eaten = 0;
  int final_length = 0;
  StepEvent end_event = StepEvent::moved;
};

// Actions taken, in order, so an episode can be replayed from its config.
using ActionTrace = std::vector<RelativeAction>;

// Plays one game from new_game(config) to its terminal step. When `learn` is
// set every transition is fed to q_update.
EpisodeStats run_episode(const GameConfig& config, QTable& table, const LearnParams& params,
                         double epsilon, Rng& rng, bool learn, ActionTrace* trace = nullptr);

// Text snapshot:
//   wirehead-qtable 1
//   <key> <q_left> <q_straight> <q_right>
// one record per present key, ascending, values with 17 significant digits.
// Key layout is documented on Observation::key().
void write_qtable(std::ostream& os, const QTable& table);
QTable read_qtable(std::istream& is);
void save_qtable(const std::string& path, const QTable& table);
QTable load_qtable(const std::string& path);

}  // namespace wirehead
