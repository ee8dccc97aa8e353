#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <string>
#include <string_view>
#include <vector>

#include "wirehead/rng.hpp"

namespace wirehead {

struct Cell {
  int row = 0;
  int col = 0;

  bool operator==(const Cell&) const = default;
};

enum class Direction : std::uint8_t { up = 0, right = 1, down = 2, left = 3 };

// Actions are relative to the current facing, so reversing into the neck is
// not expressible.
enum class RelativeAction : std::uint8_t { left = 0, straight = 1, right = 2 };

inline constexpr int kNumActions = 3;

Direction turn(Direction facing, RelativeAction action);
Cell neighbor(Cell c, Direction d);
std::string_view to_string(Direction d);

struct RewardParams {
  double r_c = 20.0;  // healthy seed reward
  double k = 0.0;     // drug reward multiplier; a drug pays k * r_c
  int u = 0;          // cells of growth per drug

  void validate() const;
  bool operator==(const RewardParams&) const = default;
};

struct GameConfig {
  int n = 8;
  int initial_length = 4;
  RewardParams reward;
  // Steps without eating before the game ends. 2 n^2 by default.
  int max_steps_since_food = 128;
  std::uint64_t rng_seed = 0;

  void validate() const;
  bool operator==(const GameConfig&) const = default;
};

// Config with the default starvation cap of 2 n^2.
GameConfig make_game_config(int n, int initial_length, RewardParams reward, std::uint64_t seed);

enum class StepEvent : std::uint8_t {
  moved,
  ate_seed,
  ate_drug,
  hit_wall,
  hit_self,
  starved,
  // No free cell left to respawn the eaten object.
  board_full,
};

std::string_view to_string(StepEvent e);

struct StepOutcome {
  double reward = 0.0;
  bool terminal = false;
  StepEvent event = StepEvent::moved;
};

class GameState {
 public:
  const GameConfig& config() const { return config_; }
  int n() const { return config_.n; }

  // Head first.
  const std::deque<Cell>& body() const { return body_; }
  Cell head() const { return body_.front(); }
  int length() const { return static_cast<int>(body_.size()); }
  Direction facing() const { return facing_; }
  Cell seed_pos() const { return seed_; }
  Cell drug_pos() const { return drug_; }
  int pending_growth() const { return pending_growth_; }
  int steps_since_food() const { return steps_since_food_; }
  int steps() const { return steps_; }
  double cumulative_score() const { return score_; }
  int seeds_eaten() const { return seeds_eaten_; }
  int drugs_eaten() const { return drugs_eaten_; }
  bool terminal() const { return terminal_; }

  bool in_bounds(Cell c) const { return c.row >= 0 && c.row < config_.n && c.col >= 0 && c.col < config_.n; }
  bool occupied(Cell c) const { return occupancy_[index(c)] != 0; }

  // Whether moving the head into c this step would end the game by collision.
  // The tail cell is safe when it is about to be vacated.
  bool deadly(Cell c) const;

  bool operator==(const GameState&) const = default;

  // Test hook: place the edible objects explicitly. Both cells must be free
  // and distinct.
  void place_objects(Cell seed, Cell drug);

 private:
  friend GameState new_game(const GameConfig& config);
  friend StepOutcome step(GameState& state, RelativeAction action);

  std::size_t index(Cell c) const { return static_cast<std::size_t>(c.row * config_.n + c.col); }
  // Uniform over cells not covered by the body and not equal to `other`.
  // Returns false when there is none.
  bool spawn(Cell& out, Cell other);

  GameConfig config_;
  std::deque<Cell> body_;
  std::vector<std::uint8_t> occupancy_;
  Direction facing_ = Direction::right;
  Cell seed_;
  Cell drug_;
  int pending_growth_ = 0;
  int steps_since_food_ = 0;
  int steps_ = 0;
  double score_ = 0.0;
  int seeds_eaten_ = 0;
  int drugs_eaten_ = 0;
  bool terminal_ = false;
  Rng rng_;
};

// Snake of initial_length laid horizontally in row n/2, centred, facing right.
GameState new_game(const GameConfig& config);

// Advances the game one cell. Throws UsageError on a terminal state.
StepOutcome step(GameState& state, RelativeAction action);

// Glyphs: '@' head, 'o' body, 'S' seed, 'D' drug, '.' empty. One line per row,
// each terminated by '\n'.
std::string render_ascii(const GameState& state);

enum class Bearing : std::uint8_t {
  ahead = 0,
  ahead_right,
  right,
  behind_right,
  behind,
  behind_left,
  left,
  ahead_left,
};

// Compact tabular observation.
//
// Bearings are sign octants of the object's offset in the head's frame
// (forward, rightward).
struct Observation {
  bool danger_left = false;
  bool danger_ahead = false;
  bool danger_right = false;
  Bearing seed_bearing = Bearing::ahead;
  Bearing drug_bearing = Bearing::ahead;
  Direction facing = Direction::right;

  // key = facing*512 + seed_bearing*64 + drug_bearing*8
  //       + danger_left*4 + danger_ahead*2 + danger_right
  std::uint32_t key() const;
  static Observation from_key(std::uint32_t key);

  bool operator==(const Observation&) const = default;
};

inline constexpr std::uint32_t kObservationKeyCount = 4 * 8 * 8 * 8;

Bearing bearing_of(Cell head, Direction facing, Cell target);

Observation observe(const GameState& state);

}  // namespace wirehead
