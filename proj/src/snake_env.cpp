#include "wirehead/snake_env.hpp"

#include <cmath>
#include <string>

#include "wirehead/error.hpp"

namespace wirehead {

namespace {

constexpr Cell kNowhere{-1, -1};

constexpr std::array<Cell, 4> kUnit = {{{-1, 0}, {0, 1}, {1, 0}, {0, -1}}};

}  // namespace

Direction turn(Direction facing, RelativeAction action) {
  const int f = static_cast<int>(facing);
  switch (action) {
    case RelativeAction::left:
      return static_cast<Direction>((f + 3) % 4);
    case RelativeAction::right:
      return static_cast<Direction>((f + 1) % 4);
    case RelativeAction::straight:
      break;
  }
  return facing;
}

Cell neighbor(Cell c, Direction d) {
  const Cell step = kUnit[static_cast<std::size_t>(d)];
  return {c.row + step.row, c.col + step.col};
}

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::up: return "up";
    case Direction::right: return "right";
    case Direction::down: return "down";
    case Direction::left: return "left";
  }
  return "?";
}

std::string_view to_string(StepEvent e) {
  switch (e) {
    case StepEvent::moved: return "moved";
    case StepEvent::ate_seed: return "ate_seed";
    case StepEvent::ate_drug: return "ate_drug";
    case StepEvent::hit_wall: return "hit_wall";
    case StepEvent::hit_self: return "hit_self";
    case StepEvent::starved: return "starved";
    case StepEvent::board_full: return "board_full";
  }
  return "?";
}

void RewardParams::validate() const {
  if (!(std::isfinite(r_c) && r_c > 0.0)) throw ConfigError("reward.r_c must be finite and > 0");
  if (!(std::isfinite(k) && k >= 0.0)) throw ConfigError("reward.k must be finite and >= 0");
  if (u < 0) throw ConfigError("reward.u must be >= 0");
}

void GameConfig::validate() const {
  if (n < 4) throw ConfigError("game.n must be >= 4 (got " + std::to_string(n) + ")");
  if (initial_length < 1 || initial_length > n) {
    throw ConfigError("game.initial_length must satisfy 1 <= L0 <= n (got " +
                      std::to_string(initial_length) + ")");
  }
  if (max_steps_since_food < 1) throw ConfigError("game.max_steps_since_food must be >= 1");
  reward.validate();
}

GameConfig make_game_config(int n, int initial_length, RewardParams reward, std::uint64_t seed) {
  GameConfig config;
  config.n = n;
  config.initial_length = initial_length;
  config.reward = reward;
  config.max_steps_since_food = 2 * n * n;
  config.rng_seed = seed;
  return config;
}

bool GameState::deadly(Cell c) const {
  if (!in_bounds(c)) return true;
  if (!occupied(c)) return false;
  return !(c == body_.back() && pending_growth_ == 0);
}

bool GameState::spawn(Cell& out, Cell other) {
  const int n = config_.n;
  std::uint64_t free_count = 0;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const Cell cell{r, c};
      if (!occupied(cell) && !(cell == other)) ++free_count;
    }
  }
  if (free_count == 0) return false;
  std::uint64_t pick = rng_.uniform_index(free_count);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const Cell cell{r, c};
      if (occupied(cell) || cell == other) continue;
      if (pick == 0) {
        out = cell;
        return true;
      }
      --pick;
    }
  }
  return false;
}

void GameState::place_objects(Cell seed, Cell drug) {
  if (!in_bounds(seed) || !in_bounds(drug) || seed == drug || occupied(seed) || occupied(drug)) {
    throw UsageError("place_objects: cells must be free, distinct and in bounds");
  }
  seed_ = seed;
  drug_ = drug;
}

GameState new_game(const GameConfig& config) {
  config.validate();
  GameState s;
  s.config_ = config;
  s.rng_ = Rng(config.rng_seed);
  s.occupancy_.assign(static_cast<std::size_t>(config.n * config.n), 0);
  const int row = config.n / 2;
  const int tail_col = (config.n - config.initial_length) / 2;
  for (int i = 0; i < config.initial_length; ++i) {
    const Cell c{row, tail_col + config.initial_length - 1 - i};
    s.body_.push_back(c);
    s.occupancy_[s.index(c)] = 1;
  }
  s.facing_ = Direction::right;
  // Every legal config leaves at least n^2 - n >= 12 free cells.
  s.spawn(s.seed_, kNowhere);
  s.spawn(s.drug_, s.seed_);
  return s;
}

StepOutcome step(GameState& s, RelativeAction action) {
  if (s.terminal_) throw UsageError("step called on a terminal game state");

  s.facing_ = turn(s.facing_, action);
  const Cell target = neighbor(s.head(), s.facing_);
  ++s.steps_;

  StepOutcome out;
  if (!s.in_bounds(target)) {
    out.event = StepEvent::hit_wall;
  } else if (s.deadly(target)) {
    out.event = StepEvent::hit_self;
  }
  if (out.event != StepEvent::moved) {
    out.terminal = s.terminal_ = true;
    return out;
  }

  const RewardParams& rp = s.config_.reward;
  if (target == s.seed_) {
    out.event = StepEvent::ate_seed;
    out.reward = rp.r_c;
    s.pending_growth_ += 1;
    ++s.seeds_eaten_;
  } else if (target == s.drug_) {
    out.event = StepEvent::ate_drug;
    out.reward = rp.k * rp.r_c;
    s.pending_growth_ += rp.u;
    ++s.drugs_eaten_;
  }
  const bool ate = out.event != StepEvent::moved;
  s.steps_since_food_ = ate ? 0 : s.steps_since_food_ + 1;

  if (s.pending_growth_ > 0) {
    --s.pending_growth_;
  } else {
    s.occupancy_[s.index(s.body_.back())] = 0;
    s.body_.pop_back();
  }
  s.body_.push_front(target);
  s.occupancy_[s.index(target)] = 1;
  s.score_ += out.reward;

  if (out.event == StepEvent::ate_seed) {
    if (!s.spawn(s.seed_, s.drug_)) {
      out.event = StepEvent::board_full;
      out.terminal = s.terminal_ = true;
    }
  } else if (out.event == StepEvent::ate_drug) {
    if (!s.spawn(s.drug_, s.seed_)) {
      out.event = StepEvent::board_full;
      out.terminal = s.terminal_ = true;
    }
  } else if (s.steps_since_food_ >= s.config_.max_steps_since_food) {
    out.event = StepEvent::starved;
    out.terminal = s.terminal_ = true;
  }
  return out;
}

std::string render_ascii(const GameState& s) {
  const int n = s.n();
  std::string grid(static_cast<std::size_t>(n * (n + 1)), '.');
  for (int r = 0; r < n; ++r) grid[static_cast<std::size_t>(r * (n + 1) + n)] = '\n';
  auto at = [&](Cell c) -> char& { return grid[static_cast<std::size_t>(c.row * (n + 1) + c.col)]; };
  at(s.seed_pos()) = 'S';
  at(s.drug_pos()) = 'D';
  bool first = true;
  for (const Cell& c : s.body()) {
    at(c) = first ? '@' : 'o';
    first = false;
  }
  return grid;
}

Bearing bearing_of(Cell head, Direction facing, Cell target) {
  const Cell fwd = kUnit[static_cast<std::size_t>(facing)];
  const Cell rgt = kUnit[(static_cast<std::size_t>(facing) + 1) % 4];
  const int dr = target.row - head.row;
  const int dc = target.col - head.col;
  const int f = dr * fwd.row + dc * fwd.col;
  const int r = dr * rgt.row + dc * rgt.col;
  if (f > 0) return r > 0 ? Bearing::ahead_right : (r < 0 ? Bearing::ahead_left : Bearing::ahead);
  if (f < 0) return r > 0 ? Bearing::behind_right : (r < 0 ? Bearing::behind_left : Bearing::behind);
  return r > 0 ? Bearing::right : (r < 0 ? Bearing::left : Bearing::ahead);
}

std::uint32_t Observation::key() const {
  return static_cast<std::uint32_t>(facing) * 512U + static_cast<std::uint32_t>(seed_bearing) * 64U +
         static_cast<std::uint32_t>(drug_bearing) * 8U + (danger_left ? 4U : 0U) +
         (danger_ahead ? 2U : 0U) + (danger_right ? 1U : 0U);
}

Observation Observation::from_key(std::uint32_t key) {
  if (key >= kObservationKeyCount) throw UsageError("observation key out of range: " + std::to_string(key));
  Observation o;
  o.danger_right = (key & 1U) != 0;
  o.danger_ahead = (key & 2U) != 0;
  o.danger_left = (key & 4U) != 0;
  o.drug_bearing = static_cast<Bearing>((key >> 3) & 7U);
  o.seed_bearing = static_cast<Bearing>((key >> 6) & 7U);
  o.facing = static_cast<Direction>((key >> 9) & 3U);
  return o;
}

Observation observe(const GameState& s) {
  Observation o;
  const Cell head = s.head();
  const Direction f = s.facing();
  o.danger_left = s.deadly(neighbor(head, turn(f, RelativeAction::left)));
  o.danger_ahead = s.deadly(neighbor(head, f));
  o.danger_right = s.deadly(neighbor(head, turn(f, RelativeAction::right)));
  o.seed_bearing = bearing_of(head, f, s.seed_pos());
  o.drug_bearing = bearing_of(head, f, s.drug_pos());
  o.facing = f;
  return o;
}

}  // namespace wirehead
