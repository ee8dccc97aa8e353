#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "wirehead/qlearn.hpp"
#include "wirehead/snake_env.hpp"

namespace wirehead {

// A game is fully determined by its config (including the spawn seed) and
// the actions taken, so that is all a recording stores.
struct Trajectory {
  GameConfig game;
  ActionTrace actions;

  bool operator==(const Trajectory&) const = default;
};

nlohmann::json to_json(const Trajectory& t);
Trajectory trajectory_from_json(const nlohmann::json& j);
void save_trajectory(const std::filesystem::path& path, const Trajectory& t);
Trajectory load_trajectory(const std::filesystem::path& path);

struct ReplayFrame {
  std::string board;
  int step = 0;
  double score = 0.0;
  StepEvent event = StepEvent::moved;
};

// Frame 0 is the initial board; one frame follows each action. Throws
// UsageError if the actions run past the end of the game.
std::vector<ReplayFrame> replay_frames(const Trajectory& t);

}  // namespace wirehead
