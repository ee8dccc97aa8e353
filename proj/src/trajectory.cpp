#include "wirehead/trajectory.hpp"

#include "wirehead/error.hpp"
#include "wirehead/report.hpp"

namespace wirehead {

using nlohmann::json;

json to_json(const Trajectory& t) {
  std::string actions;
  actions.reserve(t.actions.size());
  for (RelativeAction a : t.actions) actions.push_back("LSR"[static_cast<int>(a)]);
  const GameConfig& g = t.game;
  return json{{"game",
               {{"n", g.n},
                {"initial_length", g.initial_length},
                {"max_steps_since_food", g.max_steps_since_food},
                {"rng_seed", g.rng_seed},
                {"reward", {{"r_c", g.reward.r_c}, {"k", g.reward.k}, {"u", g.reward.u}}}}},
              {"actions", actions}};
}

Trajectory trajectory_from_json(const json& j) {
  Trajectory t;
  try {
    const json& g = j.at("game");
    t.game.n = g.at("n").get<int>();
    t.game.initial_length = g.at("initial_length").get<int>();
    t.game.max_steps_since_food = g.at("max_steps_since_food").get<int>();
    t.game.rng_seed = g.at("rng_seed").get<std::uint64_t>();
    t.game.reward.r_c = g.at("reward").at("r_c").get<double>();
    t.game.reward.k = g.at("reward").at("k").get<double>();
    t.game.reward.u = g.at("reward").at("u").get<int>();
    for (char c : j.at("actions").get<std::string>()) {
      switch (c) {
        case 'L': t.actions.push_back(RelativeAction::left); break;
        case 'S': t.actions.push_back(RelativeAction::straight); break;
        case 'R': t.actions.push_back(RelativeAction::right); break;
        default: throw ConfigError(std::string("trajectory: unknown action '") + c + "'");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("trajectory: ") + e.what());
  }
  t.game.validate();
  return t;
}

void save_trajectory(const std::filesystem::path& path, const Trajectory& t) {
  write_file(path, to_json(t).dump(2) + "\n");
}

Trajectory load_trajectory(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return trajectory_from_json(json::parse(text));
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::vector<ReplayFrame> replay_frames(const Trajectory& t) {
  GameState game = new_game(t.game);
  std::vector<ReplayFrame> frames;
  frames.push_back({render_ascii(game), 0, 0.0, StepEvent::moved});
  for (RelativeAction a : t.actions) {
    if (game.terminal()) throw UsageError("trajectory continues past the end of the game");
    const StepOutcome out = step(game, a);
    frames.push_back({render_ascii(game), game.steps(), game.cumulative_score(), out.event});
  }
  return frames;
}

}  // namespace wirehead
