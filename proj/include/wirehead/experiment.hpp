#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "wirehead/qlearn.hpp"
#include "wirehead/snake_env.hpp"

namespace wirehead {

struct ExperimentConfig {
  std::string label;
  // game.rng_seed is ignored; every episode draws its own spawn seed.
  GameConfig game;
  LearnParams learn;
  int episodes = 22000;
  int repeats = 20;
  int test_episodes = 100;
  std::uint64_t master_seed = 0;
  int curve_window = 100;

  void validate() const;
  bool operator==(const ExperimentConfig&) const = default;
};

// Baseline (k = u = 0), mild drug (k = 1.5, u = 4), strong drug (k = 6, u = 8)
// on an 8x8 grid with L0 = 4, r_c = 20, gamma = 0.9, epsilon0 = 0.99.
std::vector<ExperimentConfig> builtin_experiments();

struct CurvePoint {
  int bin_start_episode = 0;
  double mean_return = 0.0;
  double std_return = 0.0;
};

struct TestEpisode {
  double episode_return = 0.0;
  int seeds = 0;
  int drugs = 0;
  int steps = 0;
};

struct Consumption {
  long seeds = 0;
  long drugs = 0;
};

struct RunArtifacts {
  ExperimentConfig config;
  // Across repeats: mean and sample std of each repeat's mean return in the bin.
  std::vector<CurvePoint> training_curve;
  // training_returns[repeat][episode]
  std::vector<std::vector<double>> training_returns;
  // test[repeat][episode]
  std::vector<std::vector<TestEpisode>> test;
  std::vector<Consumption> consumption;
  std::vector<QTable> tables;

  // Mean training return of one repeat over its last `window` episodes.
  double final_window_mean(std::size_t repeat, int window) const;
  double mean_test_return(std::size_t repeat) const;
};

struct RunOptions {
  // 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
  // Called once per finished repeat, from the worker thread.
  std::function<void(int repeat)> on_repeat_done;
};

// Per repeat r: a fresh table trained for `episodes` episodes with the
// scheduled epsilon, then `test_episodes` greedy episodes without learning.
// Training draws from Rng(derive_seed(master_seed, r, 0)), testing from
// Rng(derive_seed(master_seed, r, 1)).
RunArtifacts run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

}  // namespace wirehead
