#include "wirehead/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "wirehead/error.hpp"
#include "wirehead/rng.hpp"
#include "wirehead/stats.hpp"

namespace wirehead {

void ExperimentConfig::validate() const {
  game.validate();
  learn.validate();
  if (episodes < 1) throw ConfigError("episodes must be >= 1");
  if (repeats < 1) throw ConfigError("repeats must be >= 1");
  if (test_episodes < 1) throw ConfigError("test_episodes must be >= 1");
  if (curve_window < 1) throw ConfigError("curve_window must be >= 1");
}

std::vector<ExperimentConfig> builtin_experiments() {
  struct Variant {
    const char* label;
    double k;
    int u;
  };
  constexpr Variant variants[] = {
      {"e1_baseline", 0.0, 0},
      {"e2_k1.5_u4", 1.5, 4},
      {"e3_k6_u8", 6.0, 8},
  };
  std::vector<ExperimentConfig> out;
  for (const Variant& v : variants) {
    ExperimentConfig c;
    c.label = v.label;
    c.game = make_game_config(8, 4, RewardParams{20.0, v.k, v.u}, 0);
    c.learn = LearnParams{};
    c.learn.gamma = 0.9;
    c.learn.epsilon0 = 0.99;
    c.episodes = 22000;
    c.repeats = 20;
    c.test_episodes = 100;
    out.push_back(c);
  }
  return out;
}

double RunArtifacts::final_window_mean(std::size_t repeat, int window) const {
  const auto& returns = training_returns.at(repeat);
  const std::size_t w = std::min(returns.size(), static_cast<std::size_t>(std::max(window, 1)));
  return stats::mean(std::span<const double>(returns).last(w));
}

double RunArtifacts::mean_test_return(std::size_t repeat) const {
  const auto& eps = test.at(repeat);
  double sum = 0.0;
  for (const TestEpisode& e : eps) sum += e.episode_return;
  return eps.empty() ? 0.0 : sum / static_cast<double>(eps.size());
}

namespace {

struct RepeatResult {
  std::vector<double> training_returns;
  std::vector<TestEpisode> test;
  QTable table;
};

RepeatResult run_repeat(const ExperimentConfig& config, int repeat) {
  RepeatResult res;
  const auto r = static_cast<std::uint64_t>(repeat);
  Rng train_rng(derive_seed(config.master_seed, r, 0));
  GameConfig game = config.game;
  res.training_returns.reserve(static_cast<std::size_t>(config.episodes));
  for (int ep = 0; ep < config.episodes; ++ep) {
    game.rng_seed = train_rng.next_u64();
    const double eps = epsilon_at(static_cast<std::uint64_t>(ep), config.learn);
    const EpisodeStats st = run_episode(game, res.table, config.learn, eps, train_rng, true);
    res.training_returns.push_back(st.episode_return);
  }
  Rng test_rng(derive_seed(config.master_seed, r, 1));
  for (int ep = 0; ep < config.test_episodes; ++ep) {
    game.rng_seed = test_rng.next_u64();
    const EpisodeStats st = run_episode(game, res.table, config.learn, 0.0, test_rng, false);
    res.test.push_back({st.episode_return, st.seeds_eaten, st.drugs_eaten, st.steps});
  }
  return res;
}

}  // namespace

RunArtifacts run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  config.validate();
  const auto repeats = static_cast<std::size_t>(config.repeats);
  std::vector<RepeatResult> results(repeats);
  std::vector<std::exception_ptr> errors(repeats);

  unsigned threads = options.threads ? options.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(repeats));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r = next++; r < repeats; r = next++) {
      try {
        results[r] = run_repeat(config, static_cast<int>(r));
        if (options.on_repeat_done) options.on_repeat_done(static_cast<int>(r));
      } catch (...) {
        errors[r] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (std::size_t r = 0; r < repeats; ++r) {
    if (!errors[r]) continue;
    try {
      std::rethrow_exception(errors[r]);
    } catch (const std::exception& e) {
      throw std::runtime_error("experiment '" + config.label + "' repeat " + std::to_string(r) + " failed: " + e.what());
    }
  }

  RunArtifacts art;
  art.config = config;
  const int window = config.curve_window;
  for (int start = 0; start < config.episodes; start += window) {
    const int stop = std::min(config.episodes, start + window);
    std::vector<double> bin_means;
    for (const RepeatResult& res : results) {
      std::span<const double> bin(res.training_returns.data() + start, static_cast<std::size_t>(stop - start));
      bin_means.push_back(stats::mean(bin));
    }
    art.training_curve.push_back({start, stats::mean(bin_means), stats::stddev(bin_means)});
  }
  for (RepeatResult& res : results) {
    Consumption c;
    for (const TestEpisode& e : res.test) {
      c.seeds += e.seeds;
      c.drugs += e.drugs;
    }
    art.consumption.push_back(c);
    art.training_returns.push_back(std::move(res.training_returns));
    art.test.push_back(std::move(res.test));
    art.tables.push_back(std::move(res.table));
  }
  return art;
}

}  // namespace wirehead
