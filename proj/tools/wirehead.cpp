// Command-line front end: training runs, evaluation of stored Q-tables, the
// closed-form condition report, the value-iteration oracle sweep, trajectory
// replay and the chain TD simulation.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "wirehead/analysis.hpp"
#include "wirehead/error.hpp"
#include "wirehead/experiment.hpp"
#include "wirehead/qlearn.hpp"
#include "wirehead/report.hpp"
#include "wirehead/stats.hpp"
#include "wirehead/tdrl.hpp"
#include "wirehead/trajectory.hpp"

namespace fs = std::filesystem;
using namespace wirehead;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitIo = 4;

std::string default_out_dir() {
  if (const char* env = std::getenv("WIREHEAD_OUT"); env && *env) return env;
  return "results";
}

struct TrainArgs {
  std::string experiment = "all";
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out = default_out_dir();
  int episodes = -1;
  int repeats = -1;
  int test_episodes = -1;
  unsigned threads = 0;
  bool quiet = false;
};

int cmd_train(const TrainArgs& a) {
  std::vector<ExperimentConfig> configs;
  if (!a.config_path.empty()) {
    configs.push_back(load_experiment_config(a.config_path));
  } else {
    const auto all = builtin_experiments();
    if (a.experiment == "all") {
      configs = all;
    } else {
      configs.push_back(all.at(static_cast<std::size_t>(std::stoi(a.experiment) - 1)));
    }
    for (auto& c : configs) c.master_seed = a.seed;
  }
  for (auto& c : configs) {
    if (a.episodes != -1) c.episodes = a.episodes;
    if (a.repeats != -1) c.repeats = a.repeats;
    if (a.test_episodes != -1) c.test_episodes = a.test_episodes;
    c.validate();
  }

  std::vector<RunArtifacts> results;
  for (const auto& c : configs) {
    if (!a.quiet) std::cerr << "training " << c.label << ": " << c.repeats << " x " << c.episodes << " episodes\n";
    RunOptions opts;
    opts.threads = a.threads;
    const auto t0 = std::chrono::steady_clock::now();
    results.push_back(run_experiment(c, opts));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const RunArtifacts& art = results.back();
    const fs::path dir = fs::path(a.out) / c.label;
    emit_csv(art, dir);
    emit_qtables(art, dir);

    std::vector<double> means;
    double seeds = 0, drugs = 0;
    for (std::size_t r = 0; r < art.test.size(); ++r) {
      means.push_back(art.mean_test_return(r));
      seeds += static_cast<double>(art.consumption[r].seeds);
      drugs += static_cast<double>(art.consumption[r].drugs);
    }
    const double per_ep = static_cast<double>(c.repeats) * c.test_episodes;
    std::printf("%-14s test return %8.2f (sd %.2f)  seeds/ep %.2f  drugs/ep %.2f  [%s, %.1fs]\n", c.label.c_str(),
                stats::mean(means), stats::stddev(means), seeds / per_ep, drugs / per_ep, dir.string().c_str(), secs);
  }
  std::vector<const RunArtifacts*> ptrs;
  for (const auto& r : results) ptrs.push_back(&r);
  emit_charts(ptrs, a.out);
  return kExitOk;
}

struct EvaluateArgs {
  std::string qtable;
  std::string config_path;
  double k = 0.0;
  int u = 0;
  double r_c = 20.0;
  int n = 8;
  int l0 = 4;
  int episodes = 100;
  std::uint64_t seed = 0;
  std::string record;
};

int cmd_evaluate(const EvaluateArgs& a) {
  QTable table = load_qtable(a.qtable);
  GameConfig game;
  LearnParams learn;
  if (!a.config_path.empty()) {
    const ExperimentConfig c = load_experiment_config(a.config_path);
    game = c.game;
    learn = c.learn;
  } else {
    game = make_game_config(a.n, a.l0, RewardParams{a.r_c, a.k, a.u}, 0);
  }
  if (a.episodes < 1) throw ConfigError("--episodes must be >= 1");
  game.validate();

  Rng rng(derive_seed(a.seed, 0, 1));
  std::vector<double> returns;
  long seeds = 0, drugs = 0;
  for (int ep = 0; ep < a.episodes; ++ep) {
    game.rng_seed = rng.next_u64();
    ActionTrace trace;
    const EpisodeStats st = run_episode(game, table, learn, 0.0, rng, false, ep == 0 ? &trace : nullptr);
    if (ep == 0 && !a.record.empty()) save_trajectory(a.record, Trajectory{game, trace});
    returns.push_back(st.episode_return);
    seeds += st.seeds_eaten;
    drugs += st.drugs_eaten;
  }
  std::printf("episodes %d  mean return %.3f (sd %.3f)  seeds/ep %.3f  drugs/ep %.3f\n", a.episodes,
              stats::mean(returns), stats::stddev(returns), static_cast<double>(seeds) / a.episodes,
              static_cast<double>(drugs) / a.episodes);
  return kExitOk;
}

struct ConditionArgs {
  double k = 6.0;
  double u = 8.0;
  double r_c = 20.0;
  double gamma = 0.9;
  int n = 8;
  int l0 = 4;
};

int cmd_analyze(const ConditionArgs& a) {
  analysis::ConditionInputs in{a.k, a.u, a.r_c, a.gamma, a.n, a.l0};
  in.validate();
  const bool sufficient = analysis::sufficient_condition(in);
  std::printf("inputs: k=%g u=%g r_c=%g gamma=%g n=%d L0=%d\n", a.k, a.u, a.r_c, a.gamma, a.n, a.l0);
  std::printf("v_max = r_c*(n^2 - L0) = %g\n", analysis::v_max(a.r_c, a.n, a.l0));
  std::printf("sufficient condition (k-1)/gamma > n^2 - L0: %s  (%.6g vs %d)\n", sufficient ? "true" : "false",
              (a.k - 1.0) / a.gamma, a.n * a.n - a.l0);
  if (a.u > 0.0) {
    std::printf("growth condition k/u < 1: %s  (%.6g)\n", analysis::growth_condition(a.k, a.u) ? "true" : "false",
                a.k / a.u);
  } else {
    std::printf("growth condition k/u < 1: undefined (u = 0)\n");
  }
  std::printf("minimal integer k for the sufficient condition: %d\n",
              analysis::minimal_k_for_sufficient(a.gamma, a.n, a.l0));
  return kExitOk;
}

int cmd_oracle(std::size_t samples, std::uint64_t seed, double tolerance) {
  const auto res = analysis::oracle_sweep(samples, seed, tolerance);
  std::printf("samples %zu  agreements %zu  drug-preferred %zu  mismatches %zu\n", res.samples, res.agreements,
              res.drug_preferred, res.mismatches.size());
  for (const auto& m : res.mismatches) {
    std::printf("  mismatch: k=%.17g r_c=%.17g gamma=%.17g v_g=%.17g l=%.17g\n", m.k, m.r_c, m.gamma, m.v_g, m.l);
  }
  return res.agreements == res.samples ? kExitOk : kExitFailure;
}

int cmd_replay(const std::string& path, double fps, bool clear) {
  const auto frames = replay_frames(load_trajectory(path));
  const auto delay = fps > 0.0 ? std::chrono::duration<double>(1.0 / fps) : std::chrono::duration<double>(0.0);
  for (const ReplayFrame& f : frames) {
    if (clear) std::cout << "\x1b[H\x1b[2J";
    std::cout << "step " << f.step << "  score " << f.score << "  " << to_string(f.event) << "\n" << f.board << "\n";
    std::cout.flush();
    if (delay.count() > 0.0) std::this_thread::sleep_for(delay);
  }
  return kExitOk;
}

struct TdrlArgs {
  double surge = 0.5;
  std::size_t trials = 5000;
  std::size_t states = 3;
  double nu = 0.1;
  double gamma = 0.9;
  std::string form = "both";
  std::string out;
};

int cmd_tdrl(const TdrlArgs& a) {
  if (a.states < 2) throw ConfigError("--states must be >= 2");
  std::vector<double> rewards(a.states, 0.0);
  rewards.back() = 1.0;
  const std::size_t drug = a.states - 1;
  tdrl::ChainMdp mdp(rewards, a.surge > 0.0 ? std::vector<std::size_t>{drug} : std::vector<std::size_t>{});
  tdrl::TdrlModel model(a.states, a.nu, a.gamma, a.surge,
                        a.form == "value" ? tdrl::DeltaForm::discount_value : tdrl::DeltaForm::discount_both);
  const auto hist = tdrl::simulate_trials(mdp, model, a.trials);
  if (!a.out.empty()) write_file(a.out, tdrl::value_history_csv(hist));
  std::printf("trials %zu  surge %g  final values:", a.trials, a.surge);
  for (double v : model.values) std::printf(" %.10g", v);
  std::printf("\nmax |delta| on the final trial: %.3g\n", hist.max_abs_last_delta());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wirehead: addiction experiments with Q-learning agents in a dual-edible Snake game"};
  app.require_subcommand(1);

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Train and test the built-in experiments or a config file");
  train_cmd->add_option("--experiment", train.experiment, "Built-in experiment: 1, 2, 3 or all")
      ->check(CLI::IsMember({"1", "2", "3", "all"}));
  train_cmd->add_option("--config", train.config_path, "Experiment config JSON (as written to config.json)")
      ->check(CLI::ExistingFile);
  train_cmd->add_option("--seed", train.seed, "Master seed for the built-in experiments");
  train_cmd->add_option("--out", train.out, "Output directory (default $WIREHEAD_OUT or ./results)");
  train_cmd->add_option("--episodes", train.episodes, "Override training episodes");
  train_cmd->add_option("--repeats", train.repeats, "Override independent repeats");
  train_cmd->add_option("--test-episodes", train.test_episodes, "Override test episodes per repeat");
  train_cmd->add_option("--threads", train.threads, "Worker threads (0 = hardware concurrency)");
  train_cmd->add_flag("--quiet", train.quiet, "No progress output");

  EvaluateArgs eval;
  auto* eval_cmd = app.add_subcommand("evaluate", "Run greedy test episodes from a Q-table snapshot");
  eval_cmd->add_option("--qtable", eval.qtable, "Q-table snapshot")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--config", eval.config_path, "Experiment config JSON for the game parameters")
      ->check(CLI::ExistingFile);
  eval_cmd->add_option("--k", eval.k, "Drug reward multiplier");
  eval_cmd->add_option("--u", eval.u, "Drug growth");
  eval_cmd->add_option("--r_c", eval.r_c, "Seed reward");
  eval_cmd->add_option("--n", eval.n, "Grid side");
  eval_cmd->add_option("--l0", eval.l0, "Initial snake length");
  eval_cmd->add_option("--episodes", eval.episodes, "Test episodes");
  eval_cmd->add_option("--seed", eval.seed, "Seed");
  eval_cmd->add_option("--record", eval.record, "Write the first episode as a trajectory JSON");

  ConditionArgs cond;
  auto* cond_cmd = app.add_subcommand("analyze-conditions", "Report the closed-form addiction conditions");
  cond_cmd->add_option("--k", cond.k, "Drug reward multiplier");
  cond_cmd->add_option("--u", cond.u, "Drug growth");
  cond_cmd->add_option("--r_c", cond.r_c, "Seed reward");
  cond_cmd->add_option("--gamma", cond.gamma, "Discount factor");
  cond_cmd->add_option("--n", cond.n, "Grid side");
  cond_cmd->add_option("--l0", cond.l0, "Initial snake length");

  std::size_t oracle_samples = 500;
  std::uint64_t oracle_seed = 1;
  double oracle_tol = 1e-10;
  auto* oracle_cmd = app.add_subcommand("oracle", "Check the preference formula against exact value iteration");
  oracle_cmd->add_option("--samples", oracle_samples, "Sampled parameterizations");
  oracle_cmd->add_option("--seed", oracle_seed, "Sampling seed");
  oracle_cmd->add_option("--tolerance", oracle_tol, "Value iteration tolerance");

  std::string replay_path;
  double replay_fps = 10.0;
  bool replay_clear = false;
  auto* replay_cmd = app.add_subcommand("replay", "Animate a recorded trajectory as ASCII frames");
  replay_cmd->add_option("--trajectory", replay_path, "Trajectory JSON from evaluate --record")
      ->required()
      ->check(CLI::ExistingFile);
  replay_cmd->add_option("--fps", replay_fps, "Frames per second (0 = no delay)");
  replay_cmd->add_flag("--clear", replay_clear, "Clear the terminal between frames");

  TdrlArgs td;
  auto* tdrl_cmd = app.add_subcommand("tdrl", "Chain TD simulation with a non-compensable drug surge");
  tdrl_cmd->add_option("--drug-surge", td.surge, "Surge magnitude D on entering the final state");
  tdrl_cmd->add_option("--trials", td.trials, "Start-to-terminal passes");
  tdrl_cmd->add_option("--states", td.states, "Chain length");
  tdrl_cmd->add_option("--nu", td.nu, "Learning rate");
  tdrl_cmd->add_option("--gamma", td.gamma, "Discount factor");
  tdrl_cmd->add_option("--form", td.form, "Reward-error form: both = gamma(R+V') - V, value = R + gamma V' - V")
      ->check(CLI::IsMember({"both", "value"}));
  tdrl_cmd->add_option("--out", td.out, "Write the value history CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*train_cmd) return cmd_train(train);
    if (*eval_cmd) return cmd_evaluate(eval);
    if (*cond_cmd) return cmd_analyze(cond);
    if (*oracle_cmd) return cmd_oracle(oracle_samples, oracle_seed, oracle_tol);
    if (*replay_cmd) return cmd_replay(replay_path, replay_fps, replay_clear);
    if (*tdrl_cmd) return cmd_tdrl(td);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
