#include "wirehead/qlearn.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "wirehead/error.hpp"

namespace wirehead {

QTable::QTable() : rows_(kObservationKeyCount, ActionValues{}), present_(kObservationKeyCount, 0) {}

ActionValues QTable::values(std::uint32_t key) const {
  if (key >= kObservationKeyCount) throw UsageError("QTable: key out of range");
  return present_[key] ? rows_[key] : ActionValues{default_value, default_value, default_value};
}

ActionValues& QTable::row(std::uint32_t key) {
  if (key >= kObservationKeyCount) throw UsageError("QTable: key out of range");
  if (!present_[key]) {
    present_[key] = 1;
    rows_[key].fill(default_value);
    ++count_;
  }
  return rows_[key];
}

std::vector<std::uint32_t> QTable::keys() const {
  std::vector<std::uint32_t> out;
  out.reserve(count_);
  for (std::uint32_t k = 0; k < kObservationKeyCount; ++k) {
    if (present_[k]) out.push_back(k);
  }
  return out;
}

void QTable::scale(double factor) {
  for (std::uint32_t k = 0; k < kObservationKeyCount; ++k) {
    if (!present_[k]) continue;
    for (double& q : rows_[k]) q *= factor;
  }
}

void LearnParams::validate() const {
  auto unit = [](double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; };
  if (!unit(gamma)) throw ConfigError("learn.gamma must lie in [0, 1]");
  if (!(std::isfinite(nu) && nu > 0.0 && nu <= 1.0)) throw ConfigError("learn.nu must lie in (0, 1]");
  if (!unit(epsilon0) || !unit(epsilon_min)) throw ConfigError("learn.epsilon0 and learn.epsilon_min must lie in [0, 1]");
  if (epsilon_min > epsilon0) throw ConfigError("learn.epsilon_min must not exceed learn.epsilon0");
  if (!(std::isfinite(epsilon_decay) && epsilon_decay > 0.0 && epsilon_decay <= 1.0)) {
    throw ConfigError("learn.epsilon_decay must lie in (0, 1]");
  }
}

void q_update(QTable& table, const Observation& obs, RelativeAction action, double reward,
              const Observation& next_obs, bool terminal, const LearnParams& params) {
  if (!std::isfinite(reward)) throw NumericError("q_update: non-finite reward");
  double target = reward;
  if (!terminal) {
    const ActionValues next = table.values(next_obs);
    target += params.gamma * *std::max_element(next.begin(), next.end());
  }
  double& q = table.row(obs.key())[static_cast<std::size_t>(action)];
  q += params.nu * (target - q);
}

RelativeAction select_action(const QTable& table, const Observation& obs, double epsilon, Rng& rng) {
  if (epsilon > 0.0 && rng.uniform01() < epsilon) {
    return static_cast<RelativeAction>(rng.uniform_index(kNumActions));
  }
  const ActionValues q = table.values(obs);
  const double best = *std::max_element(q.begin(), q.end());
  std::array<int, kNumActions> ties{};
  int n_ties = 0;
  for (int a = 0; a < kNumActions; ++a) {
    if (q[static_cast<std::size_t>(a)] == best) ties[static_cast<std::size_t>(n_ties++)] = a;
  }
  if (n_ties == 1) return static_cast<RelativeAction>(ties[0]);
  return static_cast<RelativeAction>(ties[rng.uniform_index(static_cast<std::uint64_t>(n_ties))]);
}

double epsilon_at(std::uint64_t episode, const LearnParams& params) {
  const double decayed = params.epsilon0 * std::pow(params.epsilon_decay, static_cast<double>(episode));
  return std::max(params.epsilon_min, decayed);
}

EpisodeStats run_episode(const GameConfig& config, QTable& table, const LearnParams& params,
                         double epsilon, Rng& rng, bool learn, ActionTrace* trace) {
  GameState game = new_game(config);
  Observation obs = observe(game);
  EpisodeStats stats;
  while (!game.terminal()) {
    const RelativeAction action = select_action(table, obs, epsilon, rng);
    if (trace) trace->push_back(action);
    const StepOutcome out = step(game, action);
    const Observation next = observe(game);
    if (learn) q_update(table, obs, action, out.reward, next, out.terminal, params);
    stats.episode_return += out.reward;
    stats.end_event = out.event;
    obs = next;
  }
  stats.steps = game.steps();
  stats.seeds_eaten = game.seeds_eaten();
  stats.drugs_eaten = game.drugs_eaten();
  stats.final_length = game.length();
  return stats;
}

namespace {

constexpr std::string_view kMagic = "wirehead-qtable";
constexpr int kFormatVersion = 1;

void append_double(std::string& out, double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  out.append(buf, res.ptr);
}

}  // namespace

void write_qtable(std::ostream& os, const QTable& table) {
  std::string text;
  text.append(kMagic).append(" ").append(std::to_string(kFormatVersion)).append("\n");
  for (std::uint32_t key : table.keys()) {
    text.append(std::to_string(key));
    for (double q : table.values(key)) {
      text.push_back(' ');
      append_double(text, q);
    }
    text.push_back('\n');
  }
  os << text;
}

QTable read_qtable(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("q-table snapshot: empty input");
  {
    std::istringstream header(line);
    std::string magic;
    int version = 0;
    header >> magic >> version;
    if (magic != kMagic || version != kFormatVersion) throw ConfigError("q-table snapshot: bad header '" + line + "'");
  }
  QTable table;
  int line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    auto fail = [&] { throw ConfigError("q-table snapshot: malformed record on line " + std::to_string(line_no)); };
    std::uint32_t key = 0;
    auto r = std::from_chars(p, end, key);
    if (r.ec != std::errc() || key >= kObservationKeyCount) fail();
    p = r.ptr;
    ActionValues values{};
    for (double& q : values) {
      if (p == end || *p != ' ') fail();
      ++p;
      auto rd = std::from_chars(p, end, q);
      if (rd.ec != std::errc()) fail();
      p = rd.ptr;
    }
    if (p != end || table.contains(key)) fail();
    table.row(key) = values;
  }
  return table;
}

void save_qtable(const std::string& path, const QTable& table) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError(path, "cannot open for writing");
  write_qtable(os, table);
  if (!os) throw IoError(path, "write failed");
}

QTable load_qtable(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError(path, "cannot open for reading");
  return read_qtable(is);
}

}  // namespace wirehead
