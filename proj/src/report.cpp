#include "wirehead/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <locale>
#include <sstream>

#include "wirehead/error.hpp"
#include "wirehead/stats.hpp"

namespace wirehead {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

json to_json(const ExperimentConfig& c) {
  return json{
      {"label", c.label},
      {"game",
       {{"n", c.game.n},
        {"initial_length", c.game.initial_length},
        {"max_steps_since_food", c.game.max_steps_since_food},
        {"reward", {{"r_c", c.game.reward.r_c}, {"k", c.game.reward.k}, {"u", c.game.reward.u}}}}},
      {"learn",
       {{"gamma", c.learn.gamma},
        {"nu", c.learn.nu},
        {"epsilon0", c.learn.epsilon0},
        {"epsilon_min", c.learn.epsilon_min},
        {"epsilon_decay", c.learn.epsilon_decay}}},
      {"episodes", c.episodes},
      {"repeats", c.repeats},
      {"test_episodes", c.test_episodes},
      {"curve_window", c.curve_window},
      {"master_seed", c.master_seed},
  };
}

ExperimentConfig experiment_config_from_json(const json& j) {
  ExperimentConfig c;
  try {
    c.label = j.value("label", std::string("custom"));
    if (j.contains("game")) {
      const json& g = j.at("game");
      c.game.n = g.value("n", c.game.n);
      c.game.initial_length = g.value("initial_length", c.game.initial_length);
      c.game.max_steps_since_food = g.value("max_steps_since_food", 2 * c.game.n * c.game.n);
      if (g.contains("reward")) {
        const json& r = g.at("reward");
        c.game.reward.r_c = r.value("r_c", c.game.reward.r_c);
        c.game.reward.k = r.value("k", c.game.reward.k);
        c.game.reward.u = r.value("u", c.game.reward.u);
      }
    }
    if (j.contains("learn")) {
      const json& l = j.at("learn");
      c.learn.gamma = l.value("gamma", c.learn.gamma);
      c.learn.nu = l.value("nu", c.learn.nu);
      c.learn.epsilon0 = l.value("epsilon0", c.learn.epsilon0);
      c.learn.epsilon_min = l.value("epsilon_min", c.learn.epsilon_min);
      c.learn.epsilon_decay = l.value("epsilon_decay", c.learn.epsilon_decay);
    }
    c.episodes = j.value("episodes", c.episodes);
    c.repeats = j.value("repeats", c.repeats);
    c.test_episodes = j.value("test_episodes", c.test_episodes);
    c.curve_window = j.value("curve_window", c.curve_window);
    c.master_seed = j.value("master_seed", c.master_seed);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("experiment config: ") + e.what());
  }
  c.validate();
  return c;
}

ExperimentConfig load_experiment_config(const fs::path& path) {
  const std::string text = read_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return experiment_config_from_json(j);
}

std::string training_curve_csv(const RunArtifacts& art) {
  std::string out = "bin_start_episode,mean_return,std_return\n";
  for (const CurvePoint& p : art.training_curve) {
    out += std::to_string(p.bin_start_episode) + "," + format_number(p.mean_return) + "," +
           format_number(p.std_return) + "\n";
  }
  return out;
}

std::string test_scores_csv(const RunArtifacts& art) {
  std::string out = "repeat,episode,return\n";
  for (std::size_t r = 0; r < art.test.size(); ++r) {
    for (std::size_t e = 0; e < art.test[r].size(); ++e) {
      out += std::to_string(r) + "," + std::to_string(e) + "," + format_number(art.test[r][e].episode_return) + "\n";
    }
  }
  return out;
}

std::string consumption_csv(const RunArtifacts& art) {
  std::string out = "repeat,seeds,drugs\n";
  for (std::size_t r = 0; r < art.consumption.size(); ++r) {
    out += std::to_string(r) + "," + std::to_string(art.consumption[r].seeds) + "," +
           std::to_string(art.consumption[r].drugs) + "\n";
  }
  return out;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError(path.string(), "cannot open for writing");
  os.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!os) throw IoError(path.string(), "write failed");
}

std::string read_file(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError(path.string(), "cannot open for reading");
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

namespace {

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError(dir.string(), ec.message());
}

}  // namespace

std::vector<fs::path> emit_csv(const RunArtifacts& art, const fs::path& out_dir) {
  ensure_dir(out_dir);
  std::vector<fs::path> written = {out_dir / kTrainingCurveFile, out_dir / kTestScoresFile,
                                   out_dir / kConsumptionFile, out_dir / kConfigFile};
  write_file(written[0], training_curve_csv(art));
  write_file(written[1], test_scores_csv(art));
  write_file(written[2], consumption_csv(art));
  write_file(written[3], to_json(art.config).dump(2) + "\n");
  return written;
}

std::vector<fs::path> emit_qtables(const RunArtifacts& art, const fs::path& out_dir) {
  const fs::path dir = out_dir / "qtables";
  ensure_dir(dir);
  std::vector<fs::path> written;
  for (std::size_t r = 0; r < art.tables.size(); ++r) {
    char name[32];
    std::snprintf(name, sizeof name, "repeat_%02zu.qtable", r);
    written.push_back(dir / name);
    save_qtable(written.back().string(), art.tables[r]);
  }
  return written;
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream is(text);
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
      if (i == s.size() || s[i] == ',') {
        cells.push_back(s.substr(start, i - start));
        start = i + 1;
      }
    }
    return cells;
  };
  if (!std::getline(is, line)) return table;
  table.header = split(line);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    for (const std::string& cell : split(line)) {
      double v = 0.0;
      const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
        throw ConfigError("csv: non-numeric cell '" + cell + "'");
      }
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

// ---------------------------------------------------------------------------
// SVG

namespace {

constexpr double kWidth = 760;
constexpr double kHeight = 440;
constexpr double kLeft = 70;
constexpr double kRight = 180;
constexpr double kTop = 40;
constexpr double kBottom = 60;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  double step = 0.2;
};

// Rounded axis covering [lo, hi] with roughly `ticks` divisions.
Axis nice_axis(double lo, double hi, int ticks = 5) {
  if (!(hi > lo)) hi = lo + 1.0;
  const double raw = (hi - lo) / ticks;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
    step = m * mag;
    if (raw <= step) break;
  }
  return {std::floor(lo / step) * step, std::ceil(hi / step) * step, step};
}

std::string fmt2(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

class Canvas {
 public:
  Canvas(const std::string& title, const std::string& x_label, const std::string& y_label, Axis x, Axis y)
      : x_(x), y_(y) {
    svg_.imbue(std::locale::classic());
    svg_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
         << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg_ << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg_ << "<text x=\"" << fmt2(kLeft + plot_w() / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
         << escape(title) << "</text>\n";
    for (double v = y.lo; v <= y.hi + y.step * 1e-9; v += y.step) {
      const double py = py_of(v);
      svg_ << "<line x1=\"" << kLeft << "\" y1=\"" << fmt2(py) << "\" x2=\"" << fmt2(kLeft + plot_w()) << "\" y2=\""
           << fmt2(py) << "\" stroke=\"#e0e0e0\"/>\n";
      svg_ << "<text x=\"" << kLeft - 6 << "\" y=\"" << fmt2(py + 4) << "\" text-anchor=\"end\">" << tick_label(v)
           << "</text>\n";
    }
    svg_ << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << fmt2(kTop + plot_h())
         << "\" stroke=\"black\"/>\n";
    svg_ << "<line x1=\"" << kLeft << "\" y1=\"" << fmt2(kTop + plot_h()) << "\" x2=\"" << fmt2(kLeft + plot_w())
         << "\" y2=\"" << fmt2(kTop + plot_h()) << "\" stroke=\"black\"/>\n";
    svg_ << "<text x=\"" << fmt2(kLeft + plot_w() / 2) << "\" y=\"" << kHeight - 15
         << "\" text-anchor=\"middle\">" << escape(x_label) << "</text>\n";
    svg_ << "<text transform=\"translate(18," << fmt2(kTop + plot_h() / 2)
         << ") rotate(-90)\" text-anchor=\"middle\">" << escape(y_label) << "</text>\n";
  }

  static double plot_w() { return kWidth - kLeft - kRight; }
  static double plot_h() { return kHeight - kTop - kBottom; }
  double px_of(double v) const { return kLeft + (v - x_.lo) / (x_.hi - x_.lo) * plot_w(); }
  double py_of(double v) const { return kTop + plot_h() - (v - y_.lo) / (y_.hi - y_.lo) * plot_h(); }

  void x_ticks(const Axis& x) {
    for (double v = x.lo; v <= x.hi + x.step * 1e-9; v += x.step) {
      svg_ << "<text x=\"" << fmt2(px_of(v)) << "\" y=\"" << fmt2(kTop + plot_h() + 16)
           << "\" text-anchor=\"middle\">" << tick_label(v) << "</text>\n";
    }
  }

  void x_label_at(double px, const std::string& text) {
    svg_ << "<text x=\"" << fmt2(px) << "\" y=\"" << fmt2(kTop + plot_h() + 16) << "\" text-anchor=\"middle\">"
         << escape(text) << "</text>\n";
  }

  void legend(std::size_t index, const std::string& label, const char* color) {
    const double y = kTop + 10 + 20.0 * static_cast<double>(index);
    const double x = kWidth - kRight + 15;
    svg_ << "<rect x=\"" << x << "\" y=\"" << fmt2(y - 9) << "\" width=\"12\" height=\"12\" fill=\"" << color
         << "\"/>\n";
    svg_ << "<text x=\"" << x + 18 << "\" y=\"" << fmt2(y + 2) << "\">" << escape(label) << "</text>\n";
  }

  std::ostringstream& raw() { return svg_; }

  std::string finish() {
    svg_ << "</svg>\n";
    return svg_.str();
  }

 private:
  static std::string tick_label(double v) {
    if (std::abs(v) < 1e-12) v = 0.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
  }

  Axis x_;
  Axis y_;
  std::ostringstream svg_;
};

std::vector<double> test_returns(const RunArtifacts& art) {
  std::vector<double> out;
  for (const auto& rep : art.test) {
    for (const TestEpisode& e : rep) out.push_back(e.episode_return);
  }
  return out;
}

std::string training_chart(const std::vector<const RunArtifacts*>& exps) {
  double y_lo = 0.0, y_hi = 1.0;
  int x_hi = 1;
  for (const RunArtifacts* a : exps) {
    for (const CurvePoint& p : a->training_curve) {
      y_lo = std::min(y_lo, p.mean_return - p.std_return);
      y_hi = std::max(y_hi, p.mean_return + p.std_return);
      x_hi = std::max(x_hi, p.bin_start_episode);
    }
  }
  const Axis xa = nice_axis(0.0, x_hi);
  const Axis ya = nice_axis(y_lo, y_hi);
  Canvas cv("Training return (windowed mean across repeats)", "episode", "return", xa, ya);
  cv.x_ticks(xa);
  for (std::size_t i = 0; i < exps.size(); ++i) {
    const RunArtifacts& a = *exps[i];
    const char* color = kPalette[i % 4];
    std::string band_top, band_bottom, line, data;
    for (const CurvePoint& p : a.training_curve) {
      const double px = cv.px_of(p.bin_start_episode);
      band_top += fmt2(px) + "," + fmt2(cv.py_of(p.mean_return + p.std_return)) + " ";
      line += fmt2(px) + "," + fmt2(cv.py_of(p.mean_return)) + " ";
      data += std::to_string(p.bin_start_episode) + ":" + format_number(p.mean_return) + ":" +
              format_number(p.std_return) + " ";
    }
    for (auto it = a.training_curve.rbegin(); it != a.training_curve.rend(); ++it) {
      band_bottom += fmt2(cv.px_of(it->bin_start_episode)) + "," + fmt2(cv.py_of(it->mean_return - it->std_return)) + " ";
    }
    if (!data.empty()) data.pop_back();
    auto& s = cv.raw();
    s << "<g class=\"series\" data-label=\"" << escape(a.config.label) << "\" data-points=\"" << data << "\">\n";
    s << "<polygon points=\"" << band_top << band_bottom << "\" fill=\"" << color
      << "\" fill-opacity=\"0.15\" stroke=\"none\"/>\n";
    if (a.training_curve.size() == 1) {
      s << "<circle cx=\"" << fmt2(cv.px_of(a.training_curve[0].bin_start_episode)) << "\" cy=\""
        << fmt2(cv.py_of(a.training_curve[0].mean_return)) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    } else {
      s << "<polyline points=\"" << line << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
    }
    s << "</g>\n";
    cv.legend(i, a.config.label, color);
  }
  return cv.finish();
}

// Bars with +-1 std whiskers. groups[g][b] = (mean, std); bar labels per b.
struct Bar {
  double mean = 0.0;
  double std = 0.0;
};

std::string bar_chart(const std::string& title, const std::string& y_label,
                      const std::vector<std::string>& group_labels, const std::vector<std::vector<Bar>>& groups,
                      const std::vector<std::string>& bar_labels, const std::string& data_kind,
                      const std::vector<std::vector<double>>& dots) {
  double y_hi = 1.0;
  double y_lo = 0.0;
  for (const auto& g : groups) {
    for (const Bar& b : g) {
      y_hi = std::max(y_hi, b.mean + b.std);
      y_lo = std::min(y_lo, b.mean - b.std);
    }
  }
  for (const auto& d : dots) {
    for (double v : d) {
      y_hi = std::max(y_hi, v);
      y_lo = std::min(y_lo, v);
    }
  }
  const Axis ya = nice_axis(y_lo, y_hi);
  const Axis xa{0.0, static_cast<double>(groups.size()), 1.0};
  Canvas cv(title, "experiment", y_label, xa, ya);
  const std::size_t per_group = bar_labels.size();
  const double slot = 1.0 / static_cast<double>(per_group + 1);
  auto& s = cv.raw();
  for (std::size_t g = 0; g < groups.size(); ++g) {
    cv.x_label_at(cv.px_of(static_cast<double>(g) + 0.5), group_labels[g]);
    for (std::size_t b = 0; b < per_group; ++b) {
      const Bar& bar = groups[g][b];
      const double x0 = cv.px_of(static_cast<double>(g) + slot * (static_cast<double>(b) + 0.5));
      const double x1 = cv.px_of(static_cast<double>(g) + slot * (static_cast<double>(b) + 1.5));
      const double cx = (x0 + x1) / 2;
      const double y0 = cv.py_of(0.0);
      const double ym = cv.py_of(bar.mean);
      const char* color = kPalette[per_group == 1 ? g % 4 : b % 4];
      s << "<g class=\"bar\" data-kind=\"" << data_kind << "\" data-group=\"" << escape(group_labels[g])
        << "\" data-bar=\"" << escape(bar_labels[b]) << "\" data-mean=\"" << format_number(bar.mean)
        << "\" data-std=\"" << format_number(bar.std) << "\">\n";
      s << "<rect x=\"" << fmt2(x0) << "\" y=\"" << fmt2(std::min(y0, ym)) << "\" width=\"" << fmt2(x1 - x0)
        << "\" height=\"" << fmt2(std::abs(y0 - ym)) << "\" fill=\"" << color << "\" fill-opacity=\"0.75\"/>\n";
      s << "<line x1=\"" << fmt2(cx) << "\" y1=\"" << fmt2(cv.py_of(bar.mean - bar.std)) << "\" x2=\"" << fmt2(cx)
        << "\" y2=\"" << fmt2(cv.py_of(bar.mean + bar.std)) << "\" stroke=\"black\"/>\n";
      s << "</g>\n";
    }
    if (g < dots.size()) {
      const double cx = cv.px_of(static_cast<double>(g) + 0.5);
      for (double v : dots[g]) {
        s << "<circle cx=\"" << fmt2(cx) << "\" cy=\"" << fmt2(cv.py_of(v)) << "\" r=\"2\" fill=\"black\""
          << " fill-opacity=\"0.5\" data-value=\"" << format_number(v) << "\"/>\n";
      }
    }
  }
  if (per_group > 1) {
    for (std::size_t b = 0; b < per_group; ++b) cv.legend(b, bar_labels[b], kPalette[b % 4]);
  }
  return cv.finish();
}

}  // namespace

ChartSet render_charts(const std::vector<const RunArtifacts*>& exps) {
  if (exps.empty()) throw UsageError("render_charts: no experiments");
  ChartSet out;
  out.training_curves = training_chart(exps);

  std::vector<std::string> labels;
  std::vector<std::vector<Bar>> score_bars, consumption_bars;
  std::vector<std::vector<double>> repeat_means;
  for (const RunArtifacts* a : exps) {
    labels.push_back(a->config.label);
    const std::vector<double> returns = test_returns(*a);
    score_bars.push_back({{stats::mean(returns), stats::stddev(returns)}});
    std::vector<double> means;
    for (std::size_t r = 0; r < a->test.size(); ++r) means.push_back(a->mean_test_return(r));
    repeat_means.push_back(std::move(means));
    std::vector<double> seeds, drugs;
    for (const Consumption& c : a->consumption) {
      seeds.push_back(static_cast<double>(c.seeds));
      drugs.push_back(static_cast<double>(c.drugs));
    }
    consumption_bars.push_back({{stats::mean(seeds), stats::stddev(seeds)}, {stats::mean(drugs), stats::stddev(drugs)}});
  }
  out.test_scores = bar_chart("Test-time return (all episodes; dots: per-repeat means)", "return", labels, score_bars,
                              {"return"}, "test_return", repeat_means);
  out.consumption = bar_chart("Test-time consumption per repeat", "items eaten", labels, consumption_bars,
                              {"seeds", "drugs"}, "consumption", {});
  return out;
}

std::vector<fs::path> emit_charts(const std::vector<const RunArtifacts*>& exps, const fs::path& out_dir) {
  ensure_dir(out_dir);
  const ChartSet charts = render_charts(exps);
  std::vector<fs::path> written = {out_dir / kTrainingChartFile, out_dir / kScoresChartFile,
                                   out_dir / kConsumptionChartFile};
  write_file(written[0], charts.training_curves);
  write_file(written[1], charts.test_scores);
  write_file(written[2], charts.consumption);
  return written;
}

}  // namespace wirehead
