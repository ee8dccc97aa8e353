#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "wirehead/experiment.hpp"

namespace wirehead {

// Shortest round-trip decimal, '.' separator, independent of the C locale.
std::string format_number(double x);

nlohmann::json to_json(const ExperimentConfig& config);
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

std::string training_curve_csv(const RunArtifacts& art);
std::string test_scores_csv(const RunArtifacts& art);
std::string consumption_csv(const RunArtifacts& art);

inline constexpr const char* kTrainingCurveFile = "training_curve.csv";
inline constexpr const char* kTestScoresFile = "test_scores.csv";
inline constexpr const char* kConsumptionFile = "consumption.csv";
inline constexpr const char* kConfigFile = "config.json";

// Writes the four artifact files into out_dir (created if missing).
std::vector<std::filesystem::path> emit_csv(const RunArtifacts& art, const std::filesystem::path& out_dir);

// One snapshot per repeat under out_dir/qtables/.
std::vector<std::filesystem::path> emit_qtables(const RunArtifacts& art, const std::filesystem::path& out_dir);

// Parsed CSV body: header names and rows of numeric cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
CsvTable parse_csv(const std::string& text);

struct ChartSet {
  std::string training_curves;
  std::string test_scores;
  std::string consumption;
};

// SVG views of one to three experiments: overlaid training curves, test score
// means with spread, and seed-vs-drug consumption bars. Every plotted value is
// also carried as a data-* attribute in the same format as the CSVs.
ChartSet render_charts(const std::vector<const RunArtifacts*>& experiments);

inline constexpr const char* kTrainingChartFile = "training_curves.svg";
inline constexpr const char* kScoresChartFile = "test_scores.svg";
inline constexpr const char* kConsumptionChartFile = "consumption.svg";

std::vector<std::filesystem::path> emit_charts(const std::vector<const RunArtifacts*>& experiments,
                                               const std::filesystem::path& out_dir);

void write_file(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

}  // namespace wirehead
