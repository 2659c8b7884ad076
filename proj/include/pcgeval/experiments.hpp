#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pcgeval/config.hpp"
#include "pcgeval/level.hpp"
#include "pcgeval/maze.hpp"
#include "pcgeval/metrics.hpp"
#include "pcgeval/stats.hpp"

namespace pcgeval {

// One line of samples.csv:
// experiment,domain,seed,size_w,size_h,metric,repr,id_a,id_b,value
struct CsvRow {
  std::string experiment;
  Domain domain = Domain::Maze;
  std::uint64_t seed = 0;
  int size_w = 0;
  int size_h = 0;
  Metric metric = Metric::CD;
  std::optional<Repr> repr;
  std::size_t id_a = 0;
  std::optional<std::size_t> id_b;
  double value = 0.0;
};

std::string csv_header();
std::string format_row(const CsvRow& row);
std::string rows_to_csv(const std::vector<CsvRow>& rows);
// Shortest decimal text that reads back as the same double.
std::string format_value(double v);

struct Exclusion {
  std::string experiment;
  Domain domain = Domain::Maze;
  std::uint64_t seed = 0;
  LevelSize size;
  std::size_t attempt = 0;
  std::string reason;
};

// What the diversity metrics need from a solved level.
struct LevelTrace {
  std::vector<int> actions;
  std::vector<Pos> path;
};

struct TraceOutcome {
  std::optional<LevelTrace> trace;
  std::string reason;  // why the level was rejected, empty when solved
};

TraceOutcome trace_level(const TileGrid& grid, std::size_t budget);

// Generator for the configured domain at `size`, level `index` of stream `seed`.
TileGrid generate_level(const ExperimentConfig& cfg, LevelSize size, std::uint64_t seed, std::size_t index);

struct Corpus {
  std::vector<TileGrid> levels;
  std::vector<LevelTrace> traces;
  std::vector<Exclusion> exclusions;
};

// Generates until cfg.n_levels solvable levels are collected or
// n_levels * max_attempts_factor attempts are spent. Rejected attempts are
// recorded as exclusions.
Corpus generate_solvable_corpus(const ExperimentConfig& cfg, LevelSize size, std::uint64_t seed,
                                std::string_view experiment);

struct PairwiseOptions {
  std::vector<Repr> reprs;
  bool astar = true;
  bool manhattan = false;
  unsigned threads = 1;
};

// All i < j samples, grouped by metric (CD per repr in the given order, then
// A* diversity, then Manhattan diversity) and lexicographic within a group.
std::vector<MetricSample> pairwise_samples(std::span<const TileGrid> levels, std::span<const LevelTrace> traces,
                                           const PairwiseOptions& opts);

struct SummaryRow {
  LevelSize size;
  Metric metric = Metric::CD;
  std::optional<Repr> repr;
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;
};

struct OrderingMatrix {
  std::uint64_t seed = 0;
  Metric metric = Metric::AStarDifficulty;
  Alternative alternative = Alternative::Less;
  std::array<double, 5> means{};
  // p_values[i][j] tests class i+1 against class j+1; the diagonal is unused.
  std::array<std::array<double, 5>, 5> p_values{};
};

struct ClassLabel {
  std::uint64_t seed = 0;
  std::size_t id = 0;
  int class_label = 0;
};

struct ExperimentResult {
  ExperimentKind kind = ExperimentKind::DiversityDistribution;
  std::vector<CsvRow> rows;
  std::vector<Exclusion> exclusions;
  std::vector<SummaryRow> summary;
  std::vector<OrderingMatrix> matrices;
  std::vector<ClassLabel> classes;
  std::optional<StatReport> correlation;
};

ExperimentResult run_diversity_distribution(const ExperimentConfig& cfg);
ExperimentResult run_size_sweep(const ExperimentConfig& cfg);
ExperimentResult run_visual_variation(const ExperimentConfig& cfg);
ExperimentResult run_difficulty_ordering(const ExperimentConfig& cfg);
ExperimentResult run_difficulty_correlation(const ExperimentConfig& cfg);
ExperimentResult run_experiment(const ExperimentConfig& cfg);

struct LevelScores {
  double difficulty = 0.0;
  double leniency = 0.0;
};

// A* difficulty and leniency of one solvable level (either domain).
LevelScores score_level(const TileGrid& grid, std::size_t budget);

// Pearson correlation between per-level A* difficulty (x) and leniency (y).
// Throws DegenerateInput when either metric is constant over the corpus.
StatReport difficulty_leniency_correlation(std::span<const LevelScores> scores);

// Writes samples.csv and exclusions.csv, plus summary.csv, matrix.csv,
// classes.csv or correlation.csv when the experiment produces them, into
// cfg.output_dir (created if needed). Returns the paths written.
std::vector<std::string> write_experiment_outputs(const ExperimentResult& result, const ExperimentConfig& cfg);

unsigned effective_threads(const ExperimentConfig& cfg);

}  // namespace pcgeval
