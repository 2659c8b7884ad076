#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pcgeval/astar.hpp"
#include "pcgeval/level.hpp"
#include "pcgeval/representations.hpp"

namespace pcgeval {

enum class ExperimentKind { DiversityDistribution, SizeSweep, VisualVariation, DifficultyOrdering, DifficultyCorrelation };

const char* experiment_name(ExperimentKind k);

struct LevelSize {
  int width = 20;
  int height = 20;
  bool operator==(const LevelSize&) const = default;
};

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::DiversityDistribution;
  Domain domain = Domain::Maze;
  std::vector<LevelSize> sizes{{20, 20}};
  int n_levels = 100;                            // solvable levels per seed
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  std::vector<Repr> reprs;                       // empty: every repr the domain admits
  std::string output_dir = "out";
  std::size_t budget = kDefaultBudget;
  double wall_prob = 0.3;                        // random mazes
  double gap_rate = 0.08;                        // platformer generator
  double enemy_rate = 0.08;
  double step_rate = 0.3;
  double brick_rate = 0.3;
  int n_variants = 30;                           // visual variation
  int per_class = 20;                            // difficulty ordering
  bool manhattan = false;                        // also emit Manhattan diversity
  int max_attempts_factor = 20;                  // generation attempts per wanted level
  unsigned threads = 0;                          // 0: all workers allowed
};

// Effective representations for the config's domain.
std::vector<Repr> effective_reprs(const ExperimentConfig& cfg);

using ConfigMap = std::map<std::string, std::string>;

// Flat key=value lines; '#' starts a comment; list values are comma-separated.
// Throws ConfigError on malformed lines.
ConfigMap parse_config_text(std::string_view text);

// Applies keys in order over the defaults (later maps override earlier ones).
// Throws ConfigError on unknown keys or bad values.
ExperimentConfig build_config(const std::vector<ConfigMap>& layers);

std::string config_to_text(const ExperimentConfig& cfg);

}  // namespace pcgeval
