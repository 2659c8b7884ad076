#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pcgeval/astar.hpp"
#include "pcgeval/error.hpp"
#include "pcgeval/level.hpp"
#include "pcgeval/maze.hpp"
#include "pcgeval/platformer.hpp"
#include "pcgeval/representations.hpp"

namespace pcgeval {

enum class Metric { CD, Leniency, AStarDiversity, AStarDifficulty, ManhattanDiversity };

const char* metric_name(Metric m);

struct MetricSample {
  Metric metric = Metric::CD;
  double value = 0.0;
  std::size_t id_a = 0;
  std::optional<std::size_t> id_b;  // set for pairwise metrics, with id_a < id_b
  std::optional<Repr> repr;
};

// Size in bytes of the gzip stream (DEFLATE level 9, zero mtime, no name,
// OS byte 255) for `data`.
std::size_t compressed_size(std::string_view data);

// (C(xy) - min(C(x), C(y))) / max(C(x), C(y)). Throws EmptyInput.
double ncd(std::string_view x, std::string_view y);

// NCD between two levels' string representations.
double compression_distance(const TileGrid& a, const TileGrid& b, Repr repr);

std::size_t levenshtein(std::span<const int> a, std::span<const int> b);

// Edit distance divided by the longer length; 0 when both are empty.
double normalized_edit_distance(std::span<const int> a, std::span<const int> b);

// Mean |dx| + |dy| between corresponding positions, padding the shorter
// sequence with its final position.
double mean_position_distance(std::span<const Pos> a, std::span<const Pos> b);

template <class State>
double astar_diversity(const SearchResult<State>& a, const SearchResult<State>& b) {
  if (!a.solved || !b.solved) throw Error(ErrorCode::UnsolvedLevel, "diversity is undefined on unsolved levels");
  return normalized_edit_distance(a.actions, b.actions);
}

template <class State>
std::vector<Pos> path_positions(const SearchResult<State>& r) {
  std::vector<Pos> out;
  out.reserve(r.path_states.size());
  for (const auto& s : r.path_states) out.push_back(position_of(s));
  return out;
}

template <class State>
double manhattan_diversity(const SearchResult<State>& a, const SearchResult<State>& b) {
  if (!a.solved || !b.solved) throw Error(ErrorCode::UnsolvedLevel, "diversity is undefined on unsolved levels");
  return mean_position_distance(path_positions(a), path_positions(b));
}

// Off-path expansions divided by the number of reachable states.
template <class State>
double astar_difficulty(const SearchResult<State>& r, std::size_t reachable_count) {
  if (!r.solved) throw Error(ErrorCode::UnsolvedLevel, "difficulty is undefined on unsolved levels");
  if (reachable_count == 0 || reachable_count < r.expanded.size()) {
    throw Error(ErrorCode::InvalidDenominator, "reachable count " + std::to_string(reachable_count) +
                                                   " is smaller than the expanded set (" +
                                                   std::to_string(r.expanded.size()) + ")");
  }
  return static_cast<double>(off_path_expansions(r)) / static_cast<double>(reachable_count);
}

// Convenience wrappers: solve, count reachable states, divide.
double maze_difficulty(const TileGrid& grid, std::size_t budget = kDefaultBudget);
double platformer_difficulty(const TileGrid& grid, std::size_t budget = kDefaultBudget,
                             std::size_t reachable_cap = 10'000'000);

// Fraction of start-reachable empty tiles that are dead ends: a tile t off
// the solution path is a dead end when walling off the shortest start->t path
// (all of it except t) disconnects t from the goal. Tiles on the A* solution
// path are never dead ends but do count in the denominator. Throws Unsolvable.
double leniency_maze(const TileGrid& grid);

// Challenge scores: -1 per gap (maximal run of zero-height columns), -1 per
// Goomba, +1 per height increase between two solid columns. The mean is
// mapped from [-1, 1] to [0, 1]; a level without challenges scores 1.
double leniency_platformer(const TileGrid& grid);

double leniency(const TileGrid& grid);

}  // namespace pcgeval
