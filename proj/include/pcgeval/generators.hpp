#pragma once

#include <cstdint>

#include "pcgeval/level.hpp"

namespace pcgeval {

// Each non-corner tile is a wall with probability wall_prob; all four corners
// stay empty. Solvability is not guaranteed.
TileGrid gen_random_maze(int width, int height, double wall_prob, std::uint64_t seed);

enum class DifficultyClass { VeryEasy = 1, Easy = 2, Moderate = 3, Difficult = 4, VeryDifficult = 5 };

const char* difficulty_class_name(int cls);

// Share of the remaining cell-separating walls opened for a class: 0.7 for
// class 1 down to 0 for class 5, linear in between.
double wall_opening_fraction(int cls);

// Perfect maze from seeded randomized Prim, then wall_opening_fraction(cls)
// of its interior walls knocked out at random, which adds loops and removes
// dead ends. Class 5 stays a perfect maze. Even dimensions are carved one
// smaller; the extra row/column is wall except the goal corner and the tile
// joining it to the carved maze. Always solvable. Throws BadDimensions for
// sides below 5.
TileGrid gen_maze_with_difficulty(int width, int height, int cls, std::uint64_t seed);

// Share of empty tiles removed by dead-end filling (repeatedly deleting
// empty tiles other than start and goal with at most one open neighbour).
// In a perfect maze this is every tile off the solution path.
double dead_end_fraction(const TileGrid& maze);

struct DifficultyClassSet {
  int class_label = 1;
  LevelSet levels;
};

DifficultyClassSet gen_difficulty_class_set(int width, int height, int cls, int count, std::uint64_t seed);

// A maze whose only open tiles form one monotone right/down corridor from
// start to goal; tiles not touching the corridor are random walls/empties.
TileGrid gen_fixed_path_maze(int width, int height, std::uint64_t seed);

// Copies every start-reachable tile (and the walls enclosing them) from base
// and re-randomizes all other tiles, so the playable region and the A*
// trajectory are shared by every variant. Throws UnsolvableBase.
LevelSet gen_visual_variants(const TileGrid& base, int count, std::uint64_t seed);

struct PlatformerGenParams {
  int width = 80;
  int height = 14;
  double gap_rate = 0.08;    // chance a column starts a gap of width 1-3; gaps never touch
  double enemy_rate = 0.08;  // chance a solid column gets a Goomba
  double step_rate = 0.3;    // chance the ground height changes by one
  double brick_rate = 0.3;   // chance a column gets a floating decorative brick
};

// Ground band with jumpable gaps, +-1 elevation steps and Goombas on the
// ground. Flag in the last column; the first and last three columns are safe
// ground. Floating bricks sit above the band the agent can reach. Throws
// BadDimensions unless width >= 10 and height >= 5.
TileGrid gen_platformer(const PlatformerGenParams& params, std::uint64_t seed);
// Shorthand with step_rate = gap_rate, so zero rates give a flat level.
TileGrid gen_platformer(int width, int height, double gap_rate, double enemy_rate, std::uint64_t seed);

}  // namespace pcgeval
