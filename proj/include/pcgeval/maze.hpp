#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "pcgeval/astar.hpp"
#include "pcgeval/level.hpp"

namespace pcgeval {

struct Pos {
  int x = 0;
  int y = 0;
  bool operator==(const Pos&) const = default;
};

using MazeState = Pos;

// Codes are part of the trajectory strings; do not renumber.
enum class MazeAction : int { Up = 0, Down = 1, Left = 2, Right = 3 };

struct MazeMove {
  MazeAction action;
  MazeState state;
};

// Start is the top-left tile, goal the bottom-right. Throws BlockedEndpoint
// when either is a wall.
std::pair<MazeState, MazeState> maze_start_goal(const TileGrid& grid);

// Calls f(action, next) for each open 4-neighbour in the order Up, Down, Left, Right.
template <class F>
void for_each_maze_successor(const TileGrid& grid, MazeState s, F&& f) {
  static constexpr int dx[4] = {0, 0, -1, 1};
  static constexpr int dy[4] = {-1, 1, 0, 0};
  for (int a = 0; a < 4; ++a) {
    const int nx = s.x + dx[a];
    const int ny = s.y + dy[a];
    if (grid.in_bounds(nx, ny) && grid.at(nx, ny) == Tile::Empty) f(static_cast<MazeAction>(a), MazeState{nx, ny});
  }
}

std::vector<MazeMove> maze_successors(const TileGrid& grid, MazeState s);

int maze_heuristic(MazeState s, MazeState goal);

// Breadth-first closure from `from`, returned in row-major order.
std::vector<MazeState> reachable_cells(const TileGrid& grid, MazeState from);

// Same closure as a row-major mask (grid.index order).
std::vector<bool> reachable_mask(const TileGrid& grid, MazeState from);

bool is_solvable(const TileGrid& grid);

class MazeDomain {
 public:
  using State = MazeState;

  MazeDomain(const TileGrid& grid, MazeState goal) : grid_(&grid), goal_(goal) {}

  double heuristic(const State& s) const { return maze_heuristic(s, goal_); }
  bool is_goal(const State& s) const { return s == goal_; }
  template <class F>
  void for_each_successor(const State& s, F&& f) const {
    for_each_maze_successor(*grid_, s, [&](MazeAction a, MazeState n) { f(static_cast<int>(a), n); });
  }

 private:
  const TileGrid* grid_;
  MazeState goal_;
};

// A* from the start to the goal corner. A blocked endpoint yields an
// unsolved result instead of throwing.
SearchResult<MazeState> solve_maze(const TileGrid& grid, std::size_t budget = kDefaultBudget);

}  // namespace pcgeval

template <>
struct std::hash<pcgeval::Pos> {
  std::size_t operator()(const pcgeval::Pos& p) const noexcept {
    return std::hash<long long>{}((static_cast<long long>(p.x) << 32) ^ static_cast<unsigned>(p.y));
  }
};
