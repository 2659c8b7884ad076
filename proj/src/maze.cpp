#include "pcgeval/maze.hpp"

#include <cstdlib>
#include <deque>

#include "pcgeval/error.hpp"

namespace pcgeval {

std::pair<MazeState, MazeState> maze_start_goal(const TileGrid& grid) {
  if (grid.domain() != Domain::Maze) throw Error(ErrorCode::DomainMismatch, "maze operation on a non-maze grid");
  const MazeState start{0, 0};
  const MazeState goal{grid.width() - 1, grid.height() - 1};
  if (grid.at(start.x, start.y) == Tile::Wall || grid.at(goal.x, goal.y) == Tile::Wall) {
    throw Error(ErrorCode::BlockedEndpoint, "start or goal corner is a wall");
  }
  return {start, goal};
}

std::vector<MazeMove> maze_successors(const TileGrid& grid, MazeState s) {
  std::vector<MazeMove> out;
  for_each_maze_successor(grid, s, [&](MazeAction a, MazeState n) { out.push_back({a, n}); });
  return out;
}

int maze_heuristic(MazeState s, MazeState goal) { return std::abs(s.x - goal.x) + std::abs(s.y - goal.y); }

std::vector<bool> reachable_mask(const TileGrid& grid, MazeState from) {
  std::vector<bool> seen(grid.tiles().size(), false);
  if (!grid.in_bounds(from.x, from.y) || grid.at(from.x, from.y) != Tile::Empty) return seen;
  std::deque<MazeState> queue{from};
  seen[grid.index(from.x, from.y)] = true;
  while (!queue.empty()) {
    const MazeState s = queue.front();
    queue.pop_front();
    for_each_maze_successor(grid, s, [&](MazeAction, MazeState n) {
      const std::size_t i = grid.index(n.x, n.y);
      if (!seen[i]) {
        seen[i] = true;
        queue.push_back(n);
      }
    });
  }
  return seen;
}

std::vector<MazeState> reachable_cells(const TileGrid& grid, MazeState from) {
  const auto mask = reachable_mask(grid, from);
  std::vector<MazeState> cells;
  for (int y = 0; y < grid.height(); ++y) {
    for (int x = 0; x < grid.width(); ++x) {
      if (mask[grid.index(x, y)]) cells.push_back({x, y});
    }
  }
  return cells;
}

bool is_solvable(const TileGrid& grid) {
  try {
    const auto [start, goal] = maze_start_goal(grid);
    return reachable_mask(grid, start)[grid.index(goal.x, goal.y)];
  } catch (const Error& e) {
    if (e.code() == ErrorCode::BlockedEndpoint) return false;
    throw;
  }
}

SearchResult<MazeState> solve_maze(const TileGrid& grid, std::size_t budget) {
  if (grid.domain() != Domain::Maze) throw Error(ErrorCode::DomainMismatch, "maze operation on a non-maze grid");
  const MazeState start{0, 0};
  const MazeState goal{grid.width() - 1, grid.height() - 1};
  if (grid.at(start.x, start.y) == Tile::Wall || grid.at(goal.x, goal.y) == Tile::Wall) return {};
  return astar(MazeDomain(grid, goal), start, budget);
}

}  // namespace pcgeval
