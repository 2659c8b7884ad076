#include "pcgeval/metrics.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstdlib>
#include <deque>

namespace pcgeval {

const char* metric_name(Metric m) {
  switch (m) {
    case Metric::CD: return "CD";
    case Metric::Leniency: return "Leniency";
    case Metric::AStarDiversity: return "AStarDiversity";
    case Metric::AStarDifficulty: return "AStarDifficulty";
    case Metric::ManhattanDiversity: return "ManhattanDiversity";
  }
  return "?";
}

std::size_t compressed_size(std::string_view data) {
  z_stream zs{};
  if (deflateInit2(&zs, Z_BEST_COMPRESSION, Z_DEFLATED, 15 + 16, 8, Z_DEFAULT_STRATEGY) != Z_OK) {
    throw Error(ErrorCode::InvalidArgument, "deflateInit2 failed");
  }
  gz_header header{};
  header.os = 255;
  deflateSetHeader(&zs, &header);

  std::vector<unsigned char> out(deflateBound(&zs, static_cast<uLong>(data.size())) + 64);
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  zs.avail_in = static_cast<uInt>(data.size());
  zs.next_out = out.data();
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = deflate(&zs, Z_FINISH);
  const std::size_t size = zs.total_out;
  deflateEnd(&zs);
  if (rc != Z_STREAM_END) throw Error(ErrorCode::InvalidArgument, "deflate did not finish");
  return size;
}

double ncd(std::string_view x, std::string_view y) {
  if (x.empty() || y.empty()) throw Error(ErrorCode::EmptyInput, "ncd needs non-empty strings");
  const double cx = static_cast<double>(compressed_size(x));
  const double cy = static_cast<double>(compressed_size(y));
  std::string xy;
  xy.reserve(x.size() + y.size());
  xy.append(x).append(y);
  const double cxy = static_cast<double>(compressed_size(xy));
  return (cxy - std::min(cx, cy)) / std::max(cx, cy);
}

double compression_distance(const TileGrid& a, const TileGrid& b, Repr repr) {
  if (a.domain() != b.domain()) throw Error(ErrorCode::DomainMismatch, "levels come from different domains");
  return ncd(representation(a, repr), representation(b, repr));
}

std::size_t levenshtein(std::span<const int> a, std::span<const int> b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> prev(b.size() + 1);
  std::vector<std::size_t> cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double normalized_edit_distance(std::span<const int> a, std::span<const int> b) {
  const std::size_t longer = std::max(a.size(), b.size());
  if (longer == 0) return 0.0;
  return static_cast<double>(levenshtein(a, b)) / static_cast<double>(longer);
}

double mean_position_distance(std::span<const Pos> a, std::span<const Pos> b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::EmptyInput, "position sequences must be non-empty");
  const std::size_t n = std::max(a.size(), b.size());
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Pos& pa = a[std::min(i, a.size() - 1)];
    const Pos& pb = b[std::min(i, b.size() - 1)];
    total += std::abs(pa.x - pb.x) + std::abs(pa.y - pb.y);
  }
  return total / static_cast<double>(n);
}

double maze_difficulty(const TileGrid& grid, std::size_t budget) {
  const auto r = solve_maze(grid, budget);
  if (!r.solved) throw Error(ErrorCode::UnsolvedLevel, "maze is not solved by the planner");
  return astar_difficulty(r, reachable_cells(grid, r.path_states.front()).size());
}

double platformer_difficulty(const TileGrid& grid, std::size_t budget, std::size_t reachable_cap) {
  const auto r = solve_platformer(grid, budget);
  if (!r.solved) throw Error(ErrorCode::UnsolvedLevel, "platformer level is not solved by the planner");
  const auto reach = platformer_reachable_states(grid, reachable_cap);
  return astar_difficulty(project_to_agent(r), reach.count);
}

double leniency_maze(const TileGrid& grid) {
  if (grid.domain() != Domain::Maze) throw Error(ErrorCode::DomainMismatch, "maze leniency on a non-maze grid");
  if (!is_solvable(grid)) throw Error(ErrorCode::Unsolvable, "maze leniency needs a solvable maze");
  const auto [start, goal] = maze_start_goal(grid);
  const auto solution = solve_maze(grid);
  const std::size_t cells = grid.tiles().size();

  std::vector<char> on_path(cells, 0);
  for (const Pos& p : solution.path_states) on_path[grid.index(p.x, p.y)] = 1;

  // Shortest-path tree from the start, parents assigned in successor order.
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent(cells, kNone);
  std::vector<char> reached(cells, 0);
  std::vector<Pos> order;
  std::deque<Pos> queue{start};
  reached[grid.index(start.x, start.y)] = 1;
  while (!queue.empty()) {
    const Pos s = queue.front();
    queue.pop_front();
    order.push_back(s);
    for_each_maze_successor(grid, s, [&](MazeAction, Pos n) {
      const std::size_t i = grid.index(n.x, n.y);
      if (!reached[i]) {
        reached[i] = 1;
        parent[i] = grid.index(s.x, s.y);
        queue.push_back(n);
      }
    });
  }

  std::size_t dead_ends = 0;
  std::vector<char> blocked(cells, 0);
  std::vector<char> visited(cells, 0);
  const std::size_t goal_index = grid.index(goal.x, goal.y);
  for (const Pos& t : order) {
    const std::size_t ti = grid.index(t.x, t.y);
    if (on_path[ti]) continue;

    std::fill(blocked.begin(), blocked.end(), 0);
    for (std::size_t i = parent[ti]; i != kNone; i = parent[i]) blocked[i] = 1;

    std::fill(visited.begin(), visited.end(), 0);
    visited[ti] = 1;
    std::deque<Pos> q{t};
    bool found = false;
    while (!q.empty() && !found) {
      const Pos s = q.front();
      q.pop_front();
      for_each_maze_successor(grid, s, [&](MazeAction, Pos n) {
        const std::size_t i = grid.index(n.x, n.y);
        if (visited[i] || blocked[i]) return;
        visited[i] = 1;
        if (i == goal_index) found = true;
        q.push_back(n);
      });
    }
    if (!found) ++dead_ends;
  }
  return static_cast<double>(dead_ends) / static_cast<double>(order.size());
}

double leniency_platformer(const TileGrid& grid) {
  const auto cols = column_features(grid);
  int total = 0;
  int challenges = 0;
  for (std::size_t x = 0; x < cols.size(); ++x) {
    if (cols[x].gap_start) {
      total -= 1;
      ++challenges;
    }
    if (x > 0 && !cols[x].in_gap && !cols[x - 1].in_gap && cols[x].height_delta == HeightDelta::Inc) {
      total += 1;
      ++challenges;
    }
  }
  for (Tile t : grid.tiles()) {
    if (t == Tile::Goomba) {
      total -= 1;
      ++challenges;
    }
  }
  if (challenges == 0) return 1.0;
  const double mean = static_cast<double>(total) / static_cast<double>(challenges);
  return (mean + 1.0) / 2.0;
}

double leniency(const TileGrid& grid) {
  return grid.domain() == Domain::Maze ? leniency_maze(grid) : leniency_platformer(grid);
}

}  // namespace pcgeval
