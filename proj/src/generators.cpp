#include "pcgeval/generators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "pcgeval/error.hpp"
#include "pcgeval/maze.hpp"
#include "pcgeval/rng.hpp"

namespace pcgeval {

TileGrid gen_random_maze(int width, int height, double wall_prob, std::uint64_t seed) {
  if (width < 2 || height < 2) throw Error(ErrorCode::BadDimensions, "random mazes need sides of at least 2");
  if (!(wall_prob >= 0.0 && wall_prob < 1.0)) throw Error(ErrorCode::InvalidArgument, "wall_prob must be in [0, 1)");
  Rng rng(seed);
  auto grid = TileGrid::filled(width, height, Domain::Maze, Tile::Empty);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const bool corner = (x == 0 || x == width - 1) && (y == 0 || y == height - 1);
      if (corner) continue;
      if (rng.bernoulli(wall_prob)) grid.set(x, y, Tile::Wall);
    }
  }
  return grid;
}

const char* difficulty_class_name(int cls) {
  switch (cls) {
    case 1: return "very_easy";
    case 2: return "easy";
    case 3: return "moderate";
    case 4: return "difficult";
    case 5: return "very_difficult";
    default: return "unknown";
  }
}

double wall_opening_fraction(int cls) { return 0.7 * static_cast<double>(5 - cls) / 4.0; }

namespace {

constexpr std::array<int, 4> kDx{0, 0, -1, 1};
constexpr std::array<int, 4> kDy{-1, 1, 0, 0};

int open_neighbours(const TileGrid& g, int x, int y) {
  int n = 0;
  for (int d = 0; d < 4; ++d) {
    const int nx = x + kDx[d];
    const int ny = y + kDy[d];
    if (g.in_bounds(nx, ny) && g.at(nx, ny) == Tile::Empty) ++n;
  }
  return n;
}

// Cells live on even coordinates of a cw x ch tile grid (both odd).
// Randomized Prim: grow the tree from (0,0) by picking a random frontier edge.
void carve_prim(TileGrid& g, int cw, int ch, Rng& rng) {
  const int cols = (cw + 1) / 2;
  const int rows = (ch + 1) / 2;
  std::vector<char> visited(static_cast<std::size_t>(cols * rows), 0);
  std::vector<std::array<int, 3>> frontier;
  auto visit = [&](int cx, int cy) {
    visited[static_cast<std::size_t>(cy * cols + cx)] = 1;
    g.set(2 * cx, 2 * cy, Tile::Empty);
    for (int d = 0; d < 4; ++d) {
      const int nx = cx + kDx[d];
      const int ny = cy + kDy[d];
      if (nx >= 0 && ny >= 0 && nx < cols && ny < rows && !visited[static_cast<std::size_t>(ny * cols + nx)]) {
        frontier.push_back({cx, cy, d});
      }
    }
  };
  visit(0, 0);
  while (!frontier.empty()) {
    const std::size_t k = rng.below(frontier.size());
    const auto [cx, cy, d] = frontier[k];
    frontier[k] = frontier.back();
    frontier.pop_back();
    const int nx = cx + kDx[d];
    const int ny = cy + kDy[d];
    if (visited[static_cast<std::size_t>(ny * cols + nx)]) continue;
    g.set(2 * cx + kDx[d], 2 * cy + kDy[d], Tile::Empty);
    visit(nx, ny);
  }
}

// Knocks out a random share of the walls that separate two adjacent cells.
void open_walls(TileGrid& g, int cw, int ch, double fraction, Rng& rng) {
  if (fraction <= 0.0) return;
  std::vector<std::pair<int, int>> walls;
  for (int y = 0; y < ch; ++y) {
    for (int x = 0; x < cw; ++x) {
      if ((x + y) % 2 == 1 && g.at(x, y) == Tile::Wall) walls.emplace_back(x, y);
    }
  }
  rng.shuffle(walls.begin(), walls.end());
  const auto quota = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(walls.size())));
  for (std::size_t i = 0; i < quota; ++i) g.set(walls[i].first, walls[i].second, Tile::Empty);
}

}  // namespace

TileGrid gen_maze_with_difficulty(int width, int height, int cls, std::uint64_t seed) {
  if (width < 5 || height < 5) throw Error(ErrorCode::BadDimensions, "difficulty mazes need sides of at least 5");
  if (cls < 1 || cls > 5) throw Error(ErrorCode::InvalidArgument, "difficulty class must be in 1..5");
  const int cw = width % 2 == 1 ? width : width - 1;
  const int ch = height % 2 == 1 ? height : height - 1;
  Rng rng(seed);
  auto g = TileGrid::filled(width, height, Domain::Maze, Tile::Wall);
  carve_prim(g, cw, ch, rng);
  open_walls(g, cw, ch, wall_opening_fraction(cls), rng);
  g.set(width - 1, height - 1, Tile::Empty);
  if (width != cw && height != ch) g.set(width - 2, height - 1, Tile::Empty);
  return g;
}

double dead_end_fraction(const TileGrid& maze) {
  if (maze.domain() != Domain::Maze) throw Error(ErrorCode::DomainMismatch, "dead-end audit needs a maze");
  TileGrid g = maze;
  const int w = g.width();
  const int h = g.height();
  std::size_t empty = 0;
  for (Tile t : g.tiles()) empty += t == Tile::Empty ? 1 : 0;
  if (empty == 0) return 0.0;

  auto fillable = [&](int x, int y) {
    const bool endpoint = (x == 0 && y == 0) || (x == w - 1 && y == h - 1);
    return !endpoint && g.at(x, y) == Tile::Empty && open_neighbours(g, x, y) <= 1;
  };
  std::vector<std::pair<int, int>> work;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (fillable(x, y)) work.emplace_back(x, y);
    }
  }
  std::size_t removed = 0;
  while (!work.empty()) {
    const auto [x, y] = work.back();
    work.pop_back();
    if (!fillable(x, y)) continue;
    g.set(x, y, Tile::Wall);
    ++removed;
    for (int d = 0; d < 4; ++d) {
      const int nx = x + kDx[d];
      const int ny = y + kDy[d];
      if (g.in_bounds(nx, ny) && fillable(nx, ny)) work.emplace_back(nx, ny);
    }
  }
  return static_cast<double>(removed) / static_cast<double>(empty);
}

DifficultyClassSet gen_difficulty_class_set(int width, int height, int cls, int count, std::uint64_t seed) {
  DifficultyClassSet set;
  set.class_label = cls;
  set.levels.seed = seed;
  set.levels.source_label = std::string("difficulty-class-") + std::to_string(cls);
  for (int i = 0; i < count; ++i) {
    set.levels.levels.push_back(
        gen_maze_with_difficulty(width, height, cls, derive_seed(seed, static_cast<std::uint64_t>(i))));
  }
  return set;
}

TileGrid gen_fixed_path_maze(int width, int height, std::uint64_t seed) {
  if (width < 2 || height < 2) throw Error(ErrorCode::BadDimensions, "fixed-path mazes need sides of at least 2");
  Rng rng(seed);
  const int cells = width * height;
  std::vector<char> path(static_cast<std::size_t>(cells), 0);
  int x = 0;
  int y = 0;
  path[0] = 1;
  while (x != width - 1 || y != height - 1) {
    const bool right = y == height - 1 || (x != width - 1 && rng.bernoulli(0.5));
    right ? ++x : ++y;
    path[static_cast<std::size_t>(y * width + x)] = 1;
  }
  auto g = TileGrid::filled(width, height, Domain::Maze, Tile::Wall);
  for (int ty = 0; ty < height; ++ty) {
    for (int tx = 0; tx < width; ++tx) {
      if (path[static_cast<std::size_t>(ty * width + tx)]) {
        g.set(tx, ty, Tile::Empty);
        continue;
      }
      bool touches = false;
      for (int d = 0; d < 4; ++d) {
        const int nx = tx + kDx[d];
        const int ny = ty + kDy[d];
        if (nx >= 0 && ny >= 0 && nx < width && ny < height && path[static_cast<std::size_t>(ny * width + nx)]) {
          touches = true;
        }
      }
      if (!touches && rng.bernoulli(0.5)) g.set(tx, ty, Tile::Empty);
    }
  }
  return g;
}

LevelSet gen_visual_variants(const TileGrid& base, int count, std::uint64_t seed) {
  if (base.domain() != Domain::Maze || !is_solvable(base)) {
    throw Error(ErrorCode::UnsolvableBase, "visual variants need a solvable maze as base");
  }
  const auto reach = reachable_mask(base, {0, 0});
  std::vector<char> keep(base.tiles().size(), 0);
  for (int y = 0; y < base.height(); ++y) {
    for (int x = 0; x < base.width(); ++x) {
      const std::size_t i = base.index(x, y);
      if (reach[i]) {
        keep[i] = 1;
        continue;
      }
      for (int d = 0; d < 4; ++d) {
        const int nx = x + kDx[d];
        const int ny = y + kDy[d];
        if (base.in_bounds(nx, ny) && reach[base.index(nx, ny)]) keep[i] = 1;
      }
    }
  }

  LevelSet set;
  set.seed = seed;
  set.source_label = "visual-variants";
  for (int k = 0; k < count; ++k) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
    TileGrid v = base;
    for (int y = 0; y < base.height(); ++y) {
      for (int x = 0; x < base.width(); ++x) {
        if (!keep[base.index(x, y)]) v.set(x, y, rng.bernoulli(0.5) ? Tile::Wall : Tile::Empty);
      }
    }
    set.levels.push_back(std::move(v));
  }
  return set;
}

TileGrid gen_platformer(const PlatformerGenParams& p, std::uint64_t seed) {
  if (p.width < 10 || p.height < 5) throw Error(ErrorCode::BadDimensions, "platformer levels need width >= 10, height >= 5");
  const int w = p.width;
  const int h = p.height;
  const int max_height = std::max(1, std::min(4, h - 5));
  Rng rng(seed);

  std::vector<int> heights(static_cast<std::size_t>(w), 0);
  int current = std::min(2, max_height);
  bool after_gap = false;
  for (int x = 0; x < w;) {
    const bool safe = x < 3 || x >= w - 3;
    if (!safe && !after_gap && rng.bernoulli(p.gap_rate)) {
      const int gap = std::min(rng.range(1, 3), w - 3 - x);
      x += gap;  // heights stay 0
      after_gap = true;
      continue;
    }
    after_gap = false;
    if (!safe && rng.bernoulli(p.step_rate)) {
      current = std::clamp(current + (rng.bernoulli(0.5) ? 1 : -1), 1, max_height);
    }
    heights[static_cast<std::size_t>(x)] = current;
    ++x;
  }

  auto g = TileGrid::filled(w, h, Domain::Platformer, Tile::Air);
  for (int x = 0; x < w; ++x) {
    for (int k = 0; k < heights[static_cast<std::size_t>(x)]; ++k) g.set(x, h - 1 - k, Tile::Ground);
  }
  for (int x = 4; x < w - 3; ++x) {
    const int ht = heights[static_cast<std::size_t>(x)];
    if (ht > 0 && rng.bernoulli(p.enemy_rate)) g.set(x, h - 1 - ht, Tile::Goomba);
  }
  // Agent rows reach at most 3 above the highest surface; keep one more row of clearance.
  const int highest_reach = h - 1 - max_height - 3;
  const int brick_rows = highest_reach - 1;
  if (brick_rows > 0) {
    for (int x = 0; x < w; ++x) {
      if (rng.bernoulli(p.brick_rate)) g.set(x, static_cast<int>(rng.below(static_cast<std::uint64_t>(brick_rows))), Tile::Brick);
    }
  }
  g.set(w - 1, h - 1 - heights[static_cast<std::size_t>(w - 1)], Tile::Flag);
  return g;
}

TileGrid gen_platformer(int width, int height, double gap_rate, double enemy_rate, std::uint64_t seed) {
  PlatformerGenParams p;
  p.width = width;
  p.height = height;
  p.gap_rate = gap_rate;
  p.enemy_rate = enemy_rate;
  p.step_rate = gap_rate;
  return gen_platformer(p, seed);
}

}  // namespace pcgeval
