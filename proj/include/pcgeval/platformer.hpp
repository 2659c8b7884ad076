#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "pcgeval/astar.hpp"
#include "pcgeval/level.hpp"
#include "pcgeval/maze.hpp"

namespace pcgeval {

// Codes are part of the trajectory strings; do not renumber.
enum class PlatformerAction : int { Noop = 0, Right = 1, Left = 2, JumpRight = 3, JumpLeft = 4, JumpUp = 5 };
inline constexpr int kPlatformerActionCount = 6;

// Physics constants. y grows downward, vy > 0 means rising.
inline constexpr int kJumpImpulse = 3;
inline constexpr int kMaxFallSpeed = 4;

struct PlatformerState {
  int x = 0;
  int y = 0;
  int vy = 0;
  int tick = 0;
  bool alive = true;
  // Bit i set once Goomba i (PlatformerLevel::goombas order) has been stomped.
  std::uint64_t stomped = 0;

  bool operator==(const PlatformerState&) const = default;
};

struct Goomba {
  int row = 0;
  int left = 0;   // patrol extent on its platform, inclusive
  int right = 0;
  int offset = 0; // initial position minus left

  int platform_length() const { return right - left + 1; }
  // Ping-pongs across the platform with a one-tick turn at each end, so the
  // period is 2 * platform_length. Starts walking right.
  int column_at(long long tick) const;
};

// Per-level analysis shared by every simulation on the same grid.
class PlatformerLevel {
 public:
  explicit PlatformerLevel(const TileGrid& grid, bool with_goombas = true);

  const TileGrid& grid() const { return *grid_; }
  const std::vector<Goomba>& goombas() const { return goombas_; }
  // Rightmost column containing a Flag, else the last column.
  int goal_column() const { return goal_column_; }
  // lcm of all Goomba periods, or 0 when it exceeds kMaxPeriod.
  int goomba_period() const { return period_; }
  PlatformerState start() const { return start_; }

  bool solid(int x, int y) const { return grid_->in_bounds(x, y) && is_solid(grid_->at(x, y)); }
  // In bounds and not solid.
  bool open(int x, int y) const { return grid_->in_bounds(x, y) && !is_solid(grid_->at(x, y)); }
  bool solid_below(int x, int y) const { return solid(x, y + 1); }
  std::optional<std::size_t> goomba_at(int x, int y, long long tick, std::uint64_t stomped) const;

  static constexpr int kMaxPeriod = 100000;

 private:
  const TileGrid* grid_;
  std::vector<Goomba> goombas_;
  int goal_column_ = 0;
  int period_ = 1;
  PlatformerState start_;
};

// Agent starts in column 0 on top of the solid stack that rises from the bottom row.
PlatformerState platformer_start(const TileGrid& grid);

// One tick of the discrete physics:
//  1. Horizontal move of -1/0/+1 unless the target cell is solid or off-grid.
//  2. Jump actions set vy = +3 when standing on solid ground and not rising.
//     Otherwise a rising agent loses 1 vy per tick; an unsupported one
//     accelerates downward to at most 4 tiles/tick; a supported one has vy 0.
//  3. Rising moves up exactly 1 tile (a ceiling zeroes vy); falling moves down
//     |vy| tiles one at a time, landing on solids. So a jump peaks 3 tiles up.
//  4. Falling into a live Goomba stomps it and stops the fall there. Any other
//     contact with a Goomba (including trading tiles with one), or dropping
//     below the bottom row, kills the agent.
PlatformerState platformer_step(const PlatformerLevel& level, const PlatformerState& s, PlatformerAction a);
PlatformerState platformer_step(const TileGrid& grid, const PlatformerState& s, PlatformerAction a);

bool platformer_goal_reached(const TileGrid& grid, const PlatformerState& s);

// Ticks to the goal column at 1 tile/tick, 0 at or past it.
double platformer_heuristic(const TileGrid& grid, const PlatformerState& s);

struct ReachableCount {
  std::size_t count = 0;
  bool truncated = false;
};

// Distinct (x, y, vy) triples reachable by the agent alone (Goombas ignored).
ReachableCount platformer_reachable_states(const TileGrid& grid, std::size_t cap);

class PlatformerDomain {
 public:
  using State = PlatformerState;

  explicit PlatformerDomain(const PlatformerLevel& level) : level_(&level) {}

  double heuristic(const State& s) const;
  bool is_goal(const State& s) const { return s.alive && s.x == level_->goal_column(); }

  // Dead successors are dropped. Ticks are reduced modulo the Goomba period,
  // which leaves every future transition unchanged.
  template <class F>
  void for_each_successor(const State& s, F&& f) const {
    for (int a = 0; a < kPlatformerActionCount; ++a) {
      State n = platformer_step(*level_, s, static_cast<PlatformerAction>(a));
      if (!n.alive) continue;
      if (level_->goomba_period() > 0) n.tick %= level_->goomba_period();
      f(a, n);
    }
  }

 private:
  const PlatformerLevel* level_;
};

SearchResult<PlatformerState> solve_platformer(const TileGrid& grid, std::size_t budget = kDefaultBudget);

// Agent-only view of a platformer state; the unit of the reachability count.
struct AgentState {
  int x = 0;
  int y = 0;
  int vy = 0;
  bool operator==(const AgentState&) const = default;
};

// Projects a search onto (x, y, vy), merging states that differ only in tick
// phase or stomped Goombas.
SearchResult<AgentState> project_to_agent(const SearchResult<PlatformerState>& r);

inline Pos position_of(const Pos& p) { return p; }
inline Pos position_of(const PlatformerState& s) { return {s.x, s.y}; }
inline Pos position_of(const AgentState& s) { return {s.x, s.y}; }

}  // namespace pcgeval

template <>
struct std::hash<pcgeval::PlatformerState> {
  std::size_t operator()(const pcgeval::PlatformerState& s) const noexcept {
    std::uint64_t h = static_cast<std::uint32_t>(s.x);
    h = h * 1000003u ^ static_cast<std::uint32_t>(s.y);
    h = h * 1000003u ^ static_cast<std::uint32_t>(s.vy + 16);
    h = h * 1000003u ^ static_cast<std::uint32_t>(s.tick);
    h = h * 1000003u ^ (s.alive ? 1u : 0u);
    h = h * 1000003u ^ s.stomped;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

template <>
struct std::hash<pcgeval::AgentState> {
  std::size_t operator()(const pcgeval::AgentState& s) const noexcept {
    std::uint64_t h = static_cast<std::uint32_t>(s.x);
    h = h * 1000003u ^ static_cast<std::uint32_t>(s.y);
    h = h * 1000003u ^ static_cast<std::uint32_t>(s.vy + 16);
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};
