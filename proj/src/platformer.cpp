#include "pcgeval/platformer.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_set>

#include "pcgeval/error.hpp"

namespace pcgeval {

int Goomba::column_at(long long tick) const {
  const long long p = platform_length();
  const long long phase = (offset + tick) % (2 * p);
  return left + static_cast<int>(phase < p ? phase : 2 * p - 1 - phase);
}

namespace {

// A live Goomba and the agent trading places within one tick also collide.
bool swapped_with_goomba(const PlatformerLevel& level, const PlatformerState& from, const PlatformerState& to) {
  if (from.y != to.y || from.x == to.x) return false;
  const auto& goombas = level.goombas();
  for (std::size_t i = 0; i < goombas.size(); ++i) {
    if ((to.stomped >> i) & 1u) continue;
    const Goomba& g = goombas[i];
    if (g.row == to.y && g.column_at(from.tick) == to.x && g.column_at(to.tick) == from.x) return true;
  }
  return false;
}

void require_platformer(const TileGrid& grid) {
  if (grid.domain() != Domain::Platformer) {
    throw Error(ErrorCode::DomainMismatch, "platformer operation on a non-platformer grid");
  }
}

}  // namespace

PlatformerLevel::PlatformerLevel(const TileGrid& grid, bool with_goombas) : grid_(&grid) {
  require_platformer(grid);
  goal_column_ = grid.width() - 1;
  bool flag_seen = false;
  for (int x = grid.width() - 1; x >= 0 && !flag_seen; --x) {
    for (int y = 0; y < grid.height(); ++y) {
      if (grid.at(x, y) == Tile::Flag) {
        goal_column_ = x;
        flag_seen = true;
        break;
      }
    }
  }

  if (with_goombas) {
    for (int y = 0; y < grid.height(); ++y) {
      for (int x = 0; x < grid.width(); ++x) {
        if (grid.at(x, y) != Tile::Goomba) continue;
        Goomba g{y, x, x, 0};
        if (solid_below(x, y)) {
          while (open(g.left - 1, y) && solid_below(g.left - 1, y)) --g.left;
          while (open(g.right + 1, y) && solid_below(g.right + 1, y)) ++g.right;
        }
        g.offset = x - g.left;
        goombas_.push_back(g);
      }
    }
    if (goombas_.size() > 64) throw Error(ErrorCode::InvalidArgument, "at most 64 Goombas per level are supported");
  }

  long long period = 1;
  for (const Goomba& g : goombas_) {
    period = std::lcm(period, 2LL * g.platform_length());
    if (period > kMaxPeriod) {
      period = 0;
      break;
    }
  }
  period_ = static_cast<int>(period);

  int top = grid.height();
  while (top > 0 && solid(0, top - 1)) --top;
  start_ = PlatformerState{0, std::max(0, top - 1), 0, 0, true, 0};
}

std::optional<std::size_t> PlatformerLevel::goomba_at(int x, int y, long long tick, std::uint64_t stomped) const {
  for (std::size_t i = 0; i < goombas_.size(); ++i) {
    if ((stomped >> i) & 1u) continue;
    if (goombas_[i].row == y && goombas_[i].column_at(tick) == x) return i;
  }
  return std::nullopt;
}

PlatformerState platformer_start(const TileGrid& grid) { return PlatformerLevel(grid, false).start(); }

PlatformerState platformer_step(const PlatformerLevel& level, const PlatformerState& s, PlatformerAction a) {
  if (!s.alive) return s;
  PlatformerState n = s;
  n.tick = s.tick + 1;

  int dx = 0;
  bool jump = false;
  switch (a) {
    case PlatformerAction::Noop: break;
    case PlatformerAction::Right: dx = 1; break;
    case PlatformerAction::Left: dx = -1; break;
    case PlatformerAction::JumpRight: dx = 1; jump = true; break;
    case PlatformerAction::JumpLeft: dx = -1; jump = true; break;
    case PlatformerAction::JumpUp: jump = true; break;
  }
  if (dx != 0 && level.open(s.x + dx, s.y)) n.x += dx;

  const bool grounded = s.vy <= 0 && level.solid_below(s.x, s.y);
  if (jump && grounded) {
    n.vy = kJumpImpulse;
  } else if (s.vy > 0) {
    n.vy = s.vy - 1;
  } else if (level.solid_below(n.x, n.y)) {
    n.vy = 0;
  } else {
    n.vy = std::max(s.vy - 1, -kMaxFallSpeed);
  }

  bool stomped_now = false;
  if (n.vy > 0) {
    if (level.open(n.x, n.y - 1)) {
      n.y -= 1;
    } else {
      n.vy = 0;
    }
  } else if (n.vy < 0) {
    const int fall = -n.vy;
    for (int k = 0; k < fall; ++k) {
      if (n.y + 1 >= level.grid().height()) {
        n.alive = false;
        return n;
      }
      if (level.solid(n.x, n.y + 1)) break;
      n.y += 1;
      if (auto g = level.goomba_at(n.x, n.y, n.tick, n.stomped)) {
        n.stomped |= std::uint64_t{1} << *g;
        stomped_now = true;
        break;
      }
    }
    if (stomped_now || level.solid_below(n.x, n.y)) n.vy = 0;
  }

  if (!stomped_now && (level.goomba_at(n.x, n.y, n.tick, n.stomped) || swapped_with_goomba(level, s, n))) {
    n.alive = false;
  }
  return n;
}

PlatformerState platformer_step(const TileGrid& grid, const PlatformerState& s, PlatformerAction a) {
  return platformer_step(PlatformerLevel(grid), s, a);
}

bool platformer_goal_reached(const TileGrid& grid, const PlatformerState& s) {
  return s.x == PlatformerLevel(grid, false).goal_column();
}

double platformer_heuristic(const TileGrid& grid, const PlatformerState& s) {
  return std::max(0, PlatformerLevel(grid, false).goal_column() - s.x);
}

double PlatformerDomain::heuristic(const State& s) const { return std::max(0, level_->goal_column() - s.x); }

ReachableCount platformer_reachable_states(const TileGrid& grid, std::size_t cap) {
  if (cap < 1) throw Error(ErrorCode::InvalidArgument, "reachability cap must be positive");
  const PlatformerLevel level(grid, false);
  const PlatformerState s0 = level.start();
  std::unordered_set<AgentState> seen{AgentState{s0.x, s0.y, s0.vy}};
  std::deque<PlatformerState> queue{s0};
  ReachableCount result{1, false};
  while (!queue.empty()) {
    const PlatformerState s = queue.front();
    queue.pop_front();
    for (int a = 0; a < kPlatformerActionCount; ++a) {
      PlatformerState n = platformer_step(level, s, static_cast<PlatformerAction>(a));
      if (!n.alive) continue;
      n.tick = 0;
      if (!seen.insert(AgentState{n.x, n.y, n.vy}).second) continue;
      if (result.count == cap) {
        result.truncated = true;
        return result;
      }
      ++result.count;
      queue.push_back(n);
    }
  }
  return result;
}

SearchResult<PlatformerState> solve_platformer(const TileGrid& grid, std::size_t budget) {
  const PlatformerLevel level(grid);
  return astar(PlatformerDomain(level), level.start(), budget);
}

SearchResult<AgentState> project_to_agent(const SearchResult<PlatformerState>& r) {
  SearchResult<AgentState> out;
  out.solved = r.solved;
  out.budget_exhausted = r.budget_exhausted;
  out.actions = r.actions;
  for (const auto& s : r.path_states) out.path_states.push_back({s.x, s.y, s.vy});
  std::unordered_set<AgentState> seen;
  for (const auto& s : r.expanded) {
    AgentState a{s.x, s.y, s.vy};
    if (seen.insert(a).second) out.expanded.push_back(a);
  }
  out.expansions_total = out.expanded.size();
  return out;
}

}  // namespace pcgeval
