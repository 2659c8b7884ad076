#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <queue>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "pcgeval/error.hpp"

namespace pcgeval {

inline constexpr std::size_t kDefaultBudget = 1'000'000;

template <class State>
struct SearchResult {
  bool solved = false;
  bool budget_exhausted = false;
  std::vector<int> actions;
  // start..goal inclusive when solved, empty otherwise.
  std::vector<State> path_states;
  // Every state popped from the frontier and expanded, in expansion order.
  // The goal state is popped but not expanded, so it never appears here.
  std::vector<State> expanded;
  std::size_t expansions_total = 0;
};

// A domain exposes its state type, a non-negative heuristic, a goal test and
// its successors in a fixed order. Every transition costs 1.
template <class D>
concept SearchDomain = requires(const D& d, const typename D::State& s) {
  { d.heuristic(s) } -> std::convertible_to<double>;
  { d.is_goal(s) } -> std::same_as<bool>;
  d.for_each_successor(s, [](int, const typename D::State&) {});
};

namespace detail {

struct FrontierEntry {
  double f;
  int g;
  std::uint64_t seq;
  std::size_t node;
};

// Lowest f first, then deepest g, then earliest insertion.
struct FrontierOrder {
  bool operator()(const FrontierEntry& a, const FrontierEntry& b) const {
    if (a.f != b.f) return a.f > b.f;
    if (a.g != b.g) return a.g < b.g;
    return a.seq > b.seq;
  }
};

}  // namespace detail

// Closed-set A* with lazy deletion: improved nodes are re-inserted and stale
// frontier entries skipped, so each state is expanded at most once.
template <SearchDomain D, class Hash = std::hash<typename D::State>>
SearchResult<typename D::State> astar(const D& domain, const typename D::State& start,
                                      std::size_t budget = kDefaultBudget) {
  using State = typename D::State;
  if (budget < 1) throw Error(ErrorCode::InvalidArgument, "search budget must be at least 1");

  struct Node {
    State state;
    int g;
    std::size_t parent;
    int action;
    bool closed;
  };
  constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);

  std::vector<Node> nodes;
  std::unordered_map<State, std::size_t, Hash> index;
  std::priority_queue<detail::FrontierEntry, std::vector<detail::FrontierEntry>, detail::FrontierOrder> frontier;
  std::uint64_t seq = 0;

  nodes.push_back(Node{start, 0, kNoParent, -1, false});
  index.emplace(start, 0);
  frontier.push({static_cast<double>(domain.heuristic(start)), 0, seq++, 0});

  SearchResult<State> result;
  while (!frontier.empty()) {
    const detail::FrontierEntry top = frontier.top();
    frontier.pop();
    if (nodes[top.node].closed || nodes[top.node].g != top.g) continue;

    if (domain.is_goal(nodes[top.node].state)) {
      result.solved = true;
      std::vector<std::size_t> chain;
      for (std::size_t n = top.node; n != kNoParent; n = nodes[n].parent) chain.push_back(n);
      for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        result.path_states.push_back(nodes[*it].state);
        if (nodes[*it].parent != kNoParent) result.actions.push_back(nodes[*it].action);
      }
      return result;
    }
    if (result.expansions_total >= budget) {
      result.budget_exhausted = true;
      return result;
    }

    nodes[top.node].closed = true;
    result.expanded.push_back(nodes[top.node].state);
    ++result.expansions_total;

    const std::size_t current = top.node;
    const int g_next = nodes[current].g + 1;
    const State expanding = nodes[current].state;  // nodes may reallocate below
    domain.for_each_successor(expanding, [&](int action, const State& next) {
      auto [it, inserted] = index.try_emplace(next, nodes.size());
      if (inserted) {
        nodes.push_back(Node{next, g_next, current, action, false});
      } else {
        Node& existing = nodes[it->second];
        if (existing.closed || existing.g <= g_next) return;
        existing.g = g_next;
        existing.parent = current;
        existing.action = action;
      }
      const std::size_t id = it->second;
      frontier.push({g_next + static_cast<double>(domain.heuristic(next)), g_next, seq++, id});
    });
  }
  return result;
}

// Number of expanded states that are not on the returned solution path.
template <class State, class Hash = std::hash<State>>
std::size_t off_path_expansions(const SearchResult<State>& r) {
  if (!r.solved) throw Error(ErrorCode::NotSolved, "off-path expansions need a solved search");
  std::unordered_set<State, Hash> on_path(r.path_states.begin(), r.path_states.end());
  std::size_t count = 0;
  for (const State& s : r.expanded) {
    if (!on_path.contains(s)) ++count;
  }
  return count;
}

}  // namespace pcgeval
