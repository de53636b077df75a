#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "kpc/bounds.hpp"
#include "kpc/core.hpp"
#include "kpc/error.hpp"

namespace kpc {

namespace detail {

// Incremental selection state for the constructive heuristics: membership
// flags plus, for every item, the number of selected conflict neighbors.
struct SelectionState {
  std::vector<char> in_sel;
  std::vector<int32_t> conflicts;  // |adj[v] ∩ selection| per item v
  int64_t profit = 0;
  int64_t weight = 0;

  explicit SelectionState(int32_t n) : in_sel(n, 0), conflicts(n, 0) {}

  void add(const Instance& inst, const std::vector<std::vector<int32_t>>& adj,
           int32_t v) {
    in_sel[v] = 1;
    profit += inst.profits[v];
    weight += inst.weights[v];
    for (int32_t u : adj[v]) ++conflicts[u];
  }

  void remove(const Instance& inst,
              const std::vector<std::vector<int32_t>>& adj, int32_t v) {
    in_sel[v] = 0;
    profit -= inst.profits[v];
    weight -= inst.weights[v];
    for (int32_t u : adj[v]) --conflicts[u];
  }
};

// Greedily adds free, fitting, conflict-free items in ratio order. Items in
// `banned` (at most two entries) are never added.
inline void complete_greedily(const Instance& inst,
                              const std::vector<int32_t>& order,
                              const std::vector<std::vector<int32_t>>& adj,
                              SelectionState& state, int32_t ban0 = -1,
                              int32_t ban1 = -1) {
  for (int32_t v : order) {
    if (state.in_sel[v] || v == ban0 || v == ban1) continue;
    if (state.conflicts[v] != 0) continue;
    if (state.weight + inst.weights[v] > inst.capacity) continue;
    state.add(inst, adj, v);
  }
}

inline Solution to_solution(const Instance& inst,
                            const SelectionState& state) {
  std::vector<int32_t> selected;
  for (int32_t v = 0; v < inst.num_items(); ++v)
    if (state.in_sel[v]) selected.push_back(v);
  return evaluate(inst, std::move(selected));
}

}  // namespace detail

/// Greedy construction: scan items by profit/weight ratio (ties toward the
/// lower index) and take each item that fits the residual capacity and
/// conflicts with nothing already taken. Always feasible.
inline Solution greedy_construct(const Instance& inst) {
  const auto order = ratio_order(inst);
  const auto adj = neighbor_lists(inst);
  detail::SelectionState state(inst.num_items());
  detail::complete_greedily(inst, order, adj, state);
  return detail::to_solution(inst, state);
}

/// Best-improvement local search over add / drop / swap moves. Every
/// candidate move is scored after a deterministic greedy completion (items
/// removed by the move stay out during that completion); the best strictly
/// improving candidate is applied, ties broken by the smallest
/// (move-type, item indices) with add < drop < swap. The result is feasible
/// and never worse than `start`.
inline Solution local_search(const Instance& inst, const Solution& start) {
  Solution checked = evaluate(inst, start.selected);
  if (!checked.feasible)
    fail(ErrorCode::InfeasibleStart,
         "local_search requires a feasible starting solution");

  const int32_t n = inst.num_items();
  const auto order = ratio_order(inst);
  const auto adj = neighbor_lists(inst);

  detail::SelectionState cur(n);
  for (int32_t v : checked.selected) cur.add(inst, adj, v);

  auto adjacent = [&](int32_t a, int32_t b) {
    return std::binary_search(adj[a].begin(), adj[a].end(), b);
  };

  // Scores one candidate: copy the current state, apply the move, complete
  // greedily, return the resulting profit.
  detail::SelectionState trial(n);
  auto score = [&](int32_t out0, int32_t out1, int32_t in0) {
    trial = cur;
    if (out0 >= 0) trial.remove(inst, adj, out0);
    if (out1 >= 0) trial.remove(inst, adj, out1);
    if (in0 >= 0) trial.add(inst, adj, in0);
    detail::complete_greedily(inst, order, adj, trial, out0, out1);
    return trial.profit;
  };

  while (true) {
    int64_t best_profit = cur.profit;
    int32_t best_out = -1, best_in = -1;
    bool found = false;

    // add moves
    for (int32_t u = 0; u < n; ++u) {
      if (cur.in_sel[u] || cur.conflicts[u] != 0) continue;
      if (cur.weight + inst.weights[u] > inst.capacity) continue;
      int64_t p = score(-1, -1, u);
      if (p > best_profit) {
        best_profit = p;
        best_out = -1;
        best_in = u;
        found = true;
      }
    }
    // drop moves
    for (int32_t s = 0; s < n; ++s) {
      if (!cur.in_sel[s]) continue;
      int64_t p = score(s, -1, -1);
      if (p > best_profit) {
        best_profit = p;
        best_out = s;
        best_in = -1;
        found = true;
      }
    }
    // swap moves (one selected out, one unselected in)
    for (int32_t s = 0; s < n; ++s) {
      if (!cur.in_sel[s]) continue;
      for (int32_t u = 0; u < n; ++u) {
        if (cur.in_sel[u]) continue;
        if (cur.weight - inst.weights[s] + inst.weights[u] > inst.capacity)
          continue;
        const int32_t c = cur.conflicts[u];
        if (c > 1 || (c == 1 && !adjacent(u, s))) continue;
        int64_t p = score(s, -1, u);
        if (p > best_profit) {
          best_profit = p;
          best_out = s;
          best_in = u;
          found = true;
        }
      }
    }

    if (!found) break;
    if (best_out >= 0) cur.remove(inst, adj, best_out);
    if (best_in >= 0) cur.add(inst, adj, best_in);
    detail::complete_greedily(inst, order, adj, cur, best_out, -1);
  }

  return detail::to_solution(inst, cur);
}

}  // namespace kpc
