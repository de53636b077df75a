#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kpc/error.hpp"

namespace kpc {

/// A conflict edge, stored canonically with first < second.
using Edge = std::pair<int32_t, int32_t>;

/// Raw instance data as it arrives from a parser or a generator, before
/// normalization. validate_instance() turns it into an Instance.
struct InstanceData {
  std::vector<int64_t> profits;
  std::vector<int64_t> weights;
  int64_t capacity = 0;
  std::vector<Edge> edges;
  std::string name;
};

/// A knapsack-with-conflicts instance: n items with integer profits and
/// weights, a capacity, and a conflict graph given as an edge set.
/// Instances are immutable after construction and safe to share across
/// threads. Edges are canonical: first < second, sorted, no duplicates.
struct Instance {
  std::vector<int64_t> profits;
  std::vector<int64_t> weights;
  int64_t capacity = 0;
  std::vector<Edge> edges;
  std::string name;

  int32_t num_items() const { return static_cast<int32_t>(profits.size()); }

  bool operator==(const Instance&) const = default;
};

/// A selected item subset with cached totals and feasibility verdict.
struct Solution {
  std::vector<int32_t> selected;  // sorted ascending
  int64_t profit = 0;
  int64_t weight = 0;
  bool feasible = true;
};

/// Normalizes and checks raw instance data. Edges are canonicalized to
/// first < second and duplicates are merged silently.
inline Instance validate_instance(InstanceData raw) {
  const size_t n = raw.profits.size();
  if (raw.weights.size() != n)
    fail(ErrorCode::SizeMismatch,
         "profits has " + std::to_string(n) + " entries but weights has " +
             std::to_string(raw.weights.size()));
  if (raw.capacity < 0)
    fail(ErrorCode::CapacityNegative,
         "capacity " + std::to_string(raw.capacity) + " is negative");
  for (size_t i = 0; i < n; ++i) {
    if (raw.profits[i] < 1)
      fail(ErrorCode::NegativeOrZeroValue,
           "profit of item " + std::to_string(i) + " is " +
               std::to_string(raw.profits[i]) + ", must be >= 1");
    if (raw.weights[i] < 1)
      fail(ErrorCode::NegativeOrZeroValue,
           "weight of item " + std::to_string(i) + " is " +
               std::to_string(raw.weights[i]) + ", must be >= 1");
  }
  for (auto& [a, b] : raw.edges) {
    if (a == b)
      fail(ErrorCode::SelfLoop,
           "edge (" + std::to_string(a) + "," + std::to_string(b) +
               ") is a self-loop");
    if (a < 0 || b < 0 || a >= static_cast<int64_t>(n) ||
        b >= static_cast<int64_t>(n))
      fail(ErrorCode::IndexOutOfRange,
           "edge (" + std::to_string(a) + "," + std::to_string(b) +
               ") references an item outside [0," + std::to_string(n) + ")");
    if (a > b) std::swap(a, b);
  }
  std::sort(raw.edges.begin(), raw.edges.end());
  raw.edges.erase(std::unique(raw.edges.begin(), raw.edges.end()),
                  raw.edges.end());

  Instance inst;
  inst.profits = std::move(raw.profits);
  inst.weights = std::move(raw.weights);
  inst.capacity = raw.capacity;
  inst.edges = std::move(raw.edges);
  inst.name = std::move(raw.name);
  return inst;
}

/// Evaluates an item subset: exact profit/weight sums plus a feasibility
/// verdict against the capacity and every conflict edge. Duplicate indices
/// are treated as set membership.
inline Solution evaluate(const Instance& inst, std::vector<int32_t> selected) {
  const int32_t n = inst.num_items();
  for (int32_t i : selected)
    if (i < 0 || i >= n)
      fail(ErrorCode::IndexOutOfRange,
           "selected item " + std::to_string(i) + " outside [0," +
               std::to_string(n) + ")");
  std::sort(selected.begin(), selected.end());
  selected.erase(std::unique(selected.begin(), selected.end()),
                 selected.end());

  Solution sol;
  std::vector<char> in_sel(n, 0);
  for (int32_t i : selected) {
    sol.profit += inst.profits[i];
    sol.weight += inst.weights[i];
    in_sel[i] = 1;
  }
  bool conflict_free = true;
  for (const auto& [a, b] : inst.edges)
    if (in_sel[a] && in_sel[b]) {
      conflict_free = false;
      break;
    }
  sol.selected = std::move(selected);
  sol.feasible = sol.weight <= inst.capacity && conflict_free;
  return sol;
}

/// Per-item sorted neighbor lists of the conflict graph.
inline std::vector<std::vector<int32_t>> neighbor_lists(const Instance& inst) {
  std::vector<std::vector<int32_t>> adj(inst.num_items());
  for (const auto& [a, b] : inst.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& nb : adj) std::sort(nb.begin(), nb.end());
  return adj;
}

}  // namespace kpc
