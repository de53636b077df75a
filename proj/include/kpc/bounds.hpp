#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "kpc/core.hpp"
#include "kpc/error.hpp"

namespace kpc {

/// True when item a strictly precedes item b in profit/weight ratio order.
/// Ratios are compared by cross-multiplication so the ordering is exact and
/// platform-independent; ties break toward the lower index.
inline bool ratio_precedes(const Instance& inst, int32_t a, int32_t b) {
  const int64_t lhs = inst.profits[a] * inst.weights[b];
  const int64_t rhs = inst.profits[b] * inst.weights[a];
  if (lhs != rhs) return lhs > rhs;
  return a < b;
}

/// Item indices sorted by profit/weight ratio descending, ties toward the
/// lower index.
inline std::vector<int32_t> ratio_order(const Instance& inst) {
  std::vector<int32_t> order(inst.num_items());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int32_t a, int32_t b) {
    return ratio_precedes(inst, a, b);
  });
  return order;
}

/// Scratch state for bound evaluation at a search node: which items are
/// still undecided, how much capacity remains, and the profit of the items
/// already committed.
struct BoundContext {
  std::vector<int32_t> ratio_order;  // permutation of [0, n)
  std::vector<char> free;            // free[i] != 0 -> item i undecided
  int64_t residual_capacity = 0;
  int64_t fixed_profit = 0;
};

inline BoundContext root_context(const Instance& inst) {
  BoundContext ctx;
  ctx.ratio_order = ratio_order(inst);
  ctx.free.assign(inst.num_items(), 1);
  ctx.residual_capacity = inst.capacity;
  ctx.fixed_profit = 0;
  return ctx;
}

namespace detail {

// Floor of the Dantzig bound over (profit, weight) pairs already sorted by
// ratio descending. Items heavier than `capacity` can never complete a
// solution and are skipped up front; the first remaining item that does not
// fit the running capacity is taken fractionally.
inline int64_t dantzig_floor(const std::vector<std::pair<int64_t, int64_t>>&
                                 items_by_ratio,
                             int64_t capacity) {
  int64_t whole = 0;
  int64_t rem = capacity;
  for (const auto& [p, w] : items_by_ratio) {
    if (w > capacity) continue;
    if (w <= rem) {
      whole += p;
      rem -= w;
      if (rem == 0) break;
    } else {
      return whole + (rem * p) / w;
    }
  }
  return whole;
}

}  // namespace detail

/// Fractional-knapsack upper bound on the best completion of a node: the
/// conflict constraints are dropped, free items that cannot fit the residual
/// capacity are discarded, and the remaining free items are packed greedily
/// by ratio with one fractional item at the boundary. Integral data make the
/// floored value a valid bound.
inline int64_t fractional_knapsack_ub(const BoundContext& ctx,
                                      const Instance& inst) {
  int64_t whole = 0;
  int64_t rem = ctx.residual_capacity;
  for (int32_t i : ctx.ratio_order) {
    if (!ctx.free[i]) continue;
    const int64_t w = inst.weights[i];
    if (w > ctx.residual_capacity) continue;
    if (w <= rem) {
      whole += inst.profits[i];
      rem -= w;
      if (rem == 0) break;
    } else {
      return ctx.fixed_profit + whole + (rem * inst.profits[i]) / w;
    }
  }
  return ctx.fixed_profit + whole;
}

/// Clique partition of the conflict graph: vertices are processed by degree
/// descending (ties toward the lower index) and each joins the first block
/// it conflicts with entirely, so every block is a clique.
inline std::vector<std::vector<int32_t>> greedy_clique_partition(
    const Instance& inst) {
  const int32_t n = inst.num_items();
  auto adj = neighbor_lists(inst);
  std::vector<int32_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int32_t a, int32_t b) {
    return adj[a].size() > adj[b].size();
  });

  auto adjacent = [&](int32_t a, int32_t b) {
    return std::binary_search(adj[a].begin(), adj[a].end(), b);
  };

  std::vector<std::vector<int32_t>> blocks;
  for (int32_t v : order) {
    bool placed = false;
    for (auto& block : blocks) {
      bool all = true;
      for (int32_t u : block)
        if (!adjacent(v, u)) {
          all = false;
          break;
        }
      if (all) {
        block.push_back(v);
        placed = true;
        break;
      }
    }
    if (!placed) blocks.push_back({v});
  }
  for (auto& block : blocks) std::sort(block.begin(), block.end());
  return blocks;
}

/// Upper bound exploiting that at most one item per conflict clique can be
/// selected: each block is replaced by a dominating pseudo-item (its maximum
/// profit, its minimum weight) and the fractional-knapsack bound is taken
/// over those. `cliques` must partition the free items of `ctx` into blocks
/// that are cliques of the conflict graph.
inline int64_t clique_partition_ub(const BoundContext& ctx,
                                   const Instance& inst,
                                   const std::vector<std::vector<int32_t>>&
                                       cliques) {
  const int32_t n = inst.num_items();
  std::vector<char> seen(n, 0);
  auto adj = neighbor_lists(inst);
  for (const auto& block : cliques) {
    if (block.empty())
      fail(ErrorCode::PartitionInvalid, "empty block in clique partition");
    for (int32_t v : block) {
      if (v < 0 || v >= n)
        fail(ErrorCode::PartitionInvalid,
             "block item " + std::to_string(v) + " outside [0," +
                 std::to_string(n) + ")");
      if (!ctx.free[v])
        fail(ErrorCode::PartitionInvalid,
             "block contains non-free item " + std::to_string(v));
      if (seen[v])
        fail(ErrorCode::PartitionInvalid,
             "item " + std::to_string(v) + " appears in two blocks");
      seen[v] = 1;
    }
    for (size_t a = 0; a < block.size(); ++a)
      for (size_t b = a + 1; b < block.size(); ++b)
        if (!std::binary_search(adj[block[a]].begin(), adj[block[a]].end(),
                                block[b]))
          fail(ErrorCode::PartitionInvalid,
               "block is not a clique: items " + std::to_string(block[a]) +
                   " and " + std::to_string(block[b]) + " do not conflict");
  }
  for (int32_t i = 0; i < n; ++i)
    if (ctx.free[i] && !seen[i])
      fail(ErrorCode::PartitionInvalid,
           "free item " + std::to_string(i) + " is missing from the partition");

  // Dominating pseudo-item per block: any single selectable member has
  // profit <= max p and weight >= min w.
  std::vector<std::pair<int64_t, int64_t>> pseudo;
  pseudo.reserve(cliques.size());
  for (const auto& block : cliques) {
    int64_t p = 0, w = INT64_MAX;
    for (int32_t v : block) {
      p = std::max(p, inst.profits[v]);
      w = std::min(w, inst.weights[v]);
    }
    pseudo.emplace_back(p, w);
  }
  std::sort(pseudo.begin(), pseudo.end(),
            [](const auto& a, const auto& b) {
              const int64_t lhs = a.first * b.second;
              const int64_t rhs = b.first * a.second;
              if (lhs != rhs) return lhs > rhs;
              return a < b;
            });
  return ctx.fixed_profit +
         detail::dantzig_floor(pseudo, ctx.residual_capacity);
}

}  // namespace kpc
