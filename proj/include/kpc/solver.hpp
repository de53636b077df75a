#pragma once

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "kpc/bitset.hpp"
#include "kpc/bounds.hpp"
#include "kpc/core.hpp"
#include "kpc/error.hpp"
#include "kpc/heuristics.hpp"

namespace kpc {

enum class SolveStatus { Optimal, Feasible, Infeasible, Unknown };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::Feasible: return "Feasible";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::Unknown: return "Unknown";
  }
  return "Unknown";
}

struct SolveLimits {
  std::optional<double> time_limit_seconds;  // must be > 0 when set
  std::optional<uint64_t> node_limit;        // must be > 0 when set
};

struct SolveOptions {
  SolveLimits limits;
  bool use_clique_bound = false;
};

struct SolveResult {
  SolveStatus status = SolveStatus::Unknown;
  std::optional<Solution> best;  // absent for Infeasible/Unknown
  int64_t upper_bound = 0;       // valid global upper bound at termination
  double gap_percent = 0.0;      // 100 * (UB - LB) / UB, 0 when UB == 0
  uint64_t nodes = 0;            // B&B nodes expanded
  double wall_time_seconds = 0.0;
};

struct PreprocessResult {
  Instance reduced;
  std::vector<int32_t> original_index;  // reduced index -> original index
};

/// Drops items that can never be selected (weight above capacity) and
/// re-indexes the conflict edges. Solving the reduced instance and mapping
/// the selection back through `original_index` solves the original.
inline PreprocessResult preprocess(const Instance& inst) {
  PreprocessResult out;
  const int32_t n = inst.num_items();
  std::vector<int32_t> new_index(n, -1);
  InstanceData raw;
  raw.capacity = inst.capacity;
  raw.name = inst.name;
  for (int32_t i = 0; i < n; ++i) {
    if (inst.weights[i] > inst.capacity) continue;
    new_index[i] = static_cast<int32_t>(raw.profits.size());
    raw.profits.push_back(inst.profits[i]);
    raw.weights.push_back(inst.weights[i]);
    out.original_index.push_back(i);
  }
  for (const auto& [a, b] : inst.edges)
    if (new_index[a] >= 0 && new_index[b] >= 0)
      raw.edges.emplace_back(new_index[a], new_index[b]);
  out.reduced = validate_instance(std::move(raw));
  return out;
}

namespace detail {

// Depth-first branch and bound over a preprocessed instance. Items are
// re-indexed by ratio rank ("positions"), so the branching item is always
// the first set bit of the free mask and the bound scan walks the mask in
// ratio order. Including a position removes all its conflict neighbors from
// the free mask of the subtree.
class BbSearch {
 public:
  BbSearch(const Instance& inst, const SolveOptions& opts,
           std::chrono::steady_clock::time_point start)
      : inst_(inst),
        n_(inst.num_items()),
        opts_(opts),
        start_(start),
        order_(ratio_order(inst)) {
    weight_.resize(n_);
    profit_.resize(n_);
    pos_of_item_.resize(n_);
    for (int32_t p = 0; p < n_; ++p) {
      weight_[p] = inst.weights[order_[p]];
      profit_[p] = inst.profits[order_[p]];
      pos_of_item_[order_[p]] = p;
    }
    neighbors_.assign(n_, Bitset(n_));
    for (const auto& [a, b] : inst.edges) {
      neighbors_[pos_of_item_[a]].set(pos_of_item_[b]);
      neighbors_[pos_of_item_[b]].set(pos_of_item_[a]);
    }
    free_at_depth_.assign(n_ + 2, Bitset(n_));
    if (opts_.use_clique_bound) {
      for (const auto& block : greedy_clique_partition(inst)) {
        std::vector<int32_t> positions;
        positions.reserve(block.size());
        for (int32_t v : block) positions.push_back(pos_of_item_[v]);
        blocks_.push_back(std::move(positions));
      }
    }
  }

  /// Seeds the incumbent with a feasible solution given in item indices.
  void set_incumbent(const Solution& sol) {
    best_profit_ = sol.profit;
    best_positions_.clear();
    for (int32_t v : sol.selected) best_positions_.push_back(pos_of_item_[v]);
  }

  void run() {
    Bitset& root = free_at_depth_[0];
    for (int32_t p = 0; p < n_; ++p) root.set(p);
    included_.clear();
    open_bounds_.clear();
    dfs(0, inst_.capacity, 0);
  }

  bool aborted() const { return aborted_; }
  uint64_t nodes() const { return nodes_; }
  int64_t best_profit() const { return best_profit_; }

  int64_t frontier_upper_bound() const {
    return std::max(best_profit_, frontier_ub_);
  }

  /// Incumbent selection translated back to item indices.
  std::vector<int32_t> best_items() const {
    std::vector<int32_t> items;
    items.reserve(best_positions_.size());
    for (int32_t p : best_positions_) items.push_back(order_[p]);
    std::sort(items.begin(), items.end());
    return items;
  }

 private:
  int64_t dantzig(const Bitset& free, int64_t residual) const {
    int64_t whole = 0;
    int64_t rem = residual;
    const size_t nw = free.word_count();
    for (size_t wi = 0; wi < nw; ++wi) {
      uint64_t w = free.word(wi);
      while (w) {
        const int32_t p = static_cast<int32_t>((wi << 6) +
                                               std::countr_zero(w));
        w &= w - 1;
        const int64_t iw = weight_[p];
        if (iw > residual) continue;
        if (iw <= rem) {
          whole += profit_[p];
          rem -= iw;
          if (rem == 0) return whole;
        } else {
          return whole + (rem * profit_[p]) / iw;
        }
      }
    }
    return whole;
  }

  // Clique-partition tightening, valid because each block admits at most
  // one selected member. Optional, see SolveOptions.
  int64_t clique_bound(const Bitset& free, int64_t residual) const {
    std::vector<std::pair<int64_t, int64_t>> pseudo;
    pseudo.reserve(blocks_.size());
    for (const auto& block : blocks_) {
      int64_t bp = -1, bw = 0;
      for (int32_t p : block) {
        if (!free.test(p) || weight_[p] > residual) continue;
        if (profit_[p] > bp) bp = profit_[p];
        if (bw == 0 || weight_[p] < bw) bw = weight_[p];
      }
      if (bp >= 0) pseudo.emplace_back(bp, bw);
    }
    std::sort(pseudo.begin(), pseudo.end(),
              [](const auto& a, const auto& b) {
                const int64_t lhs = a.first * b.second;
                const int64_t rhs = b.first * a.second;
                if (lhs != rhs) return lhs > rhs;
                return a < b;
              });
    return dantzig_floor(pseudo, residual);
  }

  void dfs(int32_t depth, int64_t residual, int64_t profit) {
    if (opts_.limits.node_limit && nodes_ >= *opts_.limits.node_limit) {
      mark_aborted();
      return;
    }
    ++nodes_;
    if (opts_.limits.time_limit_seconds && (nodes_ & 1023) == 0) {
      const std::chrono::duration<double> elapsed =
          std::chrono::steady_clock::now() - start_;
      if (elapsed.count() > *opts_.limits.time_limit_seconds) {
        mark_aborted();
        return;
      }
    }

    const Bitset& free = free_at_depth_[depth];
    int64_t bound = profit + dantzig(free, residual);
    if (opts_.use_clique_bound)
      bound = std::min(bound, profit + clique_bound(free, residual));
    if (bound <= best_profit_) return;

    // First free position that still fits; none means this node is a leaf
    // and, having survived the prune, a new incumbent.
    int32_t branch = -1;
    for (int32_t p = free.next_set(0); p >= 0; p = free.next_set(p + 1)) {
      if (weight_[p] <= residual) {
        branch = p;
        break;
      }
    }
    if (branch < 0) {
#ifndef NDEBUG
      // propagation audit: an included item never meets one of its
      // conflict neighbors in the same selection
      for (size_t a = 0; a < included_.size(); ++a)
        for (size_t b = a + 1; b < included_.size(); ++b)
          assert(!neighbors_[included_[a]].test(included_[b]));
#endif
      best_profit_ = profit;
      best_positions_ = included_;
      return;
    }

    open_bounds_.push_back(bound);

    // Include branch first: high-ratio items make good incumbents early.
    // Including an item excludes all of its conflict neighbors.
    Bitset& child = free_at_depth_[depth + 1];
    child.assign_and_not(free, neighbors_[branch]);
    child.reset(branch);
    included_.push_back(branch);
    dfs(depth + 1, residual - weight_[branch], profit + profit_[branch]);
    included_.pop_back();

    if (!aborted_) {
      child = free;
      child.reset(branch);
      dfs(depth + 1, residual, profit);
    }

    open_bounds_.pop_back();
  }

  void mark_aborted() {
    if (!aborted_) {
      aborted_ = true;
      frontier_ub_ = best_profit_;
      for (int64_t b : open_bounds_) frontier_ub_ = std::max(frontier_ub_, b);
    }
  }

  const Instance& inst_;
  int32_t n_;
  SolveOptions opts_;
  std::chrono::steady_clock::time_point start_;
  std::vector<int32_t> order_;        // position -> item index
  std::vector<int32_t> pos_of_item_;  // item index -> position
  std::vector<int64_t> weight_, profit_;  // by position
  std::vector<Bitset> neighbors_;         // by position
  std::vector<std::vector<int32_t>> blocks_;  // clique blocks, by position
  std::vector<Bitset> free_at_depth_;
  std::vector<int32_t> included_;
  std::vector<int64_t> open_bounds_;
  std::vector<int32_t> best_positions_;
  int64_t best_profit_ = -1;
  int64_t frontier_ub_ = 0;
  uint64_t nodes_ = 0;
  bool aborted_ = false;
};

inline void check_limits(const SolveLimits& limits) {
  if (limits.time_limit_seconds && *limits.time_limit_seconds <= 0)
    fail(ErrorCode::LimitsInvalid, "time limit must be positive");
  if (limits.node_limit && *limits.node_limit == 0)
    fail(ErrorCode::LimitsInvalid, "node limit must be positive");
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  const std::chrono::duration<double> d =
      std::chrono::steady_clock::now() - t0;
  return d.count();
}

}  // namespace detail

/// Depth-first branch and bound with conflict propagation. Branches on the
/// first free item in ratio order, include branch first; prunes a node when
/// its bound does not exceed the incumbent (bounds are integral). The
/// incumbent is initialized with greedy_construct + local_search. Within the
/// limits the result is Optimal; otherwise Feasible with the incumbent and a
/// valid global upper bound. The timer covers the whole call, warm start
/// included.
inline SolveResult solve_bb(const Instance& inst,
                            const SolveOptions& opts = {}) {
  detail::check_limits(opts.limits);
  const auto t0 = std::chrono::steady_clock::now();

  PreprocessResult pre = preprocess(inst);
  Solution warm = local_search(pre.reduced, greedy_construct(pre.reduced));

  detail::BbSearch search(pre.reduced, opts, t0);
  search.set_incumbent(warm);
  search.run();

  std::vector<int32_t> selected;
  for (int32_t i : search.best_items())
    selected.push_back(pre.original_index[i]);

  SolveResult res;
  res.best = evaluate(inst, std::move(selected));
  res.nodes = search.nodes();
  if (search.aborted()) {
    res.status = SolveStatus::Feasible;
    res.upper_bound = search.frontier_upper_bound();
    res.gap_percent =
        res.upper_bound > 0
            ? 100.0 * static_cast<double>(res.upper_bound - res.best->profit) /
                  static_cast<double>(res.upper_bound)
            : 0.0;
  } else {
    res.status = SolveStatus::Optimal;
    res.upper_bound = res.best->profit;
    res.gap_percent = 0.0;
  }
  res.wall_time_seconds = detail::seconds_since(t0);
  return res;
}

/// Exhaustive reference solver: plain include/exclude enumeration in item
/// index order, pruning only on capacity and conflict feasibility. No bound
/// computations of any kind, so it is an independent check of solve_bb.
/// Guarded to n <= 30.
inline SolveResult solve_oracle(const Instance& inst) {
  const int32_t n = inst.num_items();
  if (n > 30)
    fail(ErrorCode::TooLargeForOracle,
         "oracle accepts at most 30 items, got " + std::to_string(n));
  const auto t0 = std::chrono::steady_clock::now();

  std::vector<uint64_t> adj(n, 0);
  for (const auto& [a, b] : inst.edges) {
    adj[a] |= uint64_t{1} << b;
    adj[b] |= uint64_t{1} << a;
  }

  uint64_t best_mask = 0;
  int64_t best_profit = -1;
  uint64_t nodes = 0;

  struct Frame {
    const Instance& inst;
    const std::vector<uint64_t>& adj;
    uint64_t& nodes;
    uint64_t& best_mask;
    int64_t& best_profit;

    void dfs(int32_t i, uint64_t sel, int64_t profit, int64_t weight) {
      ++nodes;
      if (i == inst.num_items()) {
        if (profit > best_profit) {
          best_profit = profit;
          best_mask = sel;
        }
        return;
      }
      if (weight + inst.weights[i] <= inst.capacity &&
          (adj[i] & sel) == 0)
        dfs(i + 1, sel | (uint64_t{1} << i), profit + inst.profits[i],
            weight + inst.weights[i]);
      dfs(i + 1, sel, profit, weight);
    }
  } frame{inst, adj, nodes, best_mask, best_profit};
  frame.dfs(0, 0, 0, 0);

  std::vector<int32_t> selected;
  for (int32_t i = 0; i < n; ++i)
    if (best_mask & (uint64_t{1} << i)) selected.push_back(i);

  SolveResult res;
  res.status = SolveStatus::Optimal;
  res.best = evaluate(inst, std::move(selected));
  res.upper_bound = res.best->profit;
  res.gap_percent = 0.0;
  res.nodes = nodes;
  res.wall_time_seconds = detail::seconds_since(t0);
  return res;
}

}  // namespace kpc
