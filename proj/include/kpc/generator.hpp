#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "kpc/core.hpp"
#include "kpc/error.hpp"

// Deterministic reconstruction of the two classic benchmark families for
// the knapsack problem with conflicts. Every instance is a pure function of
// its GeneratorSpec (master seed included): the spec is encoded into a
// canonical string, hashed to seed a splitmix64 stream, and all draws come
// from that stream in a fixed order (weights, then profits for R instances,
// then conflict edges).

namespace kpc {

/// splitmix64: tiny constant-time PRNG that is trivially reproducible
/// across languages and platforms.
struct SplitMix64 {
  uint64_t state = 0;

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform draw in [lo, hi] by modulo reduction. The bias is negligible
  /// for ranges far below 2^64 and the reduction is bit-identical
  /// everywhere.
  int64_t uniform(int64_t lo, int64_t hi) {
    return lo + static_cast<int64_t>(next() %
                                     static_cast<uint64_t>(hi - lo + 1));
  }
};

inline uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

enum class Family { Set1, Set2 };
enum class ProfitType { Random, Correlated };  // R / C

inline char profit_type_char(ProfitType t) {
  return t == ProfitType::Random ? 'R' : 'C';
}

struct GeneratorSpec {
  Family family = Family::Set1;
  int class_id = 0;  // set1: 1..8; unused for set2
  int32_t n_items = 0;
  int64_t weight_lo = 0, weight_hi = 0;
  int64_t base_capacity = 0;
  int capacity_multiplier = 1;  // set1: 1|3|10; set2: always 1
  ProfitType profit_type = ProfitType::Random;
  double density = 0.0;
  int replicate = 0;  // 0..9
  uint64_t master_seed = 0;
};

namespace detail {

inline const int32_t kSet1Items[8] = {120, 250, 500, 1000, 60, 120, 349, 501};
inline const double kSet1Densities[9] = {0.1, 0.2, 0.3, 0.4, 0.5,
                                         0.6, 0.7, 0.8, 0.9};
inline const int kSet1Multipliers[3] = {1, 3, 10};
inline const double kSet2Densities[6] = {0.001, 0.002, 0.005, 0.01,
                                         0.02,  0.05};

/// Density as an exact count of ten-thousandths; the benchmark grids are
/// all exact at that resolution.
inline int64_t density_e4(double density) {
  return std::llround(density * 10000.0);
}

inline std::string format_density(int64_t d_e4, int decimals) {
  char buf[40];
  if (decimals == 3)
    std::snprintf(buf, sizeof buf, "%lld.%03lld",
                  static_cast<long long>(d_e4 / 10000),
                  static_cast<long long>((d_e4 % 10000) / 10));
  else
    std::snprintf(buf, sizeof buf, "%lld.%04lld",
                  static_cast<long long>(d_e4 / 10000),
                  static_cast<long long>(d_e4 % 10000));
  return buf;
}

}  // namespace detail

inline void validate_spec(const GeneratorSpec& spec) {
  const int64_t d_e4 = detail::density_e4(spec.density);
  if (spec.replicate < 0 || spec.replicate > 9)
    fail(ErrorCode::SpecInvalid,
         "replicate must be in 0..9, got " + std::to_string(spec.replicate));
  if (spec.family == Family::Set1) {
    if (spec.class_id < 1 || spec.class_id > 8)
      fail(ErrorCode::SpecInvalid,
           "set1 class must be 1..8, got " + std::to_string(spec.class_id));
    if (spec.n_items != detail::kSet1Items[spec.class_id - 1])
      fail(ErrorCode::SpecInvalid,
           "set1 class " + std::to_string(spec.class_id) + " has " +
               std::to_string(detail::kSet1Items[spec.class_id - 1]) +
               " items, got " + std::to_string(spec.n_items));
    const bool small = spec.class_id <= 4;
    if (spec.weight_lo != (small ? 20 : 250) ||
        spec.weight_hi != (small ? 100 : 500))
      fail(ErrorCode::SpecInvalid, "set1 weight range mismatch");
    if (spec.base_capacity != (small ? 150 : 1000))
      fail(ErrorCode::SpecInvalid, "set1 base capacity mismatch");
    if (spec.capacity_multiplier != 1 && spec.capacity_multiplier != 3 &&
        spec.capacity_multiplier != 10)
      fail(ErrorCode::SpecInvalid, "set1 capacity multiplier must be 1|3|10");
    if (d_e4 < 1000 || d_e4 > 9000 || d_e4 % 1000 != 0)
      fail(ErrorCode::SpecInvalid,
           "set1 density must be one of 0.1..0.9");
  } else {
    if (spec.n_items != 500 && spec.n_items != 1000)
      fail(ErrorCode::SpecInvalid, "set2 item count must be 500 or 1000");
    if (spec.base_capacity != 1000 && spec.base_capacity != 2000)
      fail(ErrorCode::SpecInvalid, "set2 capacity must be 1000 or 2000");
    if (spec.capacity_multiplier != 1)
      fail(ErrorCode::SpecInvalid, "set2 capacity multiplier is fixed at 1");
    if (spec.weight_lo != 20 || spec.weight_hi != 100)
      fail(ErrorCode::SpecInvalid, "set2 weight range mismatch");
    bool ok = false;
    for (double d : detail::kSet2Densities)
      if (detail::density_e4(d) == d_e4) ok = true;
    if (!ok)
      fail(ErrorCode::SpecInvalid,
           "set2 density must be one of 0.001/0.002/0.005/0.01/0.02/0.05");
  }
}

inline GeneratorSpec set1_spec(int class_id, ProfitType type, int multiplier,
                               double density, int replicate,
                               uint64_t master_seed) {
  GeneratorSpec spec;
  spec.family = Family::Set1;
  spec.class_id = class_id;
  if (class_id >= 1 && class_id <= 8)
    spec.n_items = detail::kSet1Items[class_id - 1];
  const bool small = class_id <= 4;
  spec.weight_lo = small ? 20 : 250;
  spec.weight_hi = small ? 100 : 500;
  spec.base_capacity = small ? 150 : 1000;
  spec.capacity_multiplier = multiplier;
  spec.profit_type = type;
  spec.density = density;
  spec.replicate = replicate;
  spec.master_seed = master_seed;
  return spec;
}

inline GeneratorSpec set2_spec(int32_t n_items, int64_t capacity,
                               ProfitType type, double density, int replicate,
                               uint64_t master_seed) {
  GeneratorSpec spec;
  spec.family = Family::Set2;
  spec.class_id = 0;
  spec.n_items = n_items;
  spec.weight_lo = 20;
  spec.weight_hi = 100;
  spec.base_capacity = capacity;
  spec.capacity_multiplier = 1;
  spec.profit_type = type;
  spec.density = density;
  spec.replicate = replicate;
  spec.master_seed = master_seed;
  return spec;
}

/// Canonical spec encoding "family/class/n/mult/type/density/rep". Densities
/// print with 3 decimals for set1 and 4 for set2. Set2 has no class, so the
/// class slot carries the capacity, which set2 needs to stay injective.
inline std::string canonical_string(const GeneratorSpec& spec) {
  const int64_t d_e4 = detail::density_e4(spec.density);
  std::string s;
  if (spec.family == Family::Set1) {
    s = "set1/" + std::to_string(spec.class_id) + "/" +
        std::to_string(spec.n_items) + "/" +
        std::to_string(spec.capacity_multiplier) + "/";
    s += profit_type_char(spec.profit_type);
    s += "/" + detail::format_density(d_e4, 3) + "/" +
         std::to_string(spec.replicate);
  } else {
    s = "set2/" + std::to_string(spec.base_capacity) + "/" +
        std::to_string(spec.n_items) + "/1/";
    s += profit_type_char(spec.profit_type);
    s += "/" + detail::format_density(d_e4, 4) + "/" +
         std::to_string(spec.replicate);
  }
  return s;
}

/// Instance seed: FNV-1a of the canonical string, XOR the master seed.
inline uint64_t derive_seed(const GeneratorSpec& spec) {
  return fnv1a64(canonical_string(spec)) ^ spec.master_seed;
}

/// Exact conflict edge count for density d over n items: round-half-up of
/// d * n(n-1)/2, evaluated in integer arithmetic on ten-thousandths.
inline int64_t edge_count(int32_t n, double density) {
  const int64_t pairs = static_cast<int64_t>(n) * (n - 1) / 2;
  return (detail::density_e4(density) * pairs + 5000) / 10000;
}

namespace detail {

/// First `m` entries of a partial Fisher-Yates shuffle over all canonical
/// pairs (i, j), i < j, in lexicographic order.
inline std::vector<Edge> draw_edges(int32_t n, int64_t m, SplitMix64& rng) {
  const int64_t pairs = static_cast<int64_t>(n) * (n - 1) / 2;
  std::vector<uint32_t> codes;
  codes.reserve(pairs);
  for (int32_t i = 0; i < n; ++i)
    for (int32_t j = i + 1; j < n; ++j)
      codes.push_back(static_cast<uint32_t>(i) << 16 |
                      static_cast<uint32_t>(j));
  std::vector<Edge> edges;
  edges.reserve(m);
  for (int64_t k = 0; k < m; ++k) {
    const int64_t r =
        k + static_cast<int64_t>(rng.next() %
                                 static_cast<uint64_t>(pairs - k));
    std::swap(codes[k], codes[r]);
    edges.emplace_back(static_cast<int32_t>(codes[k] >> 16),
                       static_cast<int32_t>(codes[k] & 0xffff));
  }
  return edges;
}

}  // namespace detail

/// Generates the instance determined by `spec`. Deterministic: the same
/// spec (master seed included) yields a byte-identical instance file.
inline Instance generate(const GeneratorSpec& spec) {
  validate_spec(spec);
  SplitMix64 rng{derive_seed(spec)};

  InstanceData raw;
  raw.name = canonical_string(spec);
  raw.capacity = spec.base_capacity * spec.capacity_multiplier;
  raw.weights.reserve(spec.n_items);
  for (int32_t i = 0; i < spec.n_items; ++i)
    raw.weights.push_back(rng.uniform(spec.weight_lo, spec.weight_hi));
  raw.profits.reserve(spec.n_items);
  if (spec.profit_type == ProfitType::Random) {
    for (int32_t i = 0; i < spec.n_items; ++i)
      raw.profits.push_back(rng.uniform(1, 100));
  } else {
    for (int32_t i = 0; i < spec.n_items; ++i)
      raw.profits.push_back(raw.weights[i] + 10);
  }
  raw.edges =
      detail::draw_edges(spec.n_items, edge_count(spec.n_items, spec.density),
                         rng);
  return validate_instance(std::move(raw));
}

/// All 4320 set1 specs in the fixed enumeration order
/// (class, variant, density, replicate) with variants C1,C3,C10,R1,R3,R10.
inline std::vector<GeneratorSpec> set1_specs(uint64_t master_seed) {
  std::vector<GeneratorSpec> specs;
  specs.reserve(4320);
  for (int class_id = 1; class_id <= 8; ++class_id)
    for (ProfitType type : {ProfitType::Correlated, ProfitType::Random})
      for (int mult : detail::kSet1Multipliers)
        for (double density : detail::kSet1Densities)
          for (int rep = 0; rep < 10; ++rep)
            specs.push_back(
                set1_spec(class_id, type, mult, density, rep, master_seed));
  return specs;
}

/// All 480 set2 specs in the fixed enumeration order
/// (items, capacity, type, density, replicate).
inline std::vector<GeneratorSpec> set2_specs(uint64_t master_seed) {
  std::vector<GeneratorSpec> specs;
  specs.reserve(480);
  for (int32_t n : {500, 1000})
    for (int64_t cap : {1000, 2000})
      for (ProfitType type : {ProfitType::Random, ProfitType::Correlated})
        for (double density : detail::kSet2Densities)
          for (int rep = 0; rep < 10; ++rep)
            specs.push_back(set2_spec(n, cap, type, density, rep,
                                      master_seed));
  return specs;
}

inline std::vector<GeneratorSpec> family_specs(Family family,
                                               uint64_t master_seed) {
  return family == Family::Set1 ? set1_specs(master_seed)
                                : set2_specs(master_seed);
}

/// Streams every instance of a family through `sink`.
template <class Sink>
inline void generate_family(Family family, uint64_t master_seed, Sink&& sink) {
  for (const GeneratorSpec& spec : family_specs(family, master_seed))
    sink(generate(spec));
}

/// Stable on-disk location of an instance relative to the output root:
///   set1/class{K}/{variant}/d{density}/inst{rep}.kpc
///   set2/n{items}_c{capacity}/{type}/d{density}/inst{rep}.kpc
inline std::string instance_relpath(const GeneratorSpec& spec) {
  const int64_t d_e4 = detail::density_e4(spec.density);
  std::string path;
  if (spec.family == Family::Set1) {
    path = "set1/class" + std::to_string(spec.class_id) + "/";
    path += profit_type_char(spec.profit_type);
    path += std::to_string(spec.capacity_multiplier);
    path += "/d" + detail::format_density(d_e4, 3);
  } else {
    path = "set2/n" + std::to_string(spec.n_items) + "_c" +
           std::to_string(spec.base_capacity) + "/";
    path += profit_type_char(spec.profit_type);
    path += "/d" + detail::format_density(d_e4, 4);
  }
  path += "/inst" + std::to_string(spec.replicate) + ".kpc";
  return path;
}

}  // namespace kpc
