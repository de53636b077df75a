// Acceptance suite: runs every release criterion end to end and prints one
// PASS/FAIL line per criterion. Needs the CLI binary path as argv[1]; writes
// scratch data under ./acceptance_scratch (removed on completion).

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "kpc/kpc.hpp"
#include "lp_grammar.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;

namespace {

struct Criterion {
  int number;
  std::string summary;
  bool passed = false;
  std::string detail;
};

std::string g_cli;
fs::path g_scratch;

double now_seconds() {
  using clock = std::chrono::steady_clock;
  static const clock::time_point t0 = clock::now();
  return std::chrono::duration<double>(clock::now() - t0).count();
}

int run_cli(const std::string& args) {
  const std::string cmd = "\"" + g_cli + "\" " + args;
  const int status = std::system(cmd.c_str());
  if (status < 0) return -1;
#ifdef _WIN32
  return status;
#else
  return WEXITSTATUS(status);
#endif
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<fs::path> kpc_files_under(const fs::path& root) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(root))
    if (entry.is_regular_file() && entry.path().extension() == ".kpc")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  return files;
}

// relative path -> content hash for a generated tree
std::map<std::string, uint64_t> tree_manifest(const fs::path& root) {
  std::map<std::string, uint64_t> manifest;
  for (const fs::path& p : kpc_files_under(root))
    manifest[fs::relative(p, root).string()] = kpc::fnv1a64(slurp(p));
  return manifest;
}

// The shared random suite for criteria 2-4: n in [8,18], profits/weights in
// [1,100], densities cycling 0.0 .. 0.9.
constexpr int kSuiteSize = 500;
constexpr uint64_t kSuiteSeed = 20240817;

kpc::Instance suite_instance(int index) {
  return kpctest::random_instance(kSuiteSeed, index, 8, 18);
}

// ---------------------------------------------------------------------------

void criterion_1(Criterion& c) {
  const double t0 = now_seconds();
  kpc::SolveResult r = kpc::solve_bb(kpctest::example6());
  const double elapsed = now_seconds() - t0;
  const bool optimal = r.status == kpc::SolveStatus::Optimal &&
                       r.best.has_value() && r.best->profit == 21 &&
                       r.best->weight == 19;
  bool conflict_free =
      optimal && kpc::evaluate(kpctest::example6(), r.best->selected).feasible;
  c.passed = optimal && conflict_free && elapsed < 1.0;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "profit=%lld weight=%lld status=%s feasible=%d time=%.3fs",
                optimal ? static_cast<long long>(r.best->profit) : -1LL,
                optimal ? static_cast<long long>(r.best->weight) : -1LL,
                kpc::to_string(r.status), conflict_free ? 1 : 0, elapsed);
  c.detail = buf;
}

void criterion_2(Criterion& c) {
  const double t0 = now_seconds();
  int agree = 0;
  for (int i = 0; i < kSuiteSize; ++i) {
    kpc::Instance inst = suite_instance(i);
    kpc::SolveResult bb = kpc::solve_bb(inst);
    kpc::SolveResult oracle = kpc::solve_oracle(inst);
    if (bb.status == kpc::SolveStatus::Optimal &&
        bb.best->profit == oracle.best->profit)
      ++agree;
  }
  const double elapsed = now_seconds() - t0;
  c.passed = agree == kSuiteSize && elapsed < 300.0;
  char buf[120];
  std::snprintf(buf, sizeof buf, "%d/%d agree, %.1fs (< 300s required)",
                agree, kSuiteSize, elapsed);
  c.detail = buf;
}

void criterion_3(Criterion& c) {
  int violations = 0;
  for (int i = 0; i < kSuiteSize; ++i) {
    kpc::Instance inst = suite_instance(i);
    const int64_t opt = kpc::solve_oracle(inst).best->profit;
    kpc::BoundContext ctx = kpc::root_context(inst);
    if (kpc::fractional_knapsack_ub(ctx, inst) < opt) ++violations;
    if (kpc::clique_partition_ub(ctx, inst,
                                 kpc::greedy_clique_partition(inst)) < opt)
      ++violations;
  }
  c.passed = violations == 0;
  c.detail = std::to_string(violations) + " violations over " +
             std::to_string(kSuiteSize) + " instances x 2 bounds";
}

void criterion_4(Criterion& c) {
  kpc::Instance example = kpctest::example6();
  kpc::Solution greedy = kpc::greedy_construct(example);
  kpc::Solution improved = kpc::local_search(example, greedy);
  const int64_t example_opt = kpc::solve_oracle(example).best->profit;
  bool example_ok = greedy.profit == 20 && improved.profit == 21 &&
                improved.profit == example_opt && improved.feasible;

  int bad = 0;
  for (int i = 0; i < kSuiteSize; ++i) {
    kpc::Instance inst = suite_instance(i);
    kpc::Solution g = kpc::greedy_construct(inst);
    if (!kpc::evaluate(inst, g.selected).feasible) ++bad;
    kpc::Solution l = kpc::local_search(inst, g);
    if (!kpc::evaluate(inst, l.selected).feasible || l.profit < g.profit)
      ++bad;
  }
  c.passed = example_ok && bad == 0;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "example6 greedy=%lld local=%lld oracle=%lld, %d contract "
                "violations over %d instances",
                static_cast<long long>(greedy.profit),
                static_cast<long long>(improved.profit),
                static_cast<long long>(example_opt), bad, kSuiteSize);
  c.detail = buf;
}

// Checks p = w + 10 for C instances plus the exact edge-count formula for
// every generated file, and returns the parse-verified instance count.
size_t verify_family_tree(const fs::path& root, kpc::Family family,
                          uint64_t seed, int& property_violations) {
  size_t count = 0;
  for (const kpc::GeneratorSpec& spec : kpc::family_specs(family, seed)) {
    const fs::path path = root / kpc::instance_relpath(spec);
    if (!fs::exists(path)) {
      ++property_violations;
      continue;
    }
    kpc::Instance inst = kpc::read_instance(path.string());
    ++count;
    if (inst.num_items() != spec.n_items) ++property_violations;
    if (inst.capacity != spec.base_capacity * spec.capacity_multiplier)
      ++property_violations;
    if (static_cast<int64_t>(inst.edges.size()) !=
        kpc::edge_count(spec.n_items, spec.density))
      ++property_violations;
    for (int32_t i = 0; i < inst.num_items(); ++i) {
      if (inst.weights[i] < spec.weight_lo || inst.weights[i] > spec.weight_hi)
        ++property_violations;
      if (spec.profit_type == kpc::ProfitType::Correlated) {
        if (inst.profits[i] - inst.weights[i] != 10) ++property_violations;
      } else if (inst.profits[i] < 1 || inst.profits[i] > 100) {
        ++property_violations;
      }
    }
  }
  return count;
}

void criterion_5(Criterion& c, const fs::path& set1_dir) {
  std::ostringstream detail;
  bool ok = true;

  // set2 first (small): generate, verify, regenerate, compare manifests
  const fs::path set2_dir = g_scratch / "gen2";
  if (run_cli("generate --family set2 --seed 42 --out \"" +
              set2_dir.string() + "\"") != 0)
    throw std::runtime_error("CLI generate set2 failed");
  auto set2_files = kpc_files_under(set2_dir);
  detail << "set2 count=" << set2_files.size();
  ok = ok && set2_files.size() == 480;
  int violations = 0;
  verify_family_tree(set2_dir, kpc::Family::Set2, 42, violations);
  auto manifest2a = tree_manifest(set2_dir);
  fs::remove_all(set2_dir);
  if (run_cli("generate --family set2 --seed 42 --out \"" +
              set2_dir.string() + "\"") != 0)
    throw std::runtime_error("CLI regenerate set2 failed");
  auto manifest2b = tree_manifest(set2_dir);
  ok = ok && manifest2a == manifest2b;
  detail << " deterministic=" << (manifest2a == manifest2b);
  fs::remove_all(set2_dir);

  // set1 (large): same protocol; the final tree stays for criteria 6 and 9
  if (run_cli("generate --family set1 --seed 42 --out \"" +
              set1_dir.string() + "\"") != 0)
    throw std::runtime_error("CLI generate set1 failed");
  auto set1_files = kpc_files_under(set1_dir);
  detail << ", set1 count=" << set1_files.size();
  ok = ok && set1_files.size() == 4320;
  size_t verified =
      verify_family_tree(set1_dir, kpc::Family::Set1, 42, violations);
  ok = ok && violations == 0 && verified == 4320;
  detail << " property_violations=" << violations;
  auto manifest1a = tree_manifest(set1_dir);
  fs::remove_all(set1_dir);
  if (run_cli("generate --family set1 --seed 42 --out \"" +
              set1_dir.string() + "\"") != 0)
    throw std::runtime_error("CLI regenerate set1 failed");
  auto manifest1b = tree_manifest(set1_dir);
  ok = ok && manifest1a == manifest1b;
  detail << " deterministic=" << (manifest1a == manifest1b);

  c.passed = ok;
  c.detail = detail.str();
}

void criterion_6(Criterion& c, const fs::path& set1_dir) {
  const double t0 = now_seconds();
  kpc::CampaignConfig config;
  for (const fs::path& p : kpc_files_under(set1_dir / "class1"))
    config.instance_paths.push_back(p.string());
  for (const fs::path& p : kpc_files_under(set1_dir / "class5"))
    config.instance_paths.push_back(p.string());
  config.solve.limits.time_limit_seconds = 600.0;
  config.jobs = std::max(1u, std::thread::hardware_concurrency());

  kpc::CampaignOutcome outcome = kpc::run_campaign(config);
  int optimal = 0;
  double max_seconds = 0.0, total_seconds = 0.0;
  for (const auto& r : outcome.results) {
    if (r.status == kpc::SolveStatus::Optimal) ++optimal;
    max_seconds = std::max(max_seconds, r.seconds);
    total_seconds += r.seconds;
  }
  const double elapsed = now_seconds() - t0;
  c.passed = outcome.results.size() == 1080 && optimal == 1080 &&
             outcome.skipped.empty();
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "%d/%zu optimal, max %.2fs mean %.3fs per instance, wall "
                "%.1fs",
                optimal, outcome.results.size(), max_seconds,
                outcome.results.empty()
                    ? 0.0
                    : total_seconds / outcome.results.size(),
                elapsed);
  c.detail = buf;
}

void criterion_7(Criterion& c) {
  int bad = 0;
  kpc::SolveOptions forced;
  forced.limits.node_limit = 1;
  for (int i = 0; i < 50; ++i) {
    kpc::Instance inst = suite_instance(i);
    kpc::SolveResult r = kpc::solve_bb(inst, forced);
    if (!r.best || !kpc::evaluate(inst, r.best->selected).feasible) {
      ++bad;
      continue;
    }
    const double expected =
        r.upper_bound > 0
            ? 100.0 *
                  static_cast<double>(r.upper_bound - r.best->profit) /
                  static_cast<double>(r.upper_bound)
            : 0.0;
    if (std::abs(r.gap_percent - expected) > 1e-12) ++bad;
    if (r.status == kpc::SolveStatus::Optimal && r.gap_percent != 0.0) ++bad;
    if (r.upper_bound < r.best->profit) ++bad;
  }
  // full solves report a zero gap
  for (int i = 0; i < 25; ++i) {
    kpc::SolveResult r = kpc::solve_bb(suite_instance(i));
    if (r.status != kpc::SolveStatus::Optimal || r.gap_percent != 0.0) ++bad;
  }
  c.passed = bad == 0;
  c.detail = std::to_string(bad) + " inconsistencies over 50 forced + 25 "
             "full solves";
}

void criterion_8(Criterion& c) {
  // CLI export of the canonical example against the hand-written golden
  const fs::path lp_path = g_scratch / "example6.lp";
  const fs::path example_path = g_scratch / "example6.kpc";
  kpc::Instance example = kpctest::example6();
  kpc::write_instance(example, example_path.string());
  if (run_cli("export-lp \"" + example_path.string() + "\" --out \"" +
              lp_path.string() + "\"") != 0)
    throw std::runtime_error("CLI export-lp failed");
  const std::string golden =
      slurp(fs::path(KPC_TEST_DATA_DIR) / "example6_golden.lp");
  const bool golden_ok = slurp(lp_path) == golden;

  int grammar_failures = 0;
  for (int i = 0; i < 100; ++i) {
    kpc::Instance inst = kpctest::random_instance(kSuiteSeed + 1, i, 8, 40);
    auto r = kpctest::check_lp_grammar(kpc::write_lp_text(inst),
                                       inst.num_items());
    if (!r.ok) ++grammar_failures;
  }
  c.passed = golden_ok && grammar_failures == 0;
  c.detail = "golden match=" + std::to_string(golden_ok) +
             ", grammar failures=" + std::to_string(grammar_failures) +
             "/100";
}

void criterion_9(Criterion& c, const fs::path& set1_dir) {
  const double t0 = now_seconds();
  kpc::CampaignConfig config;
  for (const fs::path& p : kpc_files_under(set1_dir))
    config.instance_paths.push_back(p.string());
  config.solve.limits.node_limit = 1;  // forced immediate termination
  config.jobs = std::max(1u, std::thread::hardware_concurrency());
  kpc::CampaignOutcome outcome = kpc::run_campaign(config);

  bool ok = outcome.results.size() == 4320 && outcome.skipped.empty();

  const std::string csv = kpc::write_csv(outcome.results);
  const fs::path csv_path = g_scratch / "set1_campaign.csv";
  std::ofstream(csv_path, std::ios::binary) << csv;
  std::vector<kpc::InstanceResult> reparsed = kpc::parse_csv(csv);

  auto direct_ct = kpc::aggregate(outcome.results,
                                  kpc::Grouping::Set1ClassType);
  auto csv_ct = kpc::aggregate(reparsed, kpc::Grouping::Set1ClassType);
  auto direct_cd = kpc::aggregate(outcome.results,
                                  kpc::Grouping::Set1ClassDensity);
  auto csv_cd = kpc::aggregate(reparsed, kpc::Grouping::Set1ClassDensity);

  ok = ok && direct_ct.size() == 48 && direct_cd.size() == 54;
  for (const auto& rep : direct_ct) ok = ok && rep.group_size == 90;
  for (const auto& rep : direct_cd) ok = ok && rep.group_size == 80;

  auto reports_equal = [](const std::vector<kpc::CampaignReport>& a,
                          const std::vector<kpc::CampaignReport>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i].group != b[i].group || a[i].opt_count != b[i].opt_count ||
          a[i].group_size != b[i].group_size)
        return false;
      if (a[i].mean_seconds_solved.has_value() !=
          b[i].mean_seconds_solved.has_value())
        return false;
      if (a[i].mean_seconds_solved &&
          std::abs(*a[i].mean_seconds_solved - *b[i].mean_seconds_solved) >
              1e-3)
        return false;
      if (std::abs(a[i].mean_gap_percent - b[i].mean_gap_percent) > 1e-5)
        return false;
    }
    return true;
  };
  const bool consistent =
      reports_equal(direct_ct, csv_ct) && reports_equal(direct_cd, csv_cd);
  ok = ok && consistent;

  const double elapsed = now_seconds() - t0;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "rows=%zu groups=%zu/%zu csv-consistent=%d wall=%.1fs",
                outcome.results.size(), direct_ct.size(), direct_cd.size(),
                consistent ? 1 : 0, elapsed);
  c.passed = ok;
  c.detail = buf;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: kpc_acceptance <path-to-kpc-cli>\n";
    return 2;
  }
  g_cli = argv[1];
  g_scratch = fs::path("acceptance_scratch");
  fs::create_directories(g_scratch);
  const fs::path set1_dir = g_scratch / "gen1";

  std::vector<Criterion> criteria = {
      {1, "example6 golden solve (Optimal 21/19, < 1s)"},
      {2, "oracle equivalence on 500 random instances"},
      {3, "bound soundness at the root on the same suite"},
      {4, "heuristic contracts (greedy 20 -> local search 21 on example6)"},
      {5, "generator cardinalities 4320/480, determinism, C-type, edges"},
      {6, "set1 classes 1 and 5 all solve to optimality within 600s"},
      {7, "gap reporting consistency under forced termination"},
      {8, "LP export golden match and grammar acceptance"},
      {9, "campaign CSV/report self-consistency, 48 and 54 groups"},
  };

  using Runner = std::function<void(Criterion&)>;
  std::vector<Runner> runners = {
      criterion_1,
      criterion_2,
      criterion_3,
      criterion_4,
      [&](Criterion& c) { criterion_5(c, set1_dir); },
      [&](Criterion& c) { criterion_6(c, set1_dir / "set1"); },
      criterion_7,
      criterion_8,
      [&](Criterion& c) { criterion_9(c, set1_dir / "set1"); },
  };
  // order chosen so the big generated tree exists before 6 and 9 use it
  const std::vector<int> order = {0, 1, 2, 3, 6, 7, 4, 8, 5};

  for (int idx : order) {
    Criterion& c = criteria[idx];
    try {
      runners[idx](c);
    } catch (const std::exception& e) {
      c.passed = false;
      c.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s criterion %d: %s: %s\n", c.passed ? "PASS" : "FAIL",
                c.number, c.summary.c_str(), c.detail.c_str());
    std::fflush(stdout);
  }

  fs::remove_all(g_scratch);

  int failures = 0;
  for (const Criterion& c : criteria)
    if (!c.passed) ++failures;
  std::printf("%d/9 acceptance criteria passed\n", 9 - failures);
  return failures == 0 ? 0 : 1;
}
