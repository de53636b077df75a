// kpc command line: generate benchmark families, solve instances, export
// LP models, run campaigns, and cross-check the solver against the
// exhaustive reference.
//
// Exit codes: 0 success, 1 solver-level failure, 2 usage error.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "kpc/kpc.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

kpc::SolveOptions make_options(double time_limit,
                               std::optional<uint64_t> node_limit,
                               bool clique_bound) {
  kpc::SolveOptions opts;
  if (time_limit > 0) opts.limits.time_limit_seconds = time_limit;
  if (node_limit) opts.limits.node_limit = *node_limit;
  opts.use_clique_bound = clique_bound;
  return opts;
}

int cmd_generate(const std::string& family_name, uint64_t seed,
                 const std::string& out_dir) {
  const kpc::Family family =
      family_name == "set1" ? kpc::Family::Set1 : kpc::Family::Set2;
  size_t count = 0;
  for (const kpc::GeneratorSpec& spec : kpc::family_specs(family, seed)) {
    const fs::path path = fs::path(out_dir) / kpc::instance_relpath(spec);
    fs::create_directories(path.parent_path());
    kpc::write_instance(kpc::generate(spec), path.string());
    ++count;
  }
  std::cout << "wrote " << count << " instances under " << out_dir << "\n";
  return kExitOk;
}

int cmd_solve(const std::string& path, const kpc::SolveOptions& opts,
              bool use_oracle, bool csv) {
  kpc::Instance inst = kpc::read_instance(path);
  kpc::SolveResult r =
      use_oracle ? kpc::solve_oracle(inst) : kpc::solve_bb(inst, opts);
  const int64_t profit = r.best ? r.best->profit : 0;
  if (csv) {
    kpc::InstanceResult row;
    row.instance = inst.name.empty() ? path : inst.name;
    row.status = r.status;
    row.profit = profit;
    row.upper_bound = r.upper_bound;
    row.gap_percent = r.gap_percent;
    row.nodes = r.nodes;
    row.seconds = r.wall_time_seconds;
    std::cout << kpc::write_csv({row});
    return r.status == kpc::SolveStatus::Optimal ||
                   r.status == kpc::SolveStatus::Feasible
               ? kExitOk
               : kExitFailure;
  }
  std::cout << kpc::to_string(r.status) << " " << profit << "\n";
  std::cout << "instance: " << (inst.name.empty() ? path : inst.name) << "\n";
  std::cout << "upper_bound: " << r.upper_bound << "\n";
  std::printf("gap_percent: %.6f\n", r.gap_percent);
  std::cout << "nodes: " << r.nodes << "\n";
  std::printf("seconds: %.3f\n", r.wall_time_seconds);
  if (r.best) {
    std::cout << "selected:";
    for (int32_t i : r.best->selected) std::cout << " " << i;
    std::cout << "\n";
  }
  return r.status == kpc::SolveStatus::Optimal ||
                 r.status == kpc::SolveStatus::Feasible
             ? kExitOk
             : kExitFailure;
}

int cmd_export_lp(const std::string& path, const std::string& out_path) {
  kpc::write_lp_file(kpc::read_instance(path), out_path);
  std::cout << "wrote " << out_path << "\n";
  return kExitOk;
}

std::vector<std::string> collect_instances(const std::string& dir,
                                           std::vector<std::string> paths) {
  if (!dir.empty()) {
    for (const auto& entry : fs::recursive_directory_iterator(dir))
      if (entry.is_regular_file() && entry.path().extension() == ".kpc")
        paths.push_back(entry.path().string());
  }
  return paths;
}

int cmd_bench(const kpc::CampaignConfig& config, const std::string& csv_path) {
  if (config.instance_paths.empty() && config.generator_specs.empty()) {
    std::cerr << "error: no instances to run\n";
    return kExitUsage;
  }
  kpc::CampaignOutcome outcome = kpc::run_campaign(config);
  for (const std::string& s : outcome.skipped)
    std::cerr << "warning: skipped " << s << "\n";
  if (outcome.results.empty()) {
    std::cerr << "error: empty run, no instance was solved\n";
    return kExitFailure;
  }

  const std::string csv = kpc::write_csv(outcome.results);
  std::ofstream out(csv_path, std::ios::binary | std::ios::trunc);
  if (!out) {
    std::cerr << "error: cannot write " << csv_path << "\n";
    return kExitFailure;
  }
  out << csv;
  out.close();

  // Aggregate from the CSV that was just written so the emitted reports are
  // self-consistent with the per-instance rows by construction.
  std::vector<kpc::InstanceResult> rows = kpc::parse_csv(csv);
  bool all_set1 = true, all_set2 = true;
  for (const auto& r : rows) {
    kpc::InstanceKey key = kpc::parse_instance_key(r.instance);
    all_set1 = all_set1 && key.valid && key.family == kpc::Family::Set1;
    all_set2 = all_set2 && key.valid && key.family == kpc::Family::Set2;
  }

  std::string md;
  if (all_set1 && !rows.empty()) {
    md += kpc::markdown_report(
        kpc::aggregate(rows, kpc::Grouping::Set1ClassType),
        "Set 1 by class and type");
    md += "\n";
    md += kpc::markdown_report(
        kpc::aggregate(rows, kpc::Grouping::Set1ClassDensity),
        "Set 1 by class and density");
  } else if (all_set2 && !rows.empty()) {
    auto reports = kpc::aggregate(rows, kpc::Grouping::Set2ItemsCapDensity);
    std::vector<kpc::CampaignReport> correlated, random;
    for (auto& rep : reports)
      (rep.group.rfind("C/", 0) == 0 ? correlated : random).push_back(rep);
    md += kpc::markdown_report(correlated,
                               "Set 2 correlated by items/capacity and "
                               "density");
    md += "\n";
    md += kpc::markdown_report(random,
                               "Set 2 random by items/capacity and density");
  } else {
    md += kpc::markdown_report(kpc::aggregate(rows, kpc::Grouping::All),
                               "All instances");
  }

  std::cout << md;
  fs::path md_path = fs::path(csv_path).replace_extension(".md");
  std::ofstream mdout(md_path, std::ios::binary | std::ios::trunc);
  if (mdout) mdout << md;
  std::cout << "wrote " << csv_path << " and " << md_path.string() << "\n";
  return kExitOk;
}

// Small deterministic instances for solver cross-checking: profits and
// weights uniform in [1, 100], conflict densities cycling 0.0 .. 0.9,
// capacity cycling 25% / 50% / 75% of the total weight.
kpc::Instance random_check_instance(uint64_t seed, int32_t index,
                                    int32_t max_items) {
  kpc::SplitMix64 rng{kpc::fnv1a64("oracle-check/" + std::to_string(index)) ^
                      seed};
  const int32_t n_lo = std::min<int32_t>(8, max_items);
  const int32_t n =
      n_lo + static_cast<int32_t>(rng.next() %
                                  static_cast<uint64_t>(max_items - n_lo + 1));
  kpc::InstanceData raw;
  raw.name = "check" + std::to_string(index);
  int64_t total_weight = 0;
  for (int32_t i = 0; i < n; ++i) {
    raw.profits.push_back(rng.uniform(1, 100));
    raw.weights.push_back(rng.uniform(1, 100));
    total_weight += raw.weights.back();
  }
  const int pct = 25 * (1 + static_cast<int>(index % 3));
  raw.capacity = total_weight * pct / 100;
  const int64_t pairs = static_cast<int64_t>(n) * (n - 1) / 2;
  const int64_t m = (static_cast<int64_t>(index % 10) * 1000 * pairs + 5000) /
                    10000;
  std::vector<kpc::Edge> all;
  for (int32_t i = 0; i < n; ++i)
    for (int32_t j = i + 1; j < n; ++j) all.emplace_back(i, j);
  for (int64_t k = 0; k < m; ++k) {
    const int64_t r = k + static_cast<int64_t>(
                              rng.next() %
                              static_cast<uint64_t>(pairs - k));
    std::swap(all[k], all[r]);
    raw.edges.push_back(all[k]);
  }
  return kpc::validate_instance(std::move(raw));
}

int cmd_oracle_check(int count, int max_items, uint64_t seed,
                     const std::vector<std::string>& paths,
                     const kpc::SolveOptions& opts) {
  int mismatches = 0;
  int checked = 0;
  auto check = [&](const kpc::Instance& inst, const std::string& label) {
    kpc::SolveResult bb = kpc::solve_bb(inst, opts);
    kpc::SolveResult oracle = kpc::solve_oracle(inst);
    const int64_t bb_profit = bb.best ? bb.best->profit : 0;
    const int64_t oracle_profit = oracle.best ? oracle.best->profit : 0;
    ++checked;
    if (bb.status != kpc::SolveStatus::Optimal ||
        bb_profit != oracle_profit) {
      ++mismatches;
      std::cout << "MISMATCH " << label << ": bb=" << bb_profit << " ("
                << kpc::to_string(bb.status) << "), oracle=" << oracle_profit
                << "\n";
    }
  };
  for (const std::string& p : paths) check(kpc::read_instance(p), p);
  for (int i = 0; i < count; ++i) {
    kpc::Instance inst = random_check_instance(seed, i, max_items);
    check(inst, inst.name);
  }
  std::cout << checked - mismatches << "/" << checked
            << " instances agree with the reference solver\n";
  return mismatches == 0 ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Knapsack-with-conflicts toolkit"};
  app.require_subcommand(1);

  std::string family, out_dir, out_path, instance_path, bench_dir;
  std::vector<std::string> paths;
  uint64_t seed = 42;
  double time_limit = 600.0;
  std::optional<uint64_t> node_limit;
  std::string solver = "bb";
  bool clique_bound = false;
  bool solve_csv = false;
  int jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;
  int count = 200;
  int max_items = 16;

  CLI::App* generate = app.add_subcommand(
      "generate", "Write a benchmark family as a .kpc file tree");
  generate->add_option("--family", family, "Benchmark family")
      ->required()
      ->check(CLI::IsMember({"set1", "set2"}));
  generate->add_option("--seed", seed, "Master seed (default 42)");
  generate->add_option("--out", out_dir, "Output directory")->required();

  CLI::App* solve =
      app.add_subcommand("solve", "Solve one instance and print the result");
  solve->add_option("instance", instance_path, "Instance file")->required();
  solve->add_option("--time-limit", time_limit,
                    "Time limit in seconds (default 600, 0 = none)");
  solve->add_option("--node-limit", node_limit, "Node limit");
  solve->add_option("--solver", solver, "bb or oracle")
      ->check(CLI::IsMember({"bb", "oracle"}));
  solve->add_flag("--clique-bound", clique_bound,
                  "Tighten bounds with a clique partition");
  solve->add_flag("--csv", solve_csv, "Print the result as a CSV row");

  CLI::App* export_lp = app.add_subcommand(
      "export-lp", "Export the 0/1 model of an instance in LP format");
  export_lp->add_option("instance", instance_path, "Instance file")
      ->required();
  export_lp->add_option("--out", out_path, "Output .lp path")->required();

  CLI::App* bench = app.add_subcommand(
      "bench", "Solve a directory of instances and write CSV + Markdown");
  bench->add_option("--dir", bench_dir, "Directory scanned for *.kpc files");
  bench->add_option("paths", paths, "Extra instance files");
  bench->add_option("--family", family,
                    "Solve a whole generated family in memory")
      ->check(CLI::IsMember({"set1", "set2"}));
  bench->add_option("--seed", seed, "Master seed for --family (default 42)");
  bench->add_option("--time-limit", time_limit,
                    "Per-instance time limit in seconds (default 600)");
  bench->add_option("--node-limit", node_limit, "Per-instance node limit");
  bench->add_option("--jobs", jobs, "Parallel workers (default: cores)");
  bench->add_option("--solver", solver, "bb or oracle")
      ->check(CLI::IsMember({"bb", "oracle"}));
  bench->add_option("--out", out_path, "Output CSV path")->required();
  bench->add_flag("--clique-bound", clique_bound,
                  "Tighten bounds with a clique partition");

  CLI::App* oracle_check = app.add_subcommand(
      "oracle-check",
      "Cross-check solve results against the exhaustive reference");
  oracle_check->add_option("paths", paths, "Instance files (n <= 30)");
  oracle_check->add_option("--count", count,
                           "Random instances to check (default 200)");
  oracle_check->add_option("--max-items", max_items,
                           "Random instance size cap (default 16)");
  oracle_check->add_option("--seed", seed, "Random suite seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (generate->parsed()) return cmd_generate(family, seed, out_dir);
    if (solve->parsed())
      return cmd_solve(instance_path,
                       make_options(time_limit, node_limit, clique_bound),
                       solver == "oracle", solve_csv);
    if (export_lp->parsed()) return cmd_export_lp(instance_path, out_path);
    if (bench->parsed()) {
      kpc::CampaignConfig config;
      config.instance_paths = collect_instances(bench_dir, paths);
      if (!family.empty())
        config.generator_specs = kpc::family_specs(
            family == "set1" ? kpc::Family::Set1 : kpc::Family::Set2, seed);
      config.solve = make_options(time_limit, node_limit, clique_bound);
      config.use_oracle = solver == "oracle";
      config.jobs = jobs;
      return cmd_bench(config, out_path);
    }
    if (oracle_check->parsed())
      return cmd_oracle_check(count, max_items, seed, paths,
                              make_options(time_limit, node_limit,
                                           clique_bound));
  } catch (const kpc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == kpc::ErrorCode::SpecInvalid ||
                   e.code() == kpc::ErrorCode::LimitsInvalid
               ? kExitUsage
               : kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
