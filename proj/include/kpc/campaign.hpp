#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "kpc/core.hpp"
#include "kpc/error.hpp"
#include "kpc/generator.hpp"
#include "kpc/io.hpp"
#include "kpc/solver.hpp"

// Campaign machinery: solve a list of instance files under a common limit,
// emit one CSV row per instance, and aggregate the rows into the grouped
// Opt / Sec / Gap% reports used for the benchmark families. "Sec" averages
// the solved instances only; timeouts show up in Opt and Gap instead.

namespace kpc {

struct CampaignConfig {
  std::vector<std::string> instance_paths;
  // generated in memory and solved after the files, in enumeration order
  std::vector<GeneratorSpec> generator_specs;
  SolveOptions solve;
  bool use_oracle = false;  // reference solver instead of branch and bound
  int jobs = 1;
};

struct InstanceResult {
  std::string instance;
  SolveStatus status = SolveStatus::Unknown;
  int64_t profit = 0;
  int64_t upper_bound = 0;
  double gap_percent = 0.0;
  uint64_t nodes = 0;
  double seconds = 0.0;
};

struct CampaignOutcome {
  std::vector<InstanceResult> results;  // stable path-sorted order
  std::vector<std::string> skipped;     // unreadable/failed, with reasons
};

namespace detail {

inline std::string path_stem(std::string_view path) {
  size_t slash = path.find_last_of("/\\");
  std::string_view base =
      slash == std::string_view::npos ? path : path.substr(slash + 1);
  size_t dot = base.find_last_of('.');
  if (dot != std::string_view::npos && dot > 0) base = base.substr(0, dot);
  return std::string(base);
}

}  // namespace detail

/// Solves every readable instance in `config` with a fixed-size worker pool.
/// Workers share nothing but the immutable path list and their own result
/// slots, so per-instance results are deterministic regardless of `jobs`.
inline CampaignOutcome run_campaign(const CampaignConfig& config) {
  detail::check_limits(config.solve.limits);
  if (config.jobs < 1)
    fail(ErrorCode::LimitsInvalid, "jobs must be >= 1");

  std::vector<std::string> paths = config.instance_paths;
  std::sort(paths.begin(), paths.end());
  const size_t total = paths.size() + config.generator_specs.size();

  std::vector<std::optional<InstanceResult>> slots(total);
  std::vector<std::pair<size_t, std::string>> skipped;
  std::mutex skipped_mutex;
  std::atomic<size_t> cursor{0};

  auto worker = [&] {
    for (;;) {
      const size_t i = cursor.fetch_add(1);
      if (i >= total) return;
      const bool from_file = i < paths.size();
      try {
        Instance inst =
            from_file ? read_instance(paths[i])
                      : generate(config.generator_specs[i - paths.size()]);
        SolveResult r = config.use_oracle ? solve_oracle(inst)
                                          : solve_bb(inst, config.solve);
        InstanceResult row;
        row.instance = !inst.name.empty() ? inst.name
                       : from_file        ? detail::path_stem(paths[i])
                                          : "spec" + std::to_string(i);
        row.status = r.status;
        row.profit = r.best ? r.best->profit : 0;
        row.upper_bound = r.upper_bound;
        row.gap_percent = r.gap_percent;
        row.nodes = r.nodes;
        row.seconds = r.wall_time_seconds;
        slots[i] = std::move(row);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(skipped_mutex);
        const std::string label =
            from_file ? paths[i]
                      : canonical_string(config.generator_specs[i -
                                                                paths.size()]);
        skipped.emplace_back(i, label + ": " + e.what());
      }
    }
  };

  std::vector<std::thread> pool;
  for (int t = 1; t < config.jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  CampaignOutcome out;
  for (auto& slot : slots)
    if (slot) out.results.push_back(std::move(*slot));
  std::sort(skipped.begin(), skipped.end());
  for (auto& [i, msg] : skipped) out.skipped.push_back(std::move(msg));
  return out;
}

// ---------------------------------------------------------------------------
// CSV

inline constexpr std::string_view kCsvHeader =
    "instance,status,profit,upper_bound,gap_percent,nodes,seconds";

inline std::string write_csv(const std::vector<InstanceResult>& rows) {
  std::string out(kCsvHeader);
  out += '\n';
  char buf[64];
  for (const auto& r : rows) {
    if (r.instance.find_first_of(",\"\n") != std::string::npos)
      fail(ErrorCode::IoError,
           "instance name not CSV-safe: '" + r.instance + "'");
    out += r.instance;
    out += ',';
    out += to_string(r.status);
    out += ',';
    out += std::to_string(r.profit);
    out += ',';
    out += std::to_string(r.upper_bound);
    out += ',';
    std::snprintf(buf, sizeof buf, "%.6f", r.gap_percent);
    out += buf;
    out += ',';
    out += std::to_string(r.nodes);
    out += ',';
    std::snprintf(buf, sizeof buf, "%.3f", r.seconds);
    out += buf;
    out += '\n';
  }
  return out;
}

namespace detail {

inline SolveStatus parse_status(std::string_view s, int line_no) {
  if (s == "Optimal") return SolveStatus::Optimal;
  if (s == "Feasible") return SolveStatus::Feasible;
  if (s == "Infeasible") return SolveStatus::Infeasible;
  if (s == "Unknown") return SolveStatus::Unknown;
  fail(ErrorCode::ParseError,
       "line " + std::to_string(line_no) + ": unknown status '" +
           std::string(s) + "'");
}

template <class T>
inline T parse_number(std::string_view tok, int line_no) {
  T value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    fail(ErrorCode::ParseError, "line " + std::to_string(line_no) +
                                    ": bad numeric field '" +
                                    std::string(tok) + "'");
  return value;
}

}  // namespace detail

inline std::vector<InstanceResult> parse_csv(std::string_view text) {
  std::vector<InstanceResult> rows;
  size_t pos = 0;
  int line_no = 0;
  bool saw_header = false;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != kCsvHeader)
        fail(ErrorCode::ParseError, "line 1: expected CSV header '" +
                                        std::string(kCsvHeader) + "'");
      saw_header = true;
      continue;
    }
    std::vector<std::string_view> fields;
    size_t fpos = 0;
    while (true) {
      size_t comma = line.find(',', fpos);
      if (comma == std::string_view::npos) {
        fields.push_back(line.substr(fpos));
        break;
      }
      fields.push_back(line.substr(fpos, comma - fpos));
      fpos = comma + 1;
    }
    if (fields.size() != 7)
      fail(ErrorCode::ParseError, "line " + std::to_string(line_no) +
                                      ": expected 7 fields, got " +
                                      std::to_string(fields.size()));
    InstanceResult r;
    r.instance = std::string(fields[0]);
    r.status = detail::parse_status(fields[1], line_no);
    r.profit = detail::parse_number<int64_t>(fields[2], line_no);
    r.upper_bound = detail::parse_number<int64_t>(fields[3], line_no);
    r.gap_percent = detail::parse_number<double>(fields[4], line_no);
    r.nodes = detail::parse_number<uint64_t>(fields[5], line_no);
    r.seconds = detail::parse_number<double>(fields[6], line_no);
    rows.push_back(std::move(r));
  }
  if (!saw_header) fail(ErrorCode::ParseError, "empty CSV");
  return rows;
}

// ---------------------------------------------------------------------------
// Aggregation

/// Fields recovered from a canonical instance name
/// ("set1/3/500/10/C/0.400/7" or "set2/1000/500/1/R/0.0010/7").
struct InstanceKey {
  bool valid = false;
  Family family = Family::Set1;
  int class_id = 0;        // set1
  std::string variant;     // set1: C1..R10; set2: C or R
  int32_t n_items = 0;     // set2
  int64_t capacity = 0;    // set2
  std::string density;     // as printed in the name
};

inline InstanceKey parse_instance_key(std::string_view name) {
  InstanceKey key;
  std::vector<std::string_view> parts;
  size_t pos = 0;
  while (true) {
    size_t slash = name.find('/', pos);
    if (slash == std::string_view::npos) {
      parts.push_back(name.substr(pos));
      break;
    }
    parts.push_back(name.substr(pos, slash - pos));
    pos = slash + 1;
  }
  if (parts.size() != 7) return key;
  auto to_int = [](std::string_view s, int64_t& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
  };
  int64_t second = 0, n = 0;
  if (!to_int(parts[1], second) || !to_int(parts[2], n)) return key;
  if (parts[4] != "C" && parts[4] != "R") return key;
  if (parts[0] == "set1") {
    key.family = Family::Set1;
    key.class_id = static_cast<int>(second);
    key.variant = std::string(parts[4]) + std::string(parts[3]);
    key.n_items = static_cast<int32_t>(n);
  } else if (parts[0] == "set2") {
    key.family = Family::Set2;
    key.capacity = second;
    key.n_items = static_cast<int32_t>(n);
    key.variant = std::string(parts[4]);
  } else {
    return key;
  }
  key.density = std::string(parts[5]);
  key.valid = true;
  return key;
}

enum class Grouping {
  Set1ClassType,     // 48 groups: variant x class
  Set1ClassDensity,  // 54 groups: variant x density
  Set2ItemsCapDensity,  // per profit type: items/capacity x density
  All,               // one group
};

struct CampaignReport {
  std::string group;
  int32_t group_size = 0;
  int32_t opt_count = 0;
  std::optional<double> mean_seconds_solved;  // absent when nothing solved
  double mean_gap_percent = 0.0;
};

namespace detail {

inline int variant_rank(std::string_view v) {
  static constexpr std::string_view kOrder[] = {"C1", "C3", "C10",
                                                "R1", "R3", "R10"};
  for (int i = 0; i < 6; ++i)
    if (v == kOrder[i]) return i;
  return 6;
}

struct GroupStats {
  int32_t size = 0;
  int32_t opt = 0;
  double seconds_solved = 0.0;
  double gap_sum = 0.0;
};

}  // namespace detail

/// Groups per-instance results and reports, per group: instances solved to
/// proven optimality, mean seconds over the solved ones, and mean gap over
/// all members.
inline std::vector<CampaignReport> aggregate(
    const std::vector<InstanceResult>& rows, Grouping grouping) {
  // sort key -> (display key, stats)
  std::map<std::string, std::pair<std::string, detail::GroupStats>> groups;
  char sort_key[96];
  for (const auto& r : rows) {
    InstanceKey key = parse_instance_key(r.instance);
    std::string display;
    if (grouping == Grouping::All || !key.valid) {
      std::snprintf(sort_key, sizeof sort_key, "all");
      display = "all";
    } else if (grouping == Grouping::Set1ClassType) {
      std::snprintf(sort_key, sizeof sort_key, "%d/%d",
                    detail::variant_rank(key.variant), key.class_id);
      display = key.variant + "/" + std::to_string(key.class_id);
    } else if (grouping == Grouping::Set1ClassDensity) {
      std::snprintf(sort_key, sizeof sort_key, "%d/%s",
                    detail::variant_rank(key.variant), key.density.c_str());
      display = key.variant + "/" + key.density;
    } else {
      std::snprintf(sort_key, sizeof sort_key, "%s/%05d/%05lld/%s",
                    key.variant.c_str(), key.n_items,
                    static_cast<long long>(key.capacity),
                    key.density.c_str());
      display = key.variant + "/" + std::to_string(key.n_items) + "/" +
                std::to_string(key.capacity) + "/" + key.density;
    }
    auto& [disp, stats] = groups[sort_key];
    disp = display;
    ++stats.size;
    stats.gap_sum += r.gap_percent;
    if (r.status == SolveStatus::Optimal) {
      ++stats.opt;
      stats.seconds_solved += r.seconds;
    }
  }

  std::vector<CampaignReport> reports;
  reports.reserve(groups.size());
  for (auto& [_, entry] : groups) {
    auto& [display, stats] = entry;
    CampaignReport rep;
    rep.group = display;
    rep.group_size = stats.size;
    rep.opt_count = stats.opt;
    if (stats.opt > 0) rep.mean_seconds_solved = stats.seconds_solved / stats.opt;
    rep.mean_gap_percent = stats.gap_sum / stats.size;
    reports.push_back(std::move(rep));
  }
  return reports;
}

/// Table with columns Opt | Sec | Gap%, one row per group.
inline std::string markdown_report(const std::vector<CampaignReport>& reports,
                                   const std::string& title) {
  std::string out = "### " + title + "\n\n";
  out += "| Group | Size | Opt | Sec | Gap% |\n";
  out += "|---|---|---|---|---|\n";
  char buf[64];
  for (const auto& rep : reports) {
    out += "| " + rep.group + " | " + std::to_string(rep.group_size) + " | " +
           std::to_string(rep.opt_count) + " | ";
    if (rep.mean_seconds_solved) {
      std::snprintf(buf, sizeof buf, "%.1f", *rep.mean_seconds_solved);
      out += buf;
    } else {
      out += "-";
    }
    std::snprintf(buf, sizeof buf, "%.2f", rep.mean_gap_percent);
    out += " | ";
    out += buf;
    out += " |\n";
  }
  return out;
}

}  // namespace kpc
