#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "kpc/core.hpp"
#include "kpc/error.hpp"

// LP-format export of the 0/1 model: maximize the selected profit subject to
// the capacity row and one "x_i + x_j <= 1" row per conflict edge, all
// variables binary. Row order is deterministic: capacity first, then edges
// sorted by (i, j). The layout is fixed so exports are byte-stable:
//
//   Maximize
//    obj: 6 x0 + 9 x1 + ...
//   Subject To
//    cap: 7 x0 + 9 x1 + ... <= 20
//    conf1: x0 + x1 <= 1
//   Binaries
//    x0 x1 ...
//   End
//
// Objective and capacity terms carry explicit coefficients; conflict rows
// use bare variables. Lines wrap at 72 columns with a one-space indent on
// continuation lines.

namespace kpc {

namespace detail {

constexpr size_t kLpWrapColumn = 72;

inline void append_wrapped(std::string& out, std::string& line,
                           const std::string& piece) {
  if (line.size() + 1 + piece.size() > kLpWrapColumn && !line.empty()) {
    out += line;
    out += '\n';
    line = " ";
  }
  line += ' ';
  line += piece;
}

inline void flush_line(std::string& out, std::string& line) {
  out += line;
  out += '\n';
  line.clear();
}

}  // namespace detail

inline std::string write_lp_text(const Instance& inst) {
  const int32_t n = inst.num_items();
  std::string out;
  out.reserve(64 + static_cast<size_t>(n) * 12 + inst.edges.size() * 20);
  std::string line;

  out += "Maximize\n";
  line = " obj:";
  if (n == 0) {
    detail::append_wrapped(out, line, "0");
  } else {
    for (int32_t i = 0; i < n; ++i) {
      std::string term = i == 0 ? "" : "+ ";
      term += std::to_string(inst.profits[i]) + " x" + std::to_string(i);
      detail::append_wrapped(out, line, term);
    }
  }
  detail::flush_line(out, line);

  out += "Subject To\n";
  line = " cap:";
  if (n == 0) {
    detail::append_wrapped(out, line, "0");
  } else {
    for (int32_t i = 0; i < n; ++i) {
      std::string term = i == 0 ? "" : "+ ";
      term += std::to_string(inst.weights[i]) + " x" + std::to_string(i);
      detail::append_wrapped(out, line, term);
    }
  }
  detail::append_wrapped(out, line, "<= " + std::to_string(inst.capacity));
  detail::flush_line(out, line);

  int row = 0;
  for (const auto& [a, b] : inst.edges) {
    ++row;
    line = " conf" + std::to_string(row) + ":";
    detail::append_wrapped(out, line, "x" + std::to_string(a));
    detail::append_wrapped(out, line, "+ x" + std::to_string(b));
    detail::append_wrapped(out, line, "<= 1");
    detail::flush_line(out, line);
  }

  out += "Binaries\n";
  if (n > 0) {
    line.clear();
    for (int32_t i = 0; i < n; ++i)
      detail::append_wrapped(out, line, "x" + std::to_string(i));
    detail::flush_line(out, line);
  }
  out += "End\n";
  return out;
}

inline void write_lp_file(const Instance& inst, const std::string& path) {
  const std::string text = write_lp_text(inst);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) fail(ErrorCode::IoError, "write to '" + path + "' failed");
}

}  // namespace kpc
