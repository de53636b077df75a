#pragma once

#include <charconv>
#include <climits>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "kpc/core.hpp"
#include "kpc/error.hpp"

// KPC text format (UTF-8, '\n' line endings, single-space separated,
// no trailing whitespace):
//
//   # optional comments
//   n m c
//   p_0 w_0
//   ...
//   p_{n-1} w_{n-1}
//   i j        (m lines, 0-based)
//
// The writer emits a leading "# name: <name>" comment when the instance
// has a name; the reader recovers it, so write -> read -> write is
// byte-identical.

namespace kpc {

namespace detail {

inline int64_t parse_int(std::string_view tok, int line_no,
                         const char* what) {
  int64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": '" +
                                    std::string(tok) + "' is not an integer " +
                                    what);
  return value;
}

inline std::vector<std::string_view> split_tokens(std::string_view line,
                                                  int line_no) {
  std::vector<std::string_view> toks;
  size_t pos = 0;
  while (pos <= line.size()) {
    size_t next = line.find(' ', pos);
    if (next == std::string_view::npos) next = line.size();
    if (next == pos)
      fail(ErrorCode::ParseError, "line " + std::to_string(line_no) +
                                      ": empty token (double or trailing "
                                      "space?)");
    toks.push_back(line.substr(pos, next - pos));
    pos = next + 1;
    if (next == line.size()) break;
  }
  return toks;
}

}  // namespace detail

inline Instance parse_instance_text(std::string_view text) {
  InstanceData raw;
  int line_no = 0;
  size_t pos = 0;
  int64_t n = -1, m = -1;
  int64_t items_read = 0, edges_read = 0;

  auto next_line = [&](std::string_view& line) -> bool {
    while (pos < text.size()) {
      size_t eol = text.find('\n', pos);
      if (eol == std::string_view::npos) eol = text.size();
      line = text.substr(pos, eol - pos);
      pos = eol + 1;
      ++line_no;
      if (line.empty() || line[0] == '#') {
        constexpr std::string_view kNamePrefix = "# name: ";
        if (raw.name.empty() && line.substr(0, kNamePrefix.size()) ==
                                    kNamePrefix)
          raw.name = std::string(line.substr(kNamePrefix.size()));
        continue;
      }
      return true;
    }
    return false;
  };

  std::string_view line;
  if (!next_line(line))
    fail(ErrorCode::ParseError, "missing header line 'n m c'");
  {
    auto toks = detail::split_tokens(line, line_no);
    if (toks.size() != 3)
      fail(ErrorCode::ParseError,
           "line " + std::to_string(line_no) +
               ": header must be 'n m c' (3 tokens, got " +
               std::to_string(toks.size()) + ")");
    n = detail::parse_int(toks[0], line_no, "(item count)");
    m = detail::parse_int(toks[1], line_no, "(edge count)");
    raw.capacity = detail::parse_int(toks[2], line_no, "(capacity)");
    if (n < 0 || m < 0)
      fail(ErrorCode::ParseError,
           "line " + std::to_string(line_no) + ": negative count in header");
  }
  while (items_read < n) {
    if (!next_line(line))
      fail(ErrorCode::ParseError,
           "truncated file: expected " + std::to_string(n) +
               " item lines, got " + std::to_string(items_read));
    auto toks = detail::split_tokens(line, line_no);
    if (toks.size() != 2)
      fail(ErrorCode::ParseError, "line " + std::to_string(line_no) +
                                      ": item line must be 'p w'");
    raw.profits.push_back(detail::parse_int(toks[0], line_no, "(profit)"));
    raw.weights.push_back(detail::parse_int(toks[1], line_no, "(weight)"));
    ++items_read;
  }
  while (edges_read < m) {
    if (!next_line(line))
      fail(ErrorCode::ParseError,
           "truncated file: expected " + std::to_string(m) +
               " edge lines, got " + std::to_string(edges_read));
    auto toks = detail::split_tokens(line, line_no);
    if (toks.size() != 2)
      fail(ErrorCode::ParseError, "line " + std::to_string(line_no) +
                                      ": edge line must be 'i j'");
    int64_t a = detail::parse_int(toks[0], line_no, "(edge endpoint)");
    int64_t b = detail::parse_int(toks[1], line_no, "(edge endpoint)");
    if (a < INT32_MIN || a > INT32_MAX || b < INT32_MIN || b > INT32_MAX)
      fail(ErrorCode::ParseError, "line " + std::to_string(line_no) +
                                      ": edge endpoint out of range");
    raw.edges.emplace_back(static_cast<int32_t>(a), static_cast<int32_t>(b));
    ++edges_read;
  }
  if (next_line(line))
    fail(ErrorCode::ParseError, "line " + std::to_string(line_no) +
                                     ": unexpected content after " +
                                     std::to_string(m) + " edge lines");
  return validate_instance(std::move(raw));
}

inline std::string write_instance_text(const Instance& inst) {
  if (inst.name.find('\n') != std::string::npos ||
      inst.name.find('\r') != std::string::npos)
    fail(ErrorCode::IoError, "instance name must be a single line");
  std::string out;
  out.reserve(32 + inst.profits.size() * 8 + inst.edges.size() * 10);
  if (!inst.name.empty()) {
    out += "# name: ";
    out += inst.name;
    out += '\n';
  }
  out += std::to_string(inst.num_items());
  out += ' ';
  out += std::to_string(inst.edges.size());
  out += ' ';
  out += std::to_string(inst.capacity);
  out += '\n';
  for (int32_t i = 0; i < inst.num_items(); ++i) {
    out += std::to_string(inst.profits[i]);
    out += ' ';
    out += std::to_string(inst.weights[i]);
    out += '\n';
  }
  for (const auto& [a, b] : inst.edges) {
    out += std::to_string(a);
    out += ' ';
    out += std::to_string(b);
    out += '\n';
  }
  return out;
}

inline Instance read_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_instance_text(buf.str());
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

inline void write_instance(const Instance& inst, const std::string& path) {
  std::string text = write_instance_text(inst);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) fail(ErrorCode::IoError, "write to '" + path + "' failed");
}

}  // namespace kpc
