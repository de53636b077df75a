#pragma once

// Token-level grammar check for the LP files we emit, written against the
// text only (it never calls the writer's internals):
//
//   file   := "Maximize" row "Subject" "To" conrow* "Binaries" var* "End"
//   row    := NAME ':' expr
//   conrow := NAME ':' expr "<=" INT
//   expr   := INT | term ('+' term)*
//   term   := [INT] var
//   var    := 'x' DIGITS
//
// Also checks that variable indices are within [0, n) and that the Binaries
// section lists each variable exactly once.

#include <cctype>
#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace kpctest {

struct LpCheckResult {
  bool ok = true;
  std::string message;
};

namespace lpdetail {

inline bool is_integer(const std::string& tok) {
  if (tok.empty()) return false;
  size_t i = tok[0] == '-' ? 1 : 0;
  if (i == tok.size()) return false;
  for (; i < tok.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(tok[i]))) return false;
  return true;
}

inline bool is_var(const std::string& tok, int64_t num_vars) {
  if (tok.size() < 2 || tok[0] != 'x') return false;
  const std::string digits = tok.substr(1);
  if (!is_integer(digits) || digits[0] == '-') return false;
  const int64_t idx = std::stoll(digits);
  return idx >= 0 && idx < num_vars;
}

}  // namespace lpdetail

inline LpCheckResult check_lp_grammar(const std::string& text,
                                      int64_t num_vars) {
  std::vector<std::string> toks;
  {
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) toks.push_back(tok);
  }
  size_t pos = 0;
  auto fail = [&](const std::string& msg) {
    LpCheckResult r;
    r.ok = false;
    r.message = msg + " (token " + std::to_string(pos) + ")";
    return r;
  };
  auto peek = [&]() -> const std::string& {
    static const std::string kEnd;
    return pos < toks.size() ? toks[pos] : kEnd;
  };
  auto take = [&]() -> const std::string& {
    static const std::string kEnd;
    return pos < toks.size() ? toks[pos++] : kEnd;
  };

  auto parse_row_name = [&](LpCheckResult& err) {
    const std::string& name = take();
    if (name.size() < 2 || name.back() != ':' ||
        !std::isalpha(static_cast<unsigned char>(name[0]))) {
      err = fail("expected row name ending in ':', got '" + name + "'");
      return false;
    }
    return true;
  };

  // expr up to (but not consuming) `stop_at` or a section keyword
  auto parse_expr = [&](const std::string& stop_at,
                        LpCheckResult& err) -> bool {
    bool first = true;
    int terms = 0;
    while (true) {
      const std::string& t = peek();
      if (t.empty() || t == stop_at || t == "Subject" || t == "Binaries" ||
          t == "End")
        break;
      if (!first) {
        if (t != "+") {
          err = fail("expected '+', got '" + t + "'");
          return false;
        }
        take();
      }
      std::string tok = take();
      if (lpdetail::is_integer(tok)) {
        // constant alone, or coefficient followed by a variable
        if (lpdetail::is_var(peek(), num_vars)) {
          take();
        } else if (!first || (!peek().empty() && peek() != stop_at &&
                              peek() != "Subject" && peek() != "Binaries" &&
                              peek() != "End")) {
          err = fail("bare constant only allowed as a whole expression");
          return false;
        }
      } else if (!lpdetail::is_var(tok, num_vars)) {
        err = fail("expected term, got '" + tok + "'");
        return false;
      }
      first = false;
      ++terms;
    }
    if (terms == 0) {
      err = fail("empty expression");
      return false;
    }
    return true;
  };

  LpCheckResult err;
  if (take() != "Maximize") return fail("missing 'Maximize'");
  if (!parse_row_name(err)) return err;
  if (!parse_expr("", err)) return err;
  if (take() != "Subject" || take() != "To") return fail("missing 'Subject To'");
  while (peek() != "Binaries") {
    if (peek().empty()) return fail("missing 'Binaries'");
    if (!parse_row_name(err)) return err;
    if (!parse_expr("<=", err)) return err;
    if (take() != "<=") return fail("constraint missing '<='");
    if (!lpdetail::is_integer(take())) return fail("constraint missing rhs");
  }
  take();  // Binaries
  std::set<std::string> binaries;
  while (peek() != "End") {
    if (peek().empty()) return fail("missing 'End'");
    const std::string& v = take();
    if (!lpdetail::is_var(v, num_vars))
      return fail("bad binary variable '" + v + "'");
    if (!binaries.insert(v).second)
      return fail("duplicate binary variable '" + v + "'");
  }
  take();  // End
  if (pos != toks.size()) return fail("trailing tokens after 'End'");
  if (static_cast<int64_t>(binaries.size()) != num_vars)
    return fail("Binaries lists " + std::to_string(binaries.size()) +
                " variables, expected " + std::to_string(num_vars));
  return LpCheckResult{};
}

}  // namespace kpctest
