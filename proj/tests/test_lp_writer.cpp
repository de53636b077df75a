#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "kpc/lp_writer.hpp"
#include "lp_grammar.hpp"
#include "test_support.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("example6 export matches the golden LP byte for byte") {
  kpc::Instance inst = kpctest::example6();
  const std::string expected =
      slurp(std::string(KPC_TEST_DATA_DIR) + "/example6_golden.lp");
  CHECK(kpc::write_lp_text(inst) == expected);
}

TEST_CASE("an edge-free instance exports a pure knapsack model") {
  kpc::InstanceData raw;
  raw.profits = {3, 4};
  raw.weights = {2, 5};
  raw.capacity = 6;
  const std::string lp = kpc::write_lp_text(kpc::validate_instance(raw));
  CHECK(lp.find("conf") == std::string::npos);
  CHECK(lp ==
        "Maximize\n"
        " obj: 3 x0 + 4 x1\n"
        "Subject To\n"
        " cap: 2 x0 + 5 x1 <= 6\n"
        "Binaries\n"
        " x0 x1\n"
        "End\n");
}

TEST_CASE("exports pass the LP grammar check") {
  for (int t = 0; t < 40; ++t) {
    kpc::Instance inst = kpctest::random_instance(8001, t);
    auto r = kpctest::check_lp_grammar(kpc::write_lp_text(inst),
                                       inst.num_items());
    INFO(r.message);
    CHECK(r.ok);
  }
}

TEST_CASE("long rows wrap and still parse") {
  kpc::InstanceData raw;
  for (int i = 0; i < 200; ++i) {
    raw.profits.push_back(1 + i % 97);
    raw.weights.push_back(1 + (i * 7) % 89);
  }
  raw.capacity = 500;
  for (int i = 0; i < 150; ++i) raw.edges.emplace_back(i, i + 50);
  kpc::Instance inst = kpc::validate_instance(std::move(raw));
  const std::string lp = kpc::write_lp_text(inst);

  size_t start = 0;
  while (start < lp.size()) {
    size_t eol = lp.find('\n', start);
    if (eol == std::string::npos) eol = lp.size();
    CHECK(eol - start <= 72);
    start = eol + 1;
  }
  auto r = kpctest::check_lp_grammar(lp, inst.num_items());
  INFO(r.message);
  CHECK(r.ok);
}

TEST_CASE("the empty instance still exports something parseable") {
  const std::string lp = kpc::write_lp_text(kpc::validate_instance({}));
  auto r = kpctest::check_lp_grammar(lp, 0);
  INFO(r.message);
  CHECK(r.ok);
}
