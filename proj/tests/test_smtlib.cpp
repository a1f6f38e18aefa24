// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "rankweave/smtlib.hpp"
#include "test_support.hpp"

using namespace rankweave;
using test::make_matrix;
using test::random_matrix;

namespace {

CollectiveSpec spec_of(Algorithm a, int n, double size, CostMode mode = CostMode::LatencyOnly,
                       int b = 2) {
  CollectiveSpec s;
  s.algorithm = a;
  s.n = n;
  s.size_bytes = size;
  s.cost_mode = mode;
  s.bcube_b = b;
  return s;
}

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
  std::size_t count = 0, pos = 0;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    ++count;
    pos += needle.size();
  }
  return count;
}

}  // namespace

TEST_CASE("N=2 ring emission: two rank variables, distinctness, two select terms") {
  auto m = make_matrix({{0, 5}, {7, 0}});
  const std::string text = emit_smtlib(m, spec_of(Algorithm::Ring, 2, 8.0));
  CHECK(balanced_sexpr(text));
  CHECK(text.find("(declare-const r_0 Int)") != std::string::npos);
  CHECK(text.find("(declare-const r_1 Int)") != std::string::npos);
  CHECK(text.find("(assert (distinct r_0 r_1))") != std::string::npos);
  CHECK(text.find("(minimize cost)") != std::string::npos);
  CHECK(text.find("(check-sat)") != std::string::npos);
  CHECK(count_occurrences(text, "(sel r_") == 2);
  // flattened matrix constants: c[0*2+1] = 5, c[1*2+0] = 7
  CHECK(text.find("(assert (= (select c 1) 5.0))") != std::string::npos);
  CHECK(text.find("(assert (= (select c 2) 7.0))") != std::string::npos);
  CHECK(text.find("(assert (< cost") == std::string::npos);  // no bound requested
}

TEST_CASE("upper bound becomes one strict assertion on the objective") {
  auto m = make_matrix({{0, 5}, {7, 0}});
  const std::string text = emit_smtlib(m, spec_of(Algorithm::Ring, 2, 8.0), 12.5);
  CHECK(count_occurrences(text, "(assert (< cost 12.5))") == 1);
}

TEST_CASE("emission is balanced for every algorithm") {
  std::mt19937_64 rng(83);
  auto m = random_matrix(4, rng);
  for (auto algo : {Algorithm::Ring, Algorithm::HalvingDoubling, Algorithm::DoubleBinaryTree,
                    Algorithm::BCube}) {
    for (auto mode : {CostMode::LatencyOnly, CostMode::LatencyTimesSize}) {
      const std::string text = emit_smtlib(m, spec_of(algo, 4, 1000.0, mode), 1e9);
      CHECK(balanced_sexpr(text));
      CHECK(count_occurrences(text, "(declare-const r_") == 4);
      CHECK(count_occurrences(text, "(assert (= (select c ") == 16);
    }
  }
  auto m16 = random_matrix(16, rng);
  CHECK(balanced_sexpr(emit_smtlib(m16, spec_of(Algorithm::BCube, 16, 64.0, CostMode::LatencyTimesSize, 4))));
}

TEST_CASE("tree and BCube emission refuse N above the cap") {
  auto m = test::uniform_matrix(8, 1.0);
  CHECK_THROWS_WITH_AS(emit_smtlib(m, spec_of(Algorithm::DoubleBinaryTree, 8, 1.0), std::nullopt, 4),
                       doctest::Contains("term blow-up"), domain_error);
  CHECK_THROWS_AS(emit_smtlib(m, spec_of(Algorithm::BCube, 8, 1.0), std::nullopt, 4), domain_error);
  // ring has no cap
  const std::string ring = emit_smtlib(m, spec_of(Algorithm::Ring, 8, 1.0), std::nullopt, 4);
  CHECK(balanced_sexpr(ring));
  // raising the cap forces emission through
  CHECK(balanced_sexpr(emit_smtlib(m, spec_of(Algorithm::DoubleBinaryTree, 8, 1.0), std::nullopt, 8)));
}

TEST_CASE("real literals avoid exponent notation") {
  auto m = make_matrix({{0, 0.0001220703125}, {1048576, 0}});  // 2^-13 and 2^20
  const std::string text = emit_smtlib(m, spec_of(Algorithm::Ring, 2, 1e6, CostMode::LatencyTimesSize));
  CHECK(text.find("e+") == std::string::npos);
  CHECK(text.find("E+") == std::string::npos);
  CHECK(text.find("0.0001220703125") != std::string::npos);
  CHECK(text.find("1048576.0") != std::string::npos);
  CHECK(text.find("1000000.0") != std::string::npos);
}

TEST_CASE("model files parse back to permutations") {
  const auto order = parse_model_file("r_0 = 2\n; comment\n\nr_2=1\n  r_1 = 0  \n", 3);
  CHECK(order.perm == std::vector<int>{2, 0, 1});

  CHECK_THROWS_AS(parse_model_file("r_0 = 0\n", 2), domain_error);                 // missing r_1
  CHECK_THROWS_AS(parse_model_file("r_0 = 0\nr_0 = 1\n", 2), domain_error);        // duplicate
  CHECK_THROWS_AS(parse_model_file("r_0 = 0\nr_1 = 0\n", 2), domain_error);        // not a bijection
  CHECK_THROWS_AS(parse_model_file("r_0 = 0\nr_1 = 2\n", 2), domain_error);        // out of range
  CHECK_THROWS_AS(parse_model_file("r_0 = 0\nr_7 = 1\n", 2), domain_error);        // bad index
  CHECK_THROWS_AS(parse_model_file("nonsense\n", 1), domain_error);
  CHECK_THROWS_AS(parse_model_file("r_0 = 0 trailing\nr_1 = 1\n", 2), domain_error);
}

TEST_CASE("balanced_sexpr counts parens outside comments") {
  CHECK(balanced_sexpr("(a (b) c)"));
  CHECK(!balanced_sexpr("(a (b) c"));
  CHECK(!balanced_sexpr(")("));
  CHECK(balanced_sexpr("(a) ; trailing (unclosed in a comment\n(b)"));
}
