#include <doctest.h>

#include <random>

#include "bdc/algebra.hpp"
#include "bdc/constructions.hpp"
#include "bdc/error.hpp"
#include "bdc/matrix.hpp"
#include "oracles.hpp"

using namespace bdc;

TEST_CASE("parse the per_2 example with sequential names") {
  const VarMatrix a = parse_matrix("3\n0 x1 x3\nx2 0 1\nx4 1 0\n");
  CHECK(a.size() == 3);
  CHECK(a.flavor() == Flavor::kBinary);
  CHECK(a.var_count() == 4);
  // x1 = x11, x2 = x12, x3 = x21, x4 = x22
  CHECK(det_symbolic(a).to_string() == "x2*x3 + x1*x4");
  CHECK(det_symbolic(a.with_naming(VarNaming{})) == det_symbolic(per2_example_matrix()));
}

TEST_CASE("serialize and parse round trip") {
  const VarMatrix g = grenet7x7();
  const std::string text = serialize_matrix(g);
  CHECK(text.rfind("7 binary\nx1_1 x1_2 x1_3 0 0 0 0\n", 0) == 0);
  CHECK(parse_matrix(text) == g);
  CHECK(serialize_matrix(parse_matrix(text)) == text);
  const VarMatrix c = fig1_matrix();
  CHECK(serialize_matrix(c) == "3 integer\n3 0 -2\n0 x1 0\nx1 0 x2\n");
  CHECK(parse_matrix(serialize_matrix(c)) == c);
}

TEST_CASE("grid width is inferred or forced") {
  const VarMatrix a = parse_matrix("2\nx1_2 0\n0 x2_1\n");
  CHECK(a.naming().grid_width == 2);
  CHECK(a.var_count() == 4);
  const VarMatrix b = parse_matrix("2\nx1_2 0\n0 x2_1\n", 3);
  CHECK(b.naming().grid_width == 3);
  CHECK(b(0, 0) == Entry::var(2));
  CHECK(b(1, 1) == Entry::var(4));
  CHECK_THROWS_AS(parse_matrix("2\nx1_4 0\n0 1\n", 3), ParseError);
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_matrix("3\n0 1 1\n1 0\n1 1 0\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  try {
    parse_matrix("2\n0 y\n1 0\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
  CHECK_THROWS_AS(parse_matrix("2\n0 5\n1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_matrix("2 integer\nx1 x1_1\n1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_matrix("2 ternary\n0 1\n1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_matrix(""), ParseError);
  CHECK_THROWS_AS(parse_matrix("3\n0 1 1\n1 0 1\n"), ParseError);
  CHECK_NOTHROW(parse_matrix("2 integer\n-7 x1\n1 0\n"));
}

TEST_CASE("parse_var_token") {
  CHECK(parse_var_token("x12")->seq == 12);
  CHECK(parse_var_token("x2_3")->row == 2);
  CHECK(parse_var_token("x2_3")->col == 3);
  CHECK_FALSE(parse_var_token("x0"));
  CHECK_FALSE(parse_var_token("x1_"));
  CHECK_FALSE(parse_var_token("y1"));
  CHECK_FALSE(parse_var_token("x1_0"));
}

TEST_CASE("entry rules") {
  VarMatrix a(2);
  CHECK_THROWS_AS(a.set(0, 0, Entry::integer(3)), InputError);
  VarMatrix g(2, Flavor::kBinary, VarNaming{2});
  CHECK_THROWS_AS(g.set(0, 0, Entry::var(5)), InputError);
  CHECK(Entry::integer(1) == Entry::one());
  CHECK(Entry::integer(0) == Entry::zero());
}

TEST_CASE("support and variable placement round trip") {
  const VarMatrix g = grenet7x7();
  const SupportMatrix s = support(g);
  CHECK(s.ones() == 18);
  const CandidateAssignment pos = g.variable_positions();
  CHECK(pos.variable_count() == 9);
  CHECK(place_variables(s, pos, VarNaming{3}) == g);
  CHECK_THROWS_AS(support(fig1_matrix()), InputError);

  SupportMatrix zero_spot = s;
  zero_spot.set(0, 0, false);
  CHECK_THROWS_AS(place_variables(zero_spot, pos, VarNaming{3}), InputError);
}

TEST_CASE("position sets") {
  const PositionSet p({{0, 1}, {2, 2}});
  CHECK(p.to_string() == "{(1,2),(3,3)}");
  CHECK(PositionSet::from_mask(p.to_mask(6), 6) == p);
  CHECK(p.contains({2, 2}));
  CHECK_THROWS_AS(CandidateAssignment({PositionSet({{0, 0}}), PositionSet({{0, 0}, {1, 1}})}), InputError);
}

TEST_CASE("support matrix bit strings") {
  const SupportMatrix b = SupportMatrix::from_bitstring("011101110");
  CHECK(b.size() == 3);
  CHECK(b.to_bitstring() == "011101110");
  CHECK(b.row(0) == 0b011);
  CHECK(b.column(0) == 0b011);
  CHECK(b.transposed() == b);
  CHECK(SupportMatrix::from_bitstring("0110").size() == 2);
  CHECK_THROWS(SupportMatrix::from_bitstring("01101"));
  CHECK_THROWS(SupportMatrix::from_bitstring("01120"));
}

TEST_CASE("substitution") {
  const VarMatrix a = per2_example_matrix();
  const std::int64_t pt[] = {1, 2, 3, 4};
  // x11 x22 + x12 x21 = 1*4 + 2*3
  CHECK(det_int(substitute(a, pt)) == 10);
  const std::int64_t short_pt[] = {1, 2};
  CHECK_THROWS_AS(substitute(a, short_pt), DimensionError);
}

TEST_CASE("equivalence actions preserve |det|") {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 300; ++k) {
    const int n = 2 + k % 6;
    const SupportMatrix b = oracle::random_support(n, rng);
    const auto r = oracle::random_permutation(n, rng), c = oracle::random_permutation(n, rng);
    const bool t = k % 2;
    const SupportMatrix e = apply_equivalence(b, r, c, t);
    const std::int64_t d0 = det_int(b.to_int_matrix()), d1 = det_int(e.to_int_matrix());
    REQUIRE(d1 == oracle::permutation_sign(r) * oracle::permutation_sign(c) * d0);
    REQUIRE(e.ones() == b.ones());
  }
  const int bad[] = {0, 0, 1};
  const int ok[] = {0, 1, 2};
  CHECK_THROWS_AS(apply_equivalence(SupportMatrix(3), bad, ok, false), InputError);
}

TEST_CASE("GL sandwich reproduces the sparse 7x7 matrix") {
  const IntMatrix g = uniqueness_example_g(), h = uniqueness_example_h();
  CHECK(det_int(g) == 1);
  CHECK(det_int(h) == 1);
  const LinExprMatrix prod = gl_sandwich(g, uniqueness_example_a(), h);
  CHECK(prod.equals(grenet7x7()));
  CHECK(prod.to_var_matrix(VarNaming{3}) == grenet7x7());

  IntMatrix id(7, 0);
  for (int i = 0; i < 7; ++i) id(i, i) = 1;
  CHECK(gl_sandwich(id, grenet7x7(), id).to_var_matrix(VarNaming{3}) == grenet7x7());
  CHECK_THROWS_AS(gl_sandwich(IntMatrix(6, 0), grenet7x7(), id), DimensionError);
}

TEST_CASE("non-binary sandwich products are reported") {
  IntMatrix g(7, 0);
  for (int i = 0; i < 7; ++i) g(i, i) = 1;
  g(0, 1) = 1;
  const LinExprMatrix prod = gl_sandwich(g, grenet7x7(), g);
  CHECK_FALSE(prod.equals(grenet7x7()));
  CHECK_THROWS_AS(prod.to_var_matrix(VarNaming{3}), InputError);
}

TEST_CASE("target variable relabeling keeps det = per_3") {
  const MultiPoly per3 = TargetPolynomial::permanent(3).to_multipoly();
  std::mt19937_64 rng(22);
  for (int k = 0; k < 24; ++k) {
    const auto s = oracle::random_permutation(3, rng), t = oracle::random_permutation(3, rng);
    const VarMatrix a = permute_target_variables(grenet7x7(), s, t, k % 2 == 1);
    REQUIRE(det_symbolic(a) == per3);
  }
  const int id[] = {0, 1, 2};
  CHECK(permute_target_variables(grenet7x7(), id, id, false) == grenet7x7());
  CHECK_THROWS_AS(permute_target_variables(per2_example_matrix(), id, id, false), InputError);
}
