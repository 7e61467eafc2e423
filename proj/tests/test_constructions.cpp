#include <doctest.h>

#include <random>

#include "bdc/algebra.hpp"
#include "bdc/constructions.hpp"
#include "bdc/error.hpp"

using namespace bdc;

namespace {

std::uint64_t factorial(int m) { return m <= 1 ? 1 : m * factorial(m - 1); }

std::vector<FieldElement> random_point(int arity, std::mt19937_64& rng, const PrimeField& f) {
  std::vector<FieldElement> pt;
  for (int k = 0; k < arity; ++k) pt.push_back(f.from_uint(rng()));
  return pt;
}

}  // namespace

TEST_CASE("Grenet ABP computes the permanent") {
  for (int m = 1; m <= 4; ++m) {
    CAPTURE(m);
    const Abp g = grenet_abp(m);
    REQUIRE_NOTHROW(g.validate());
    CHECK(g.vertex_count() == (1 << m));
    CHECK(abp_path_count(g) == factorial(m));
    const MultiPoly per = TargetPolynomial::permanent(m).to_multipoly();
    CHECK(abp_path_value(g) == (m % 2 == 1 ? per : -per));
    const auto layers = abp_layers(g);
    REQUIRE_FALSE(layers.empty());
    for (const auto& e : g.edges()) {
      CHECK(layers[static_cast<std::size_t>(e.to)] == layers[static_cast<std::size_t>(e.from)] + 1);
    }
    CHECK(layers[static_cast<std::size_t>(g.target())] == m);
  }
  const PrimeField f;
  std::mt19937_64 rng(5);
  const auto per5 = TargetPolynomial::permanent(5);
  const Abp g5 = grenet_abp(5);
  CHECK(abp_path_count(g5) == 120);
  for (int rep = 0; rep < 3; ++rep) {
    const auto pt = random_point(25, rng, f);
    CHECK(abp_eval_mod(g5, pt, f) == target_eval(per5, pt, f));
  }
  CHECK_THROWS_AS(grenet_abp(0), InputError);
  CHECK_THROWS_AS(grenet_abp(6), InputError);
}

TEST_CASE("Grenet matrices have determinant per_m") {
  const PrimeField f;
  std::mt19937_64 rng(6);
  for (int m = 1; m <= 5; ++m) {
    const auto per = TargetPolynomial::permanent(m);
    const VarMatrix a = abp_to_matrix(grenet_abp(m), per);
    CHECK(a.size() == (1 << m) - 1);
    if (m <= 3) CHECK(det_symbolic(a) == per.to_multipoly());
    for (int rep = 0; rep < 3; ++rep) {
      const auto pt = random_point(m * m, rng, f);
      CHECK(det_mod_p(substitute_mod(a, pt, f), f) == target_eval(per, pt, f));
    }
  }
}

TEST_CASE("Grenet(3) matches the published 7x7 matrix up to relabeling") {
  const VarMatrix raw = abp_to_matrix(grenet_abp(3));
  const VarMatrix expected = parse_matrix(
      "7\n"
      "0 x1_1 x1_2 x1_3 0 0 0\n"
      "0 1 0 0 x2_2 x2_3 0\n"
      "0 0 1 0 x2_1 0 x2_3\n"
      "0 0 0 1 0 x2_1 x2_2\n"
      "x3_3 0 0 0 1 0 0\n"
      "x3_2 0 0 0 0 1 0\n"
      "x3_1 0 0 0 0 0 1\n",
      3);
  CHECK(raw == expected);

  // Rotate columns left by one, then swap target rows 2 and 3.
  VarMatrix rotated(7, Flavor::kBinary, raw.naming());
  for (int i = 0; i < 7; ++i) {
    for (int j = 0; j < 7; ++j) rotated.set(i, j, raw(i, (j + 1) % 7));
  }
  rotated.declare_variables(9);
  const std::vector<int> sigma{0, 2, 1}, id{0, 1, 2};
  CHECK(permute_target_variables(rotated, sigma, id, false) == grenet7x7());
}

TEST_CASE("published matrices") {
  const MultiPoly per3 = TargetPolynomial::permanent(3).to_multipoly();
  const VarMatrix g7 = grenet7x7();
  CHECK(g7.size() == 7);
  CHECK(g7.flavor() == Flavor::kBinary);
  CHECK(det_symbolic(g7) == per3);
  // x1_j and x2_j occur once, x3_j twice.
  const CandidateAssignment pos = g7.variable_positions();
  for (int v = 1; v <= 9; ++v) CHECK(pos.positions_of(v).size() == (v >= 7 ? 2u : 1u));

  const VarMatrix p2 = per2_example_matrix();
  CHECK(p2.size() == 3);
  CHECK(det_symbolic(p2) == TargetPolynomial::permanent(2).to_multipoly());
  CHECK(det_symbolic(p2).to_string(p2.naming()) == "x1_2*x2_1 + x1_1*x2_2");

  const VarMatrix fig = fig1_matrix();
  CHECK(fig.flavor() == Flavor::kInteger);
  CHECK(det_symbolic(fig).to_string() == "3*x1*x2 + 2*x1^2");
}

TEST_CASE("uniqueness example: g A h equals the 7x7 matrix") {
  const VarMatrix a = uniqueness_example_a();
  const IntMatrix g = uniqueness_example_g(), h = uniqueness_example_h();
  CHECK(a.flavor() == Flavor::kBinary);
  CHECK(det_symbolic(a) == TargetPolynomial::permanent(3).to_multipoly());
  const std::int64_t dg = det_int(g), dh = det_int(h);
  CHECK((dg == 1 || dg == -1));
  CHECK((dh == 1 || dh == -1));
  CHECK(dg * dh == 1);
  CHECK(gl_sandwich(g, a, h).equals(grenet7x7()));
  CHECK_FALSE(gl_sandwich(g, a, g).equals(grenet7x7()));
  CHECK_FALSE(a == grenet7x7());
}

TEST_CASE("subset ABP computes the Hamiltonian cycle polynomial") {
  const PrimeField f;
  std::mt19937_64 rng(7);
  const int sizes[] = {0, 2, 5, 13, 33};
  for (int m = 1; m <= 4; ++m) {
    CAPTURE(m);
    const Abp abp = hc_abp(m);
    REQUIRE_NOTHROW(abp.validate());
    const auto hc = TargetPolynomial::hamiltonian_cycle(m + 1);
    CHECK(abp_path_count(abp) == factorial(m));
    const MultiPoly value = abp_path_value(abp);
    const MultiPoly want = hc.to_multipoly();
    CHECK((value == want || value == -want));
    const VarMatrix a = abp_to_matrix(abp, hc);
    CHECK(a.size() == sizes[m]);
    if (m <= 3) CHECK(det_symbolic(a) == want);
    for (int rep = 0; rep < 3; ++rep) {
      const auto pt = random_point(hc.arity(), rng, f);
      CHECK(det_mod_p(substitute_mod(a, pt, f), f) == target_eval(hc, pt, f));
    }
  }
  CHECK_THROWS_AS(hc_abp(5), InputError);
}

TEST_CASE("hand-made HC matrices") {
  for (int m : {2, 3}) {
    const VarMatrix a = explicit_hc_matrix(m);
    CHECK(a.size() == m);
    CHECK(det_symbolic(a) == TargetPolynomial::hamiltonian_cycle(m).to_multipoly());
  }
  CHECK_THROWS_AS(explicit_hc_matrix(4), InputError);
}
