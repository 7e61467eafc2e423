#include <doctest.h>

#include <cmath>
#include <random>

#include "bdc/constructions.hpp"
#include "bdc/error.hpp"
#include "bdc/gadgets.hpp"

using namespace bdc;

namespace {

int floor_log2(std::uint64_t c) { return 63 - __builtin_clzll(c); }

// Random layered ABP with labels 1 or x1..x_vars.
Abp random_abp(int layers, int width, int vars, std::mt19937_64& rng) {
  std::bernoulli_distribution edge(0.5), is_var(0.6);
  std::uniform_int_distribution<int> var(1, vars);
  Abp abp(1, 0, 0);
  std::vector<int> prev{0};
  for (int l = 0; l < layers; ++l) {
    std::vector<int> cur;
    const int w = l + 1 == layers ? 1 : width;
    for (int k = 0; k < w; ++k) cur.push_back(abp.add_vertex());
    for (int v : cur) {
      bool any = false;
      for (int u : prev) {
        if (edge(rng) || (!any && u == prev.back())) {
          abp.add_edge(u, v, is_var(rng) ? Entry::var(var(rng)) : Entry::one());
          any = true;
        }
      }
    }
    prev = cur;
  }
  abp.set_target(prev.front());
  return abp;
}

}  // namespace

TEST_CASE("addition chain for 15") {
  const AdditionChain ch = addition_chain(15);
  CHECK_NOTHROW(ch.validate());
  CHECK(ch.length() <= 6);
  CHECK(ch.values == std::vector<std::uint64_t>{1, 2, 3, 6, 7, 14, 15});
  CHECK_THROWS_AS(addition_chain(0), InputError);
}

TEST_CASE("addition chains are valid and short") {
  for (std::uint64_t c = 1; c <= 2000; ++c) {
    const AdditionChain ch = addition_chain(c);
    REQUIRE_NOTHROW(ch.validate());
    REQUIRE(ch.values.back() == c);
    REQUIRE(ch.length() <= 2 * floor_log2(c));
  }
  AdditionChain bad = addition_chain(6);
  bad.values[2] = 4;
  CHECK_THROWS_AS(bad.validate(), InputError);
  AdditionChain forward = addition_chain(3);
  forward.steps[0] = {1, 0};
  CHECK_THROWS_AS(forward.validate(), InputError);
}

TEST_CASE("constant ABPs have the right value and size") {
  const PrimeField f;
  for (std::int64_t c = -1000; c <= 1000; ++c) {
    if (c == 0) continue;
    const Abp abp = constant_abp(c);
    REQUIRE_NOTHROW(abp.validate());
    const std::uint64_t mag = static_cast<std::uint64_t>(c < 0 ? -c : c);
    REQUIRE(abp.vertex_count() <= 4 * floor_log2(mag) + 3);
    REQUIRE(abp_path_count(abp) == mag);
    REQUIRE(abp_eval_mod(abp, {}, f) == f.from_int(c));
    if (mag <= 300) REQUIRE(abp_path_value(abp) == MultiPoly::constant(c));
  }
  CHECK(constant_abp(1).vertex_count() == 2);
  CHECK(constant_abp(-1).vertex_count() == 3);
  CHECK_THROWS_AS(constant_abp(0), InputError);
}

TEST_CASE("ABP validation") {
  Abp cyc(3, 0, 2);
  cyc.add_edge(0, 1, Entry::one());
  cyc.add_edge(1, 0, Entry::one());
  cyc.add_edge(1, 2, Entry::one());
  CHECK_THROWS_AS(cyc.validate(), InputError);

  Abp par(2, 0, 1);
  par.add_edge(0, 1, Entry::one());
  par.add_edge(0, 1, Entry::var(1));
  CHECK_THROWS_AS(par.validate(), InputError);

  Abp into_source(3, 0, 2);
  into_source.add_edge(1, 0, Entry::one());
  CHECK_THROWS_AS(into_source.validate(), InputError);

  Abp abp(2, 0, 1);
  CHECK_THROWS_AS(abp.add_edge(0, 1, Entry::integer(5)), InputError);
}

TEST_CASE("path values by enumeration and by evaluation agree") {
  std::mt19937_64 rng(31);
  const PrimeField f;
  for (int k = 0; k < 100; ++k) {
    const Abp abp = random_abp(2 + k % 4, 3, 3, rng);
    REQUIRE_NOTHROW(abp.validate());
    const MultiPoly value = abp_path_value(abp);
    std::vector<FieldElement> pt;
    for (int v = 0; v < 3; ++v) pt.push_back(f.from_uint(rng()));
    REQUIRE(abp_eval_mod(abp, pt, f) == value.eval_mod(pt, f));
  }
}

TEST_CASE("path enumeration budget") {
  const Abp abp = constant_abp(5000);
  CHECK(abp_path_count(abp) == 5000);
  CHECK_THROWS_AS(abp_path_value(abp, 1000), SizeLimitError);
}

TEST_CASE("adjacency matrix determinant equals the path value") {
  std::mt19937_64 rng(32);
  for (int k = 0; k < 100; ++k) {
    const Abp abp = random_abp(2 + k % 4, 3, 3, rng);
    const VarMatrix a = abp_to_matrix(abp);
    REQUIRE(a.size() == abp.vertex_count() - 1);
    REQUIRE(det_symbolic(a) == abp_path_value(abp));
  }
  for (std::int64_t c : {1, -1, 2, -3, 6, -7, 12}) {
    const VarMatrix a = abp_to_matrix(constant_abp(c));
    CHECK(det_symbolic(a) == MultiPoly::constant(c));
  }
}

TEST_CASE("abp_to_matrix sign fix") {
  const auto per2 = TargetPolynomial::permanent(2);
  const Abp g2 = grenet_abp(2);
  CHECK(det_symbolic(abp_to_matrix(g2)) == -per2.to_multipoly());
  CHECK(det_symbolic(abp_to_matrix(g2, per2)) == per2.to_multipoly());
  CHECK(det_symbolic(abp_to_matrix(grenet_abp(3), TargetPolynomial::permanent(3))) ==
        TargetPolynomial::permanent(3).to_multipoly());
  // Not +-per_2 at all.
  CHECK_THROWS_AS(abp_to_matrix(g2, TargetPolynomial::hamiltonian_cycle(2)), InputError);
  // A 1x1 matrix cannot be fixed by a row swap.
  Abp single(2, 0, 1);
  single.add_edge(0, 1, Entry::var(1));
  const PointEvaluator minus_x1 = [](std::span<const FieldElement> p, const PrimeField& f) { return f.neg(p[0]); };
  CHECK_THROWS_AS(abp_to_matrix(single, minus_x1, 1), InputError);
  CHECK(abp_to_matrix(grenet_abp(1), TargetPolynomial::permanent(1)).size() == 1);
}

TEST_CASE("binarize the figure example") {
  const VarMatrix b = binarize(fig1_matrix());
  CHECK(b.flavor() == Flavor::kBinary);
  CHECK(b.size() > 3);
  CHECK(det_symbolic(b).to_string() == "3*x1*x2 + 2*x1^2");
}

TEST_CASE("binarize preserves the determinant on random integer matrices") {
  std::mt19937_64 rng(33);
  std::uniform_int_distribution<int> kind(0, 4), c(-9, 9), var(1, 3);
  const PrimeField f;
  int exact = 0;
  for (int k = 0; k < 200; ++k) {
    const int n = 1 + k % 3;
    VarMatrix m(n, Flavor::kInteger);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const int t = kind(rng);
        m.set(i, j, t == 0 ? Entry::zero() : t == 1 ? Entry::var(var(rng)) : Entry::integer(c(rng)));
      }
    }
    m.declare_variables(3);
    const VarMatrix b = binarize(m);
    REQUIRE(b.flavor() == Flavor::kBinary);
    for (int i = 0; i < b.size(); ++i) {
      for (int j = 0; j < b.size(); ++j) REQUIRE_FALSE(b(i, j).is_int());
    }
    for (int rep = 0; rep < 3; ++rep) {
      std::vector<FieldElement> pt;
      for (int v = 0; v < 3; ++v) pt.push_back(f.from_uint(rng()));
      REQUIRE(det_mod_p(substitute_mod(b, pt, f), f) == det_mod_p(substitute_mod(m, pt, f), f));
    }
    if (b.size() <= 12) {
      REQUIRE(det_symbolic(b) == det_symbolic(m));
      ++exact;
    }
  }
  CHECK(exact > 20);
}

TEST_CASE("ABP text format round trip") {
  for (const Abp& abp : {grenet_abp(3), hc_abp(2), constant_abp(-6)}) {
    const std::string text = serialize_abp(abp);
    const Abp back = parse_abp(text);
    CHECK(serialize_abp(back) == text);
    CHECK(abp_path_value(back) == abp_path_value(abp));
  }
  CHECK(serialize_abp(grenet_abp(1)) == "2 1 2\n1 2 x1_1\n");
  CHECK_THROWS_AS(parse_abp("2 1 2\n1 2 x1\n1 2 1\n"), InputError);
  CHECK_THROWS_AS(parse_abp("2 1 2\n1 3 x1\n"), ParseError);
  CHECK_THROWS_AS(parse_abp("2 1 2\n1 2 5\n"), ParseError);
  CHECK_THROWS_AS(parse_abp("2 1\n"), ParseError);
}

TEST_CASE("layers") {
  const Abp g = grenet_abp(3);
  const auto layers = abp_layers(g);
  REQUIRE(layers.size() == 8);
  CHECK(layers[static_cast<std::size_t>(g.source())] == 0);
  CHECK(layers[static_cast<std::size_t>(g.target())] == 3);
  Abp skew(3, 0, 2);
  skew.add_edge(0, 1, Entry::one());
  skew.add_edge(1, 2, Entry::one());
  skew.add_edge(0, 2, Entry::var(1));
  CHECK(abp_layers(skew).empty());
}
