#include <doctest.h>

#include <random>

#include "bdc/algebra.hpp"
#include "bdc/constructions.hpp"
#include "bdc/error.hpp"
#include "oracles.hpp"

using namespace bdc;

namespace {

IntMatrix random_int_matrix(int n, int lo, int hi, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMatrix m(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = d(rng);
  }
  return m;
}

VarMatrix random_var_matrix(int n, int vars, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 3), var(1, vars), c(-3, 3);
  VarMatrix a(n, Flavor::kInteger);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      switch (kind(rng)) {
        case 0: a.set(i, j, Entry::zero()); break;
        case 1: a.set(i, j, Entry::one()); break;
        case 2: a.set(i, j, Entry::var(var(rng))); break;
        default: a.set(i, j, Entry::integer(c(rng))); break;
      }
    }
  }
  a.declare_variables(vars);
  return a;
}

}  // namespace

TEST_CASE("det_int fixed values") {
  IntMatrix id(6, 0);
  for (int i = 0; i < 6; ++i) id(i, i) = 1;
  CHECK(det_int(id) == 1);
  CHECK(det_int(IntMatrix::from_rows({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}})) == 2);
  CHECK(det_int(support(grenet7x7()).to_int_matrix()) == 6);
  CHECK(det_int(IntMatrix::from_rows({{0, 1}, {1, 0}})) == -1);
  CHECK(det_int(IntMatrix::from_rows({{7}})) == 7);
  CHECK_THROWS_AS(IntMatrix::from_rows({{1, 2}, {3}}), DimensionError);
}

TEST_CASE("det_int matches the Leibniz formula") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 300; ++k) {
    const int n = 1 + k % 7;
    const IntMatrix m = random_int_matrix(n, -9, 9, rng);
    REQUIRE(static_cast<std::int64_t>(oracle::leibniz_det(m)) == det_int(m));
  }
}

TEST_CASE("det_int on 0/1 matrices up to n = 12 stays exact") {
  std::mt19937_64 rng(12);
  const PrimeField f;
  for (int k = 0; k < 50; ++k) {
    const IntMatrix m = random_int_matrix(12, 0, 1, rng);
    FieldMatrix fm(12, f.zero());
    for (int i = 0; i < 12; ++i) {
      for (int j = 0; j < 12; ++j) fm(i, j) = f.from_int(m(i, j));
    }
    REQUIRE(f.from_int(det_int(m)) == det_mod_p(fm, f));
  }
}

TEST_CASE("det_int reports overflow instead of wrapping") {
  IntMatrix m(3, 0);
  for (int i = 0; i < 3; ++i) m(i, i) = std::int64_t{1} << 40;
  CHECK_THROWS_AS(det_int(m), OverflowError);
}

TEST_CASE("det_bits agrees with det_int") {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 2000; ++k) {
    const int n = 1 + k % 8;
    const SupportMatrix b = oracle::random_support(n, rng);
    REQUIRE(det_bits(b.rows(), n) == det_int(b.to_int_matrix()));
  }
}

TEST_CASE("det_mod_p agrees with det_int modulo p") {
  std::mt19937_64 rng(14);
  for (std::uint64_t p : std::initializer_list<std::uint64_t>{kMersenne61, 4294967311ull, 101ull}) {
    const PrimeField f(p);
    for (int k = 0; k < 200; ++k) {
      const int n = 1 + k % 7;
      const IntMatrix m = random_int_matrix(n, -20, 20, rng);
      FieldMatrix fm(n, f.zero());
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) fm(i, j) = f.from_int(m(i, j));
      }
      REQUIRE(det_mod_p(fm, f) == f.from_int(det_int(m)));
    }
  }
}

TEST_CASE("det_symbolic matches the symbolic Leibniz formula") {
  std::mt19937_64 rng(15);
  for (int k = 0; k < 150; ++k) {
    const int n = 1 + k % 6;
    const VarMatrix a = random_var_matrix(n, 4, rng);
    REQUIRE(det_symbolic(a) == oracle::leibniz_det(a));
  }
}

TEST_CASE("det_symbolic on named matrices") {
  CHECK(det_symbolic(grenet7x7()) == TargetPolynomial::permanent(3).to_multipoly());
  CHECK(det_symbolic(per2_example_matrix()) == TargetPolynomial::permanent(2).to_multipoly());
  CHECK(det_symbolic(fig1_matrix()).to_string() == "3*x1*x2 + 2*x1^2");
  CHECK_THROWS_AS(det_symbolic(VarMatrix(kMaxSymbolicDetSize + 1)), SizeLimitError);
}

TEST_CASE("interpolate") {
  const std::pair<std::int64_t, std::int64_t> two[] = {{0, 4}, {1, 6}};
  CHECK(interpolate(two) == UniPoly({4, 2}));
  const std::pair<std::int64_t, std::int64_t> dup[] = {{1, 4}, {1, 6}};
  CHECK_THROWS_AS(interpolate(dup), InputError);

  std::mt19937_64 rng(16);
  std::uniform_int_distribution<int> c(-1000, 1000);
  for (int k = 0; k < 200; ++k) {
    std::vector<std::int64_t> coeffs(static_cast<std::size_t>(k % 7 + 1));
    for (auto& x : coeffs) x = c(rng);
    const UniPoly p(coeffs);
    std::vector<std::pair<std::int64_t, std::int64_t>> pts;
    for (int y = 0; y <= 6; ++y) pts.emplace_back(y, p.eval(y));
    REQUIRE(interpolate(pts) == p);
  }
}

TEST_CASE("max_det_exhaustive small sizes") {
  const std::int64_t known[] = {1, 1, 2, 3};
  for (int n = 1; n <= 4; ++n) {
    CHECK(max_det_exhaustive(n) == known[n - 1]);
    CHECK(max_det_exhaustive_serial(n) == known[n - 1]);
  }
  CHECK_THROWS_AS(max_det_exhaustive(6), SizeLimitError);
}

TEST_CASE("target polynomials") {
  const auto per3 = TargetPolynomial::permanent(3);
  const auto hc4 = TargetPolynomial::hamiltonian_cycle(4);
  CHECK(per3.name() == "per_3");
  CHECK(hc4.name() == "HC_4");
  CHECK(TargetPolynomial::parse("PER_3") == per3);
  CHECK(TargetPolynomial::parse("hc4") == hc4);
  CHECK_THROWS_AS(TargetPolynomial::parse("det3"), InputError);
  CHECK_THROWS_AS(TargetPolynomial::permanent(0), InputError);

  const std::size_t factorial[] = {1, 1, 2, 6, 24, 120, 720};
  for (int m = 1; m <= 6; ++m) {
    CHECK(TargetPolynomial::permanent(m).monomial_count() == factorial[m]);
    CHECK(TargetPolynomial::hamiltonian_cycle(m).monomial_count() == factorial[m - 1]);
  }
  CHECK(per3.active_variables().size() == 9);
  CHECK(hc4.active_variables().size() == 12);
  CHECK(TargetPolynomial::hamiltonian_cycle(2).to_multipoly().to_string(VarNaming{2}) == "x1_2*x2_1");

  for (int v : per3.active_variables()) CHECK(target_slice(per3, v) == UniPoly({4, 2}));
  for (int v : hc4.active_variables()) CHECK(target_slice(hc4, v) == UniPoly({4, 2}));
  CHECK(target_slice(hc4, 1) == UniPoly({6}));
  CHECK(target_slice(TargetPolynomial::permanent(2), 1) == UniPoly({1, 1}));
}

TEST_CASE("target evaluation agrees with the expanded polynomial") {
  const PrimeField f;
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> c(-5, 5);
  for (auto t : {TargetPolynomial::permanent(3), TargetPolynomial::hamiltonian_cycle(4),
                 TargetPolynomial::permanent(4)}) {
    const MultiPoly p = t.to_multipoly();
    for (int k = 0; k < 50; ++k) {
      std::vector<std::int64_t> pt(static_cast<std::size_t>(t.arity()));
      std::vector<FieldElement> fp;
      for (auto& x : pt) {
        x = c(rng);
        fp.push_back(f.from_int(x));
      }
      REQUIRE(target_eval(t, pt) == p.eval(pt));
      REQUIRE(target_eval(t, fp, f) == f.from_int(p.eval(pt)));
    }
    std::vector<std::int64_t> short_pt(3, 1);
    CHECK_THROWS_AS(target_eval(t, short_pt), DimensionError);
  }
  std::vector<std::int64_t> ones(9, 1);
  CHECK(target_eval(TargetPolynomial::permanent(3), ones) == 6);
}
