#pragma once

// Independent reference computations used only by the tests.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "bdc/algebra.hpp"
#include "bdc/matrix.hpp"

namespace oracle {

inline int permutation_sign(const std::vector<int>& p) {
  int inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) inversions += p[i] > p[j];
  }
  return inversions % 2 ? -1 : 1;
}

/// Leibniz formula over all n! permutations.
inline __int128 leibniz_det(const bdc::IntMatrix& m) {
  const int n = m.size();
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  __int128 total = 0;
  do {
    __int128 prod = permutation_sign(p);
    for (int i = 0; i < n && prod != 0; ++i) prod *= m(i, p[static_cast<std::size_t>(i)]);
    total += prod;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

/// Leibniz formula with polynomial entries.
inline bdc::MultiPoly leibniz_det(const bdc::VarMatrix& a) {
  const int n = a.size();
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  bdc::MultiPoly total;
  do {
    bdc::MultiPoly prod = bdc::MultiPoly::constant(permutation_sign(p));
    for (int i = 0; i < n && !prod.is_zero(); ++i) {
      const bdc::Entry& e = a(i, p[static_cast<std::size_t>(i)]);
      if (e.is_var()) {
        prod = prod * bdc::MultiPoly::variable(e.var_index());
      } else {
        prod = prod.scaled(e.constant());
      }
    }
    total += prod;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

inline bdc::SupportMatrix random_support(int n, std::mt19937_64& rng, double density = 0.5) {
  std::bernoulli_distribution bit(density);
  bdc::SupportMatrix b(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) b.set(i, j, bit(rng));
  }
  return b;
}

inline std::vector<int> random_permutation(int n, std::mt19937_64& rng) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace oracle
