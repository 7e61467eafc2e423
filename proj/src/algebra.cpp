#include "bdc/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <unordered_map>

#include <omp.h>

#include "bdc/checked_int.hpp"
#include "bdc/error.hpp"

namespace bdc {

std::int64_t det_int(const IntMatrix& m) {
  const int n = m.size();
  if (n == 0) return 1;
  SquareMatrix<__int128> a(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = m(i, j);
  }
  __int128 prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i) {
        if (a(i, k) != 0) {
          piv = i;
          break;
        }
      }
      if (piv < 0) return 0;
      a.swap_rows(k, piv);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        __int128 lhs, rhs, diff;
        if (__builtin_mul_overflow(a(i, j), a(k, k), &lhs) || __builtin_mul_overflow(a(i, k), a(k, j), &rhs) ||
            __builtin_sub_overflow(lhs, rhs, &diff)) {
          throw OverflowError("det_int: 128-bit intermediate overflow");
        }
        // Sylvester's identity: the quotient is an exact minor of m.
        a(i, j) = narrow_to_int64(diff / prev);
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return narrow_to_int64(sign * a(n - 1, n - 1));
}

std::int64_t det_bits(std::span<const std::uint64_t> rows, int n) {
  std::int64_t a[8][8];
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = static_cast<std::int64_t>((rows[static_cast<std::size_t>(i)] >> (n - 1 - j)) & 1u);
  }
  std::int64_t prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i) {
        if (a[i][k] != 0) {
          piv = i;
          break;
        }
      }
      if (piv < 0) return 0;
      for (int j = k; j < n; ++j) std::swap(a[k][j], a[piv][j]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

FieldElement det_mod_p(const FieldMatrix& m, const PrimeField& field) {
  const int n = m.size();
  FieldMatrix a = m;
  FieldElement det = field.one();
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i) {
      if (a(i, k).value != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) return field.zero();
    if (piv != k) {
      a.swap_rows(k, piv);
      det = field.neg(det);
    }
    det = field.mul(det, a(k, k));
    FieldElement inv = field.inv(a(k, k));
    for (int i = k + 1; i < n; ++i) {
      if (a(i, k).value == 0) continue;
      FieldElement f = field.mul(a(i, k), inv);
      for (int j = k + 1; j < n; ++j) a(i, j) = field.sub(a(i, j), field.mul(f, a(k, j)));
    }
  }
  return det;
}

MultiPoly det_symbolic(const VarMatrix& a) {
  const int n = a.size();
  if (n > kMaxSymbolicDetSize) {
    throw SizeLimitError("symbolic determinant limited to n <= " + std::to_string(kMaxSymbolicDetSize) +
                         " (got " + std::to_string(n) + "); use randomized verification");
  }
  if (n == 0) return MultiPoly::constant(1);
  std::vector<std::vector<std::pair<int, MultiPoly>>> row_terms(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Entry& e = a(i, j);
      if (e.is_zero()) continue;
      row_terms[static_cast<std::size_t>(i)].emplace_back(
          j, e.is_var() ? MultiPoly::variable(e.var_index()) : MultiPoly::constant(e.constant()));
    }
  }
  // partial[S] = signed sum over injective maps rows 0..k-1 -> column set S.
  std::unordered_map<std::uint32_t, MultiPoly> partial{{0u, MultiPoly::constant(1)}};
  for (int k = 0; k < n; ++k) {
    std::unordered_map<std::uint32_t, MultiPoly> next;
    for (const auto& [cols, poly] : partial) {
      for (const auto& [j, entry] : row_terms[static_cast<std::size_t>(k)]) {
        std::uint32_t bit = 1u << j;
        if (cols & bit) continue;
        // Inversions added by placing column j after the columns already used.
        int inversions = __builtin_popcount(cols & ~((bit << 1) - 1));
        MultiPoly term = poly * entry;
        if (inversions & 1) term = -term;
        next[cols | bit] += term;
      }
    }
    std::erase_if(next, [](const auto& kv) { return kv.second.is_zero(); });
    partial = std::move(next);
  }
  auto it = partial.find((n == 32 ? 0u : (1u << n)) - 1u);
  return it == partial.end() ? MultiPoly{} : it->second;
}

UniPoly interpolate(std::span<const std::pair<std::int64_t, std::int64_t>> points) {
  const std::size_t count = points.size();
  if (count == 0) return UniPoly{};
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      if (points[i].first == points[j].first) {
        throw InputError("interpolate: duplicate y = " + std::to_string(points[i].first));
      }
    }
  }
  // Divided differences; for integer-coefficient polynomials at integer
  // nodes every one of them is an integer.
  std::vector<__int128> dd(count);
  for (std::size_t i = 0; i < count; ++i) dd[i] = points[i].second;
  for (std::size_t level = 1; level < count; ++level) {
    for (std::size_t i = count - 1; i >= level; --i) {
      __int128 num = dd[i] - dd[i - 1];
      __int128 den = static_cast<__int128>(points[i].first) - points[i - level].first;
      if (num % den != 0) throw InternalError("interpolate: non-integer divided difference");
      dd[i] = num / den;
    }
  }
  // Expand the Newton form by Horner's scheme.
  std::vector<__int128> coeffs{dd[count - 1]};
  for (std::size_t idx = count - 1; idx-- > 0;) {
    const __int128 node = points[idx].first;
    std::vector<__int128> next(coeffs.size() + 1, 0);
    for (std::size_t d = 0; d < coeffs.size(); ++d) {
      next[d + 1] += coeffs[d];
      next[d] -= node * coeffs[d];
    }
    next[0] += dd[idx];
    coeffs = std::move(next);
  }
  std::vector<std::int64_t> out;
  out.reserve(coeffs.size());
  for (auto c : coeffs) out.push_back(narrow_to_int64(c));
  return UniPoly(std::move(out));
}

namespace {

void check_max_det_size(int n) {
  if (n < 1 || n > 5) throw SizeLimitError("max_det_exhaustive supports 1 <= n <= 5");
}

std::int64_t det_of_mask(std::uint64_t mask, int n) {
  std::uint64_t rows[8];
  const std::uint64_t row_mask = (std::uint64_t{1} << n) - 1;
  for (int i = 0; i < n; ++i) rows[i] = (mask >> (i * n)) & row_mask;
  return det_bits(std::span<const std::uint64_t>(rows, static_cast<std::size_t>(n)), n);
}

}  // namespace

std::int64_t max_det_exhaustive(int n) {
  check_max_det_size(n);
  const std::int64_t total = std::int64_t{1} << (n * n);
  std::int64_t best = 0;
#pragma omp parallel for schedule(static) reduction(max : best)
  for (std::int64_t mask = 0; mask < total; ++mask) {
    best = std::max(best, det_of_mask(static_cast<std::uint64_t>(mask), n));
  }
  return best;
}

std::int64_t max_det_exhaustive_serial(int n) {
  check_max_det_size(n);
  const std::uint64_t total = std::uint64_t{1} << (n * n);
  std::int64_t best = 0;
  for (std::uint64_t mask = 0; mask < total; ++mask) best = std::max(best, det_of_mask(mask, n));
  return best;
}

// ------------------------------------------------------ TargetPolynomial

namespace {

bool is_single_cycle(const std::vector<int>& p) {
  const int m = static_cast<int>(p.size());
  int len = 0, v = 0;
  do {
    v = p[static_cast<std::size_t>(v)];
    ++len;
  } while (v != 0);
  return len == m;
}

}  // namespace

TargetPolynomial::TargetPolynomial(Kind kind, int m) : kind_(kind), m_(m) {
  if (m < 1) throw InputError("target polynomials need m >= 1");
  if (m > 6) throw SizeLimitError("target polynomials support m <= 6");
  std::vector<int> p(static_cast<std::size_t>(m));
  std::iota(p.begin(), p.end(), 0);
  do {
    if (kind == Kind::kPermanent || is_single_cycle(p)) perms_.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
}

TargetPolynomial TargetPolynomial::permanent(int m) { return TargetPolynomial(Kind::kPermanent, m); }
TargetPolynomial TargetPolynomial::hamiltonian_cycle(int m) {
  return TargetPolynomial(Kind::kHamiltonianCycle, m);
}

TargetPolynomial TargetPolynomial::parse(std::string_view name) {
  std::string s;
  for (char c : name) {
    if (c != '_') s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  Kind kind;
  std::string digits;
  if (s.rfind("per", 0) == 0) {
    kind = Kind::kPermanent;
    digits = s.substr(3);
  } else if (s.rfind("hc", 0) == 0) {
    kind = Kind::kHamiltonianCycle;
    digits = s.substr(2);
  } else {
    throw InputError("unknown target '" + std::string(name) + "' (expected per<m> or hc<m>)");
  }
  if (digits.size() != 1 || digits[0] < '1' || digits[0] > '6') {
    throw InputError("unknown target '" + std::string(name) + "' (m must be 1..6)");
  }
  return TargetPolynomial(kind, digits[0] - '0');
}

std::string TargetPolynomial::name() const {
  return (kind_ == Kind::kPermanent ? "per_" : "HC_") + std::to_string(m_);
}

std::vector<int> TargetPolynomial::active_variables() const {
  std::vector<bool> used(static_cast<std::size_t>(arity()), false);
  for (const auto& p : perms_) {
    for (int i = 0; i < m_; ++i) used[static_cast<std::size_t>(i * m_ + p[static_cast<std::size_t>(i)])] = true;
  }
  std::vector<int> vars;
  for (int k = 0; k < arity(); ++k) {
    if (used[static_cast<std::size_t>(k)]) vars.push_back(k + 1);
  }
  return vars;
}

MultiPoly TargetPolynomial::to_multipoly() const {
  MultiPoly r;
  for (const auto& p : perms_) {
    Monomial mono(static_cast<std::size_t>(arity()), 0);
    for (int i = 0; i < m_; ++i) mono[static_cast<std::size_t>(i * m_ + p[static_cast<std::size_t>(i)])] = 1;
    r.add_term(std::move(mono), 1);
  }
  return r;
}

std::int64_t target_eval(const TargetPolynomial& t, std::span<const std::int64_t> point) {
  if (point.size() != static_cast<std::size_t>(t.arity())) {
    throw DimensionError(t.name() + " takes " + std::to_string(t.arity()) + " values, got " +
                         std::to_string(point.size()));
  }
  const int m = t.m();
  std::int64_t total = 0;
  for (const auto& p : t.permutations()) {
    std::int64_t prod = 1;
    for (int i = 0; i < m; ++i) {
      prod = checked_mul(prod, point[static_cast<std::size_t>(i * m + p[static_cast<std::size_t>(i)])]);
    }
    total = checked_add(total, prod);
  }
  return total;
}

FieldElement target_eval(const TargetPolynomial& t, std::span<const FieldElement> point,
                         const PrimeField& field) {
  if (point.size() != static_cast<std::size_t>(t.arity())) {
    throw DimensionError(t.name() + " takes " + std::to_string(t.arity()) + " values, got " +
                         std::to_string(point.size()));
  }
  const int m = t.m();
  FieldElement total = field.zero();
  for (const auto& p : t.permutations()) {
    FieldElement prod = field.one();
    for (int i = 0; i < m; ++i) {
      prod = field.mul(prod, point[static_cast<std::size_t>(i * m + p[static_cast<std::size_t>(i)])]);
    }
    total = field.add(total, prod);
  }
  return total;
}

UniPoly target_slice(const TargetPolynomial& t, int k) {
  if (k < 1 || k > t.arity()) {
    throw DimensionError("variable index " + std::to_string(k) + " outside 1.." + std::to_string(t.arity()));
  }
  // Multilinear: the slice is (#monomials containing x_k) * y + (#others).
  const int m = t.m();
  const int row = (k - 1) / m, col = (k - 1) % m;
  std::int64_t with = 0, without = 0;
  for (const auto& p : t.permutations()) {
    (p[static_cast<std::size_t>(row)] == col ? with : without) += 1;
  }
  return UniPoly({without, with});
}

}  // namespace bdc
