#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bdc/field.hpp"
#include "bdc/matrix.hpp"
#include "bdc/poly.hpp"

namespace bdc {

/// Exact determinant by fraction-free (Bareiss) elimination with 128-bit
/// intermediates. Every intermediate value is a minor of `m`, so the result
/// is exact whenever all minors fit in int64; this holds for every 0/1 or
/// 0/+-1 matrix with n <= 25 (Hadamard: n^(n/2) < 2^63). Outside that
/// range an OverflowError is thrown rather than a wrong value returned.
std::int64_t det_int(const IntMatrix& m);

/// Determinant of a 0/1 matrix given as bit rows (column j is bit n-1-j),
/// n <= 8. No overflow checks are needed in that range.
std::int64_t det_bits(std::span<const std::uint64_t> rows, int n);

/// Gaussian elimination over F_p.
FieldElement det_mod_p(const FieldMatrix& m, const PrimeField& field);

inline constexpr int kMaxSymbolicDetSize = 16;

/// Exact symbolic determinant sum_pi sgn(pi) prod_i A[i, pi(i)], computed
/// row by row over column subsets (2^n states, sparse in practice).
/// Throws SizeLimitError for n > kMaxSymbolicDetSize.
MultiPoly det_symbolic(const VarMatrix& a);

/// Unique polynomial of degree < points.size() through the given (y, value)
/// pairs. Newton divided differences over Z; throws InputError on duplicate
/// y and InternalError if a division is inexact.
UniPoly interpolate(std::span<const std::pair<std::int64_t, std::int64_t>> points);

/// Largest determinant over all n x n 0/1 matrices, n <= 5.
std::int64_t max_det_exhaustive(int n);
/// Single-threaded reference for max_det_exhaustive.
std::int64_t max_det_exhaustive_serial(int n);

/// per_m or HC_m in the m^2 row-major variables x_1..x_{m^2}.
class TargetPolynomial {
 public:
  enum class Kind { kPermanent, kHamiltonianCycle };

  static TargetPolynomial permanent(int m);
  static TargetPolynomial hamiltonian_cycle(int m);
  /// "per3", "hc4", ... (case-insensitive, optional '_').
  static TargetPolynomial parse(std::string_view name);

  Kind kind() const noexcept { return kind_; }
  int m() const noexcept { return m_; }
  int arity() const noexcept { return m_ * m_; }
  /// "per_3" / "HC_4".
  std::string name() const;
  /// One permutation per monomial: perm[i] is the column chosen in row i.
  const std::vector<std::vector<int>>& permutations() const noexcept { return perms_; }
  std::size_t monomial_count() const noexcept { return perms_.size(); }

  /// Variables that occur in some monomial, ascending.
  std::vector<int> active_variables() const;
  MultiPoly to_multipoly() const;

  friend bool operator==(const TargetPolynomial& a, const TargetPolynomial& b) {
    return a.kind_ == b.kind_ && a.m_ == b.m_;
  }

 private:
  TargetPolynomial(Kind kind, int m);

  Kind kind_;
  int m_;
  std::vector<std::vector<int>> perms_;
};

/// Direct summation over the monomials; point[k-1] is x_k.
std::int64_t target_eval(const TargetPolynomial& t, std::span<const std::int64_t> point);
FieldElement target_eval(const TargetPolynomial& t, std::span<const FieldElement> point,
                         const PrimeField& field);

/// T with x_k = y and every other variable 1, as a polynomial in y.
UniPoly target_slice(const TargetPolynomial& t, int k);

}  // namespace bdc
