#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "bdc/field.hpp"

namespace bdc {

/// How variable indices are spelled in text.
///
/// Indices are always sequential and 1-based internally. With a grid width
/// m > 0, index k is written x<i>_<j> where k = (i-1)*m + j (row-major);
/// otherwise it is written x<k>.
struct VarNaming {
  int grid_width = 0;

  bool is_grid() const noexcept { return grid_width > 0; }
  std::string name(int index) const;

  friend bool operator==(const VarNaming&, const VarNaming&) = default;
};

/// Exponent vector; entry v-1 is the exponent of variable v. Trailing
/// zeros are never stored, so equal monomials compare equal.
using Monomial = std::vector<std::uint16_t>;

/// Sparse multivariate polynomial with int64 coefficients, terms kept in
/// lexicographic order of exponent vectors. Arithmetic is overflow checked.
class MultiPoly {
 public:
  MultiPoly() = default;

  static MultiPoly constant(std::int64_t c);
  /// The polynomial x_index, index >= 1.
  static MultiPoly variable(int index);

  const std::map<Monomial, std::int64_t>& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::int64_t coefficient(const Monomial& m) const;
  /// Largest variable index occurring in any term (0 for constants).
  int max_variable() const noexcept;
  int total_degree() const noexcept;

  /// Adds c * m, dropping the term if it cancels.
  void add_term(Monomial m, std::int64_t c);

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly operator-() const;
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly scaled(std::int64_t c) const;

  /// Exact evaluation; point[v-1] is the value of x_v.
  std::int64_t eval(std::span<const std::int64_t> point) const;
  FieldElement eval_mod(std::span<const FieldElement> point, const PrimeField& field) const;

  std::string to_string(const VarNaming& naming = {}) const;

  friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

 private:
  std::map<Monomial, std::int64_t> terms_;
};

/// Dense univariate polynomial in y, coefficients low degree first.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<std::int64_t> coefficients);

  const std::vector<std::int64_t>& coefficients() const noexcept { return coeffs_; }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  std::int64_t coefficient(int d) const noexcept {
    return d >= 0 && d < static_cast<int>(coeffs_.size()) ? coeffs_[d] : 0;
  }

  std::int64_t eval(std::int64_t y) const;
  FieldElement eval_mod(FieldElement y, const PrimeField& field) const;

  std::string to_string() const;

  friend bool operator==(const UniPoly&, const UniPoly&) = default;

 private:
  std::vector<std::int64_t> coeffs_;
};

}  // namespace bdc
