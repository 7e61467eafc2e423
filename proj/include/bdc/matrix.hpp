#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bdc/field.hpp"
#include "bdc/poly.hpp"
#include "bdc/square_matrix.hpp"

namespace bdc {

using IntMatrix = SquareMatrix<std::int64_t>;
using FieldMatrix = SquareMatrix<FieldElement>;

enum class Flavor { kBinary, kInteger };

/// One matrix entry: 0, 1, a variable, or (integer flavor only) a constant.
/// Integer constants 0 and 1 are stored as kZero / kOne.
class Entry {
 public:
  enum class Kind : std::uint8_t { kZero, kOne, kVar, kInt };

  constexpr Entry() = default;
  static constexpr Entry zero() { return Entry(Kind::kZero, 0); }
  static constexpr Entry one() { return Entry(Kind::kOne, 1); }
  static Entry var(int index);
  static constexpr Entry integer(std::int64_t c) {
    return c == 0 ? zero() : c == 1 ? one() : Entry(Kind::kInt, c);
  }

  Kind kind() const noexcept { return kind_; }
  bool is_zero() const noexcept { return kind_ == Kind::kZero; }
  bool is_one() const noexcept { return kind_ == Kind::kOne; }
  bool is_var() const noexcept { return kind_ == Kind::kVar; }
  bool is_int() const noexcept { return kind_ == Kind::kInt; }
  /// Valid only for kVar.
  int var_index() const noexcept { return static_cast<int>(value_); }
  /// Valid for kZero, kOne, kInt.
  std::int64_t constant() const noexcept { return value_; }

  std::string to_string(const VarNaming& naming) const;

  friend bool operator==(const Entry&, const Entry&) = default;

 private:
  constexpr Entry(Kind k, std::int64_t v) : kind_(k), value_(v) {}

  Kind kind_ = Kind::kZero;
  std::int64_t value_ = 0;
};

struct Position {
  int row = 0;
  int col = 0;

  friend auto operator<=>(const Position&, const Position&) = default;
};

/// Sorted set of distinct matrix positions (0-based internally).
class PositionSet {
 public:
  PositionSet() = default;
  explicit PositionSet(std::vector<Position> positions);
  /// Bit i*n + j stands for position (i, j); requires n <= 8.
  static PositionSet from_mask(std::uint64_t mask, int n);

  std::uint64_t to_mask(int n) const;
  bool contains(Position p) const;
  bool empty() const noexcept { return positions_.empty(); }
  std::size_t size() const noexcept { return positions_.size(); }
  auto begin() const noexcept { return positions_.begin(); }
  auto end() const noexcept { return positions_.end(); }

  /// 1-based: "{(1,2),(3,3)}".
  std::string to_string() const;

  friend bool operator==(const PositionSet&, const PositionSet&) = default;

 private:
  std::vector<Position> positions_;
};

/// Position sets I_1..I_k, one per variable x_1..x_k; pairwise disjoint.
class CandidateAssignment {
 public:
  CandidateAssignment() = default;
  /// Throws InputError if two sets overlap.
  explicit CandidateAssignment(std::vector<PositionSet> sets);

  std::size_t variable_count() const noexcept { return sets_.size(); }
  const PositionSet& positions_of(int var_index) const { return sets_.at(static_cast<std::size_t>(var_index - 1)); }
  const std::vector<PositionSet>& sets() const noexcept { return sets_; }

 private:
  std::vector<PositionSet> sets_;
};

/// 0/1 matrix, stored as one bit-row per matrix row: column j is bit
/// (n-1-j), so comparing row words compares rows lexicographically.
class SupportMatrix {
 public:
  SupportMatrix() = default;
  explicit SupportMatrix(int n);
  static SupportMatrix from_rows(int n, std::vector<std::uint64_t> rows);
  static SupportMatrix from_int_matrix(const IntMatrix& m);
  /// Row-major string of n*n characters '0'/'1'; n is inferred.
  static SupportMatrix from_bitstring(std::string_view bits);

  int size() const noexcept { return n_; }
  bool at(int i, int j) const noexcept { return (rows_[static_cast<std::size_t>(i)] >> (n_ - 1 - j)) & 1u; }
  void set(int i, int j, bool v);
  std::uint64_t row(int i) const noexcept { return rows_[static_cast<std::size_t>(i)]; }
  std::span<const std::uint64_t> rows() const noexcept { return rows_; }
  /// Column j as a word with row 0 in the most significant of n bits.
  std::uint64_t column(int j) const noexcept;

  int ones() const noexcept;
  /// Bit i*n + j set iff entry (i,j) is 1; requires n <= 8.
  std::uint64_t position_mask() const;
  SupportMatrix transposed() const;
  IntMatrix to_int_matrix() const;
  std::string to_bitstring() const;

  friend bool operator==(const SupportMatrix&, const SupportMatrix&) = default;
  friend auto operator<=>(const SupportMatrix&, const SupportMatrix&) = default;

 private:
  int n_ = 0;
  std::vector<std::uint64_t> rows_;
};

/// Square matrix of Entry values. Variable indices are 1-based and
/// sequential; `naming` only affects the text form.
class VarMatrix {
 public:
  VarMatrix() = default;
  explicit VarMatrix(int n, Flavor flavor = Flavor::kBinary, VarNaming naming = {});

  int size() const noexcept { return n_; }
  Flavor flavor() const noexcept { return flavor_; }
  const VarNaming& naming() const noexcept { return naming_; }
  /// Number of declared variables: grid_width^2 for grid naming, otherwise
  /// the largest index ever placed (or declared via declare_variables).
  int var_count() const noexcept { return var_count_; }

  const Entry& operator()(int i, int j) const { return entries_(i, j); }
  /// Throws InputError for Int entries in a binary matrix or variable
  /// indices outside a grid naming.
  void set(int i, int j, Entry e);
  void declare_variables(int count);

  /// Re-spells the matrix under another naming. With grid naming on both
  /// sides, x<i>_<j> keeps its (i,j) meaning and the index is recomputed.
  VarMatrix with_naming(VarNaming naming) const;

  /// Reads off I_1..I_{var_count}.
  CandidateAssignment variable_positions() const;
  bool has_variables() const;
  /// Entries must all be constants; throws InputError otherwise.
  IntMatrix to_int_matrix() const;
  static VarMatrix from_int_matrix(const IntMatrix& m);

  friend bool operator==(const VarMatrix&, const VarMatrix&) = default;

 private:
  int n_ = 0;
  Flavor flavor_ = Flavor::kBinary;
  VarNaming naming_;
  int var_count_ = 0;
  SquareMatrix<Entry> entries_;
};

/// c0 + sum_k c_k x_k with sorted variable indices and no zero coefficients.
class LinExpr {
 public:
  LinExpr() = default;
  static LinExpr from_entry(const Entry& e);

  std::int64_t constant() const noexcept { return constant_; }
  const std::map<int, std::int64_t>& coefficients() const noexcept { return coeffs_; }

  LinExpr& add_scaled(const LinExpr& o, std::int64_t factor);
  bool equals(const Entry& e) const;
  std::string to_string(const VarNaming& naming) const;

  friend bool operator==(const LinExpr&, const LinExpr&) = default;

 private:
  std::int64_t constant_ = 0;
  std::map<int, std::int64_t> coeffs_;
};

class LinExprMatrix {
 public:
  LinExprMatrix() = default;
  explicit LinExprMatrix(int n) : entries_(n) {}

  int size() const noexcept { return entries_.size(); }
  LinExpr& operator()(int i, int j) { return entries_(i, j); }
  const LinExpr& operator()(int i, int j) const { return entries_(i, j); }

  /// Entrywise equality with a variable matrix.
  bool equals(const VarMatrix& a) const;
  /// Converts to a VarMatrix when every entry is 0, a constant, or a single
  /// variable with coefficient 1; throws InputError otherwise.
  VarMatrix to_var_matrix(VarNaming naming) const;

 private:
  SquareMatrix<LinExpr> entries_;
};

/// A variable token: x<k> sets `seq`, x<i>_<j> sets `row` and `col`.
struct VarToken {
  int seq = 0;
  int row = 0;
  int col = 0;
};
/// nullopt unless `token` is a well-formed variable name.
std::optional<VarToken> parse_var_token(std::string_view token);

// Text format: line 1 "<n> <binary|integer>" (flavor defaults to binary),
// then n lines of n tokens from {0, 1, x<k>, x<i>_<j>, signed integer}.
VarMatrix parse_matrix(std::string_view text);
/// Parses and re-spells with a fixed grid width (for x<i>_<j> tokens whose
/// largest index is smaller than the intended width).
VarMatrix parse_matrix(std::string_view text, int grid_width);
std::string serialize_matrix(const VarMatrix& a);

/// Variables and ones become 1. Throws InputError for integer flavor.
SupportMatrix support(const VarMatrix& a);

/// Positions in set k become x_k; other ones stay 1. Throws InputError if a
/// position lies on a zero of `b`.
VarMatrix place_variables(const SupportMatrix& b, const CandidateAssignment& assignment,
                          VarNaming naming = {});

/// point[k-1] is the value of x_k; point.size() must equal var_count().
IntMatrix substitute(const VarMatrix& a, std::span<const std::int64_t> point);
FieldMatrix substitute_mod(const VarMatrix& a, std::span<const FieldElement> point,
                           const PrimeField& field);

/// Row i of the result is row row_perm[i] of B (or of B^T when transpose),
/// and column j is column col_perm[j]. Permutations are 0-based.
SupportMatrix apply_equivalence(const SupportMatrix& b, std::span<const int> row_perm,
                                std::span<const int> col_perm, bool transpose);

/// Exact product g * A * h with linear-expression entries.
LinExprMatrix gl_sandwich(const IntMatrix& g, const VarMatrix& a, const IntMatrix& h);

/// Relabels x_{ij} -> x_{sigma(i) tau(j)}, then x_{ij} -> x_{ji} if
/// transpose. sigma and tau are 0-based permutations of {0,1,2}; the matrix
/// must use nine variables in row-major x_{ij} order.
VarMatrix permute_target_variables(const VarMatrix& a, std::span<const int> sigma,
                                   std::span<const int> tau, bool transpose);

/// Throws InputError unless perm is a permutation of 0..n-1.
void check_permutation(std::span<const int> perm, int n);

}  // namespace bdc
