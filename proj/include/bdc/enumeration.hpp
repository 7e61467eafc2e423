#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bdc/matrix.hpp"

namespace bdc {

/// Which group acts on 0/1 matrices.
enum class Equivalence {
  kRowColumn,           // independent row and column permutations
  kRowColumnTranspose,  // ... together with transposition
};

std::string to_string(Equivalence e);

/// Lexicographically least row-major bit grid in the orbit of `b`: over
/// every column permutation (and the transpose, if included) the rows are
/// sorted ascending and the smallest result wins. Requires n <= 7.
SupportMatrix canonical_form(const SupportMatrix& b, Equivalence eq = Equivalence::kRowColumnTranspose);

/// Row-major canonical bits packed into one word (row 0 most significant).
std::uint64_t canonical_key(const SupportMatrix& b, Equivalence eq = Equivalence::kRowColumnTranspose);

struct CanonicalSupport {
  SupportMatrix canonical;  // canonical_form under the enumeration equivalence
  SupportMatrix matrix;     // canonical with rows 0 and 1 swapped if its det was negative
  std::int64_t det = 0;     // det_int(matrix), always positive

  friend bool operator==(const CanonicalSupport&, const CanonicalSupport&) = default;
};

struct EnumerationOptions {
  int n = 6;
  std::int64_t abs_det = 6;
  Equivalence equivalence = Equivalence::kRowColumn;
  int jobs = 0;  // 0 = OpenMP default
};

struct EnumerationStats {
  std::uint64_t sorted_matrices = 0;  // row- and column-sorted matrices visited
  std::uint64_t det_survivors = 0;    // ... of which |det| == abs_det
};

/// Classes of n x n 0/1 matrices with |det| = abs_det, all row and column
/// weights >= 2 and pairwise distinct rows and columns. Sorted by
/// canonical bit string; independent of the number of jobs. 2 <= n <= 6.
std::vector<CanonicalSupport> enumerate_candidate_supports(const EnumerationOptions& opts,
                                                           EnumerationStats* stats = nullptr);
/// Single-threaded reference with identical output.
std::vector<CanonicalSupport> enumerate_candidate_supports_serial(const EnumerationOptions& opts,
                                                                  EnumerationStats* stats = nullptr);

/// Number of orbits of all n x n 0/1 matrices (Burnside's lemma over the
/// group, cycle index on the n^2 cells). 1 <= n <= 7.
std::uint64_t count_bipartite_classes(int n, Equivalence eq = Equivalence::kRowColumn);

/// Row/column classes of n x n 0/1 matrices with all degrees >= 2 and
/// pairwise distinct columns (rows may repeat). 2 <= n <= 6.
std::uint64_t count_census_classes(int n);

// Candidate file: a '#' header line, then "<row-major bits> <det>" per class.
void write_candidates(std::ostream& out, const std::vector<CanonicalSupport>& list, const EnumerationOptions& opts);
/// Re-canonicalizes every record; throws ParseError on malformed lines or
/// a det that does not match the matrix.
std::vector<CanonicalSupport> read_candidates(std::istream& in, Equivalence eq = Equivalence::kRowColumn);

}  // namespace bdc
