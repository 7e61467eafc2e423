#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bdc/algebra.hpp"
#include "bdc/enumeration.hpp"
#include "bdc/field.hpp"
#include "bdc/matrix.hpp"

namespace bdc {

/// All I within the support S of B such that placing y on I gives
/// det(B_I) = slice(y) identically.
struct AdmissibleFamily {
  SupportMatrix support;
  UniPoly slice;
  std::vector<std::uint64_t> masks;  // bit i*n + j per position; ascending

  std::size_t size() const noexcept { return masks.size(); }
  PositionSet set(std::size_t k) const { return PositionSet::from_mask(masks[k], support.size()); }
};

struct FamilyOptions {
  std::uint64_t seed = 1;
  PrimeField field;
  int jobs = 0;  // 0 = OpenMP default, 1 = serial
};

/// Filters every subset by one evaluation over F_p at a random y, then
/// confirms survivors exactly by interpolating det_int over y = 0..n.
/// Requires 1 <= n <= 8 and that every active variable of `target` has
/// the same slice.
AdmissibleFamily compute_admissible_family(const SupportMatrix& b, const TargetPolynomial& target,
                                           const FamilyOptions& opts = {});
/// Reference: det_symbolic for every subset of S. Requires |S| <= 24.
AdmissibleFamily compute_admissible_family_reference(const SupportMatrix& b, const UniPoly& slice);

enum class Outcome { kRefuted, kRealized };
std::string to_string(Outcome o);

struct SearchReport {
  SupportMatrix support;
  Outcome outcome = Outcome::kRefuted;
  std::optional<VarMatrix> realization;  // exactly verified, when realized
  std::size_t support_size = 0;
  std::size_t family_size = 0;
  std::uint64_t nodes = 0;  // partial assignments tested
  int max_depth = 0;        // deepest partial assignment that passed
};

/// Called for every partial assignment rejected by the random test:
/// sets[k] holds the positions of the (k+1)-th active variable.
using PruneObserver = std::function<void(const std::vector<std::uint64_t>& sets)>;

struct SearchOptions {
  std::uint64_t seed = 1;
  PrimeField field;
  PruneObserver on_prune;
};

/// Depth-first search for pairwise disjoint family members, one per
/// active variable of `target` (in ascending index order), such that every
/// partial matrix matches the target with the remaining variables set to
/// 1 at two random points. A complete assignment is reported as realized
/// only after det_symbolic equals the target exactly.
SearchReport stepwise_search(const SupportMatrix& b, const AdmissibleFamily& family, const TargetPolynomial& target,
                             const SearchOptions& opts = {});

/// det of B with the active variables placed on sets (others at 1), as an
/// exact polynomial, next to the partial target; for pruning audits.
std::pair<MultiPoly, MultiPoly> partial_polynomials(const SupportMatrix& b, const std::vector<std::uint64_t>& sets,
                                                    const TargetPolynomial& target);

struct ProofOptions {
  int n = 6;
  std::uint64_t seed = 1;
  PrimeField field;
  int jobs = 0;
};

struct ProofReport {
  std::string target_name;
  int n = 0;
  std::int64_t target_at_ones = 0;    // T(1,...,1)
  std::int64_t smaller_max_det = 0;   // max |det| of (n-1) x (n-1) 0/1 matrices
  std::vector<SearchReport> reports;  // one per candidate, canonical order
  bool all_refuted = false;

  /// n + 1 when every candidate was refuted, otherwise 0.
  int proven_bound() const noexcept { return all_refuted ? n + 1 : 0; }
};

/// Runs enumeration and the stepwise search on every candidate of size n.
/// Throws InternalError if the (n-1) bound needed for the degree pruning
/// does not hold.
ProofReport prove_lower_bound(const TargetPolynomial& target, const ProofOptions& opts = {});

/// One line per candidate "<bits> <outcome> <|S|> <|family|> <nodes> <max_depth>",
/// then a '#' summary line.
void write_report(std::ostream& out, const ProofReport& report);

}  // namespace bdc
