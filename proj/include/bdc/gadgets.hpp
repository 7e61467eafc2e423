#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bdc/algebra.hpp"
#include "bdc/field.hpp"
#include "bdc/matrix.hpp"
#include "bdc/poly.hpp"

namespace bdc {

struct AbpEdge {
  int from = 0;
  int to = 0;
  Entry label;  // kOne or kVar

  friend bool operator==(const AbpEdge&, const AbpEdge&) = default;
};

/// Binary algebraic branching program: an acyclic digraph without parallel
/// edges whose edge labels are 1 or a variable, with a source that has no
/// incoming and a target that has no outgoing edges. The path value is the
/// sum over s-t paths with i edges of (-1)^(i-1) times the label product.
class Abp {
 public:
  Abp() = default;
  Abp(int vertex_count, int source, int target, VarNaming naming = {});

  int vertex_count() const noexcept { return vertex_count_; }
  int source() const noexcept { return source_; }
  int target() const noexcept { return target_; }
  const VarNaming& naming() const noexcept { return naming_; }
  const std::vector<AbpEdge>& edges() const noexcept { return edges_; }

  int add_vertex() { return vertex_count_++; }
  void add_edge(int from, int to, Entry label);
  void set_target(int t) { target_ = t; }

  /// Throws InputError describing the first violated invariant.
  void validate() const;
  /// Vertices in an order compatible with every edge; throws if cyclic.
  std::vector<int> topological_order() const;

 private:
  int vertex_count_ = 0;
  int source_ = 0;
  int target_ = 0;
  VarNaming naming_;
  std::vector<AbpEdge> edges_;
};

/// 1 = c_0, ..., c_l = c with c_i = c_{j_i} + c_{k_i}, j_i, k_i < i.
struct AdditionChain {
  std::vector<std::uint64_t> values;
  std::vector<std::pair<int, int>> steps;  // steps[i-1] = (j_i, k_i)

  int length() const noexcept { return static_cast<int>(steps.size()); }
  /// Replays the sums; throws InputError on any violation.
  void validate() const;
};

/// Binary (double-and-add) chain: length <= 2 * floor(log2 c).
AdditionChain addition_chain(std::uint64_t c);

/// ABP with path value exactly c (c != 0) and at most
/// 4 * floor(log2 |c|) + 3 vertices, built from addition_chain(|c|).
Abp constant_abp(std::int64_t c);

inline constexpr std::size_t kDefaultPathBudget = 1'000'000;

/// Exact path value by explicit path enumeration. Throws SizeLimitError if
/// more than `path_budget` s-t paths exist.
MultiPoly abp_path_value(const Abp& abp, std::size_t path_budget = kDefaultPathBudget);
/// Number of s-t paths (dynamic programming, no enumeration).
std::uint64_t abp_path_count(const Abp& abp);
/// Path value at a point over F_p; point[k-1] is x_k.
FieldElement abp_eval_mod(const Abp& abp, std::span<const FieldElement> point, const PrimeField& field);
/// Layer index (edge count from s) of every vertex, or an empty vector if
/// some vertex is reached by paths of different lengths.
std::vector<int> abp_layers(const Abp& abp);

/// Point evaluator for the polynomial a matrix should represent.
using PointEvaluator = std::function<FieldElement(std::span<const FieldElement>, const PrimeField&)>;

/// Identify s with t, put label-1 loops on every other vertex and take the
/// directed adjacency matrix (size n-1). Its determinant equals the path
/// value. Requires n >= 2.
VarMatrix abp_to_matrix(const Abp& abp);

/// As above, but if the path value is -f for the polynomial f described
/// by `target`, swap the first two rows so the determinant is +f. The sign
/// is decided from random evaluations (seeded); throws InputError if the
/// path value is neither f nor -f at the sampled points.
VarMatrix abp_to_matrix(const Abp& abp, const PointEvaluator& target, int target_arity,
                        std::uint64_t seed = 1, const PrimeField& field = PrimeField());
VarMatrix abp_to_matrix(const Abp& abp, const TargetPolynomial& target, std::uint64_t seed = 1);

/// Digraph with integer or variable labels; loops allowed, no parallel edges.
class LabeledDigraph {
 public:
  explicit LabeledDigraph(int vertex_count, VarNaming naming = {});
  static LabeledDigraph from_matrix(const VarMatrix& c);

  int vertex_count() const noexcept { return static_cast<int>(adj_.size()); }
  int add_vertex();
  void set_edge(int from, int to, Entry label);
  void remove_edge(int from, int to);
  const Entry& label(int from, int to) const;
  /// Directed adjacency matrix (binary flavor if no Int labels remain).
  VarMatrix adjacency_matrix() const;

 private:
  VarNaming naming_;
  int declared_vars_ = 0;
  std::vector<std::vector<Entry>> adj_;
};

/// Replaces every integer entry outside {0,1} by a constant_abp gadget
/// (row-major order, one gadget per entry). det is preserved exactly.
VarMatrix binarize(const VarMatrix& c);

// ABP text format: "<#vertices> <s> <t>" then one "<u> <v> <label>" line
// per edge; vertices 1-based, labels 1 / x<k> / x<i>_<j>.
std::string serialize_abp(const Abp& abp);
Abp parse_abp(std::string_view text);

}  // namespace bdc
