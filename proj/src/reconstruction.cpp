#include "bdc/reconstruction.hpp"

#include <algorithm>
#include <ostream>
#include <random>

#include <omp.h>

#include "bdc/error.hpp"

namespace bdc {

std::string to_string(Outcome o) { return o == Outcome::kRealized ? "Realized" : "Refuted"; }

namespace {

constexpr int kMaxFamilySize = 8;

std::uint64_t mask_of_support(const SupportMatrix& b) { return b.position_mask(); }

// Uniform in [lo, p-1] from raw generator output, so the stream is the same
// on every standard library.
FieldElement draw(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t p) {
  const std::uint64_t span = p - lo;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % span);
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return {lo + x % span};
}

std::mt19937_64 stream_for(std::uint64_t seed, const SupportMatrix& b, std::uint64_t salt) {
  const std::uint64_t key = b.size() <= kMaxFamilySize ? b.position_mask() : 0;
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32),
                    static_cast<std::uint32_t>(b.size()), static_cast<std::uint32_t>(salt)};
  return std::mt19937_64(seq);
}

UniPoly common_slice(const TargetPolynomial& target) {
  const auto active = target.active_variables();
  UniPoly slice = target_slice(target, active.front());
  for (int v : active) {
    if (!(target_slice(target, v) == slice)) {
      throw InputError(target.name() + " has different slices for different variables");
    }
  }
  return slice;
}

IntMatrix with_y(const SupportMatrix& b, std::uint64_t mask, std::int64_t y) {
  const int n = b.size();
  IntMatrix m(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (b.at(i, j)) m(i, j) = ((mask >> (i * n + j)) & 1u) ? y : 1;
    }
  }
  return m;
}

bool confirm_exact(const SupportMatrix& b, std::uint64_t mask, const UniPoly& slice) {
  std::vector<std::pair<std::int64_t, std::int64_t>> pts;
  for (int y = 0; y <= b.size(); ++y) pts.emplace_back(y, det_int(with_y(b, mask, y)));
  return interpolate(pts) == slice;
}

// Enumerates y-placements row by row while keeping every minor of the rows
// fixed so far (indexed by column mask). The last row enters linearly, so
// all its subsets are resolved by one subset-sum table.
class FamilyKernel {
 public:
  FamilyKernel(const SupportMatrix& b, const UniPoly& slice, FieldElement r, const PrimeField& field)
      : n_(b.size()), field_(field), r_(r) {
    // The heaviest row goes last.
    int last = 0;
    for (int i = 1; i < n_; ++i) {
      if (__builtin_popcountll(b.row(i)) >= __builtin_popcountll(b.row(last))) last = i;
    }
    for (int i = 0; i < n_; ++i) {
      if (i != last) order_.push_back(i);
    }
    order_.push_back(last);
    // Moving row `last` to the bottom is a cycle of length n - last.
    const bool odd = (n_ - 1 - last) % 2 == 1;
    for (int k = 0; k < n_; ++k) {
      std::uint64_t word = 0;
      const std::uint64_t src = b.row(order_[static_cast<std::size_t>(k)]);
      for (int j = 0; j < n_; ++j) word |= ((src >> (n_ - 1 - j)) & 1u) << j;  // column j at bit j
      row_cols_.push_back(word);
    }
    FieldElement want = field.add(field.from_int(slice.coefficient(0)), field.mul(field.from_int(slice.coefficient(1)), r));
    for (int k = 2; k <= slice.degree(); ++k) {
      want = field.add(want, field.mul(field.from_int(slice.coefficient(k)), field.pow(r, static_cast<std::uint64_t>(k))));
    }
    target_ = odd ? field.neg(want) : want;
    r_minus_one_inv_ = field.inv(field.sub(r, field.one()));
    for (int k = 0; k <= n_; ++k) by_size_.emplace_back();
    for (unsigned m = 0; m < (1u << n_); ++m) by_size_[static_cast<std::size_t>(__builtin_popcount(m))].push_back(m);
    minors_.assign(static_cast<std::size_t>(n_), std::vector<FieldElement>(std::size_t{1} << n_, field.zero()));
  }

  std::uint64_t first_row_choices() const {
    return n_ == 1 ? 1 : std::uint64_t{1} << __builtin_popcountll(row_cols_[0]);
  }

  // Candidates (in original coordinates) whose first row uses the
  // `choice`-th subset of its support.
  void run(std::uint64_t choice, std::vector<std::uint64_t>& out) {
    minors_[0][0] = field_.one();
    if (n_ == 1) {
      finish_last_row(0, out);
      return;
    }
    const std::uint64_t chosen = deposit(choice, row_cols_[0]);
    extend(0, chosen);
    if (n_ == 2) {
      finish_last_row(placement(0, chosen), out);
      return;
    }
    recurse(1, placement(0, chosen), out);
  }

 private:
  static std::uint64_t deposit(std::uint64_t bits, std::uint64_t mask) {
    std::uint64_t out = 0;
    for (std::uint64_t m = mask; m; m &= m - 1, bits >>= 1) {
      if (bits & 1u) out |= m & -m;
    }
    return out;
  }

  std::uint64_t placement(int k, std::uint64_t chosen_cols) const {
    const int row = order_[static_cast<std::size_t>(k)];
    std::uint64_t mask = 0;
    for (std::uint64_t c = chosen_cols; c; c &= c - 1) mask |= std::uint64_t{1} << (row * n_ + __builtin_ctzll(c));
    return mask;
  }

  // minors_[k+1] from minors_[k] after fixing row k (0-based level) with
  // the columns in `chosen` carrying r.
  void extend(int k, std::uint64_t chosen) {
    const std::uint64_t cols = row_cols_[static_cast<std::size_t>(k)];
    auto& prev = minors_[static_cast<std::size_t>(k)];
    if (static_cast<std::size_t>(k + 1) >= minors_.size()) return;
    auto& next = minors_[static_cast<std::size_t>(k + 1)];
    for (unsigned m : by_size_[static_cast<std::size_t>(k + 1)]) {
      FieldElement acc = field_.zero();
      int pos = 0;
      for (unsigned rest = m; rest; rest &= rest - 1, ++pos) {
        const int j = __builtin_ctz(rest);
        if (!((cols >> j) & 1u)) continue;
        FieldElement term = prev[m & ~(1u << j)];
        if (term.value == 0) continue;
        if ((chosen >> j) & 1u) term = field_.mul(term, r_);
        acc = ((k + pos) % 2 == 0) ? field_.add(acc, term) : field_.sub(acc, term);
      }
      next[m] = acc;
    }
  }

  void recurse(int k, std::uint64_t placed, std::vector<std::uint64_t>& out) {
    if (k == n_ - 1) {
      finish_last_row(placed, out);
      return;
    }
    const std::uint64_t cols = row_cols_[static_cast<std::size_t>(k)];
    const std::uint64_t count = std::uint64_t{1} << __builtin_popcountll(cols);
    for (std::uint64_t c = 0; c < count; ++c) {
      const std::uint64_t chosen = deposit(c, cols);
      extend(k, chosen);
      recurse(k + 1, placed | placement(k, chosen), out);
    }
  }

  void finish_last_row(std::uint64_t placed, std::vector<std::uint64_t>& out) {
    const int k = n_ - 1;
    const std::uint64_t cols = row_cols_[static_cast<std::size_t>(k)];
    const auto& minors = minors_[static_cast<std::size_t>(k)];
    const unsigned full = (1u << n_) - 1;
    FieldElement c[kMaxFamilySize];
    int idx[kMaxFamilySize];
    int w = 0;
    FieldElement base = field_.zero();
    for (std::uint64_t rest = cols; rest; rest &= rest - 1) {
      const int j = __builtin_ctzll(rest);
      FieldElement cj = minors[full & ~(1u << j)];
      if ((k + j) % 2 == 1) cj = field_.neg(cj);
      c[w] = cj;
      idx[w++] = j;
      base = field_.add(base, cj);
    }
    // det = base + (r - 1) * (sum of c over the chosen columns).
    const FieldElement need = field_.mul(field_.sub(target_, base), r_minus_one_inv_);
    FieldElement sums[1u << kMaxFamilySize];
    sums[0] = field_.zero();
    const int row = order_[static_cast<std::size_t>(k)];
    for (unsigned s = 0; s < (1u << w); ++s) {
      if (s) sums[s] = field_.add(sums[s & (s - 1)], c[__builtin_ctz(s)]);
      if (sums[s] == need) {
        std::uint64_t mask = placed;
        for (unsigned t = s; t; t &= t - 1) mask |= std::uint64_t{1} << (row * n_ + idx[__builtin_ctz(t)]);
        out.push_back(mask);
      }
    }
  }

  int n_;
  const PrimeField& field_;
  FieldElement r_;
  FieldElement target_;
  FieldElement r_minus_one_inv_;
  std::vector<int> order_;
  std::vector<std::uint64_t> row_cols_;
  std::vector<std::vector<unsigned>> by_size_;
  std::vector<std::vector<FieldElement>> minors_;
};

}  // namespace

AdmissibleFamily compute_admissible_family(const SupportMatrix& b, const TargetPolynomial& target,
                                           const FamilyOptions& opts) {
  const int n = b.size();
  if (n < 1 || n > kMaxFamilySize) throw SizeLimitError("admissible families need 1 <= n <= 8");
  AdmissibleFamily fam{b, common_slice(target), {}};
  auto rng = stream_for(opts.seed, b, 0);
  const FieldElement r = draw(rng, 2, opts.field.modulus());

  const FamilyKernel proto(b, fam.slice, r, opts.field);
  const auto tasks = static_cast<std::int64_t>(proto.first_row_choices());
  std::vector<std::vector<std::uint64_t>> found(static_cast<std::size_t>(tasks));
  const int jobs = opts.jobs > 0 ? opts.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(jobs) if (jobs > 1)
  for (std::int64_t t = 0; t < tasks; ++t) {
    FamilyKernel kernel = proto;
    std::vector<std::uint64_t> raw;
    kernel.run(static_cast<std::uint64_t>(t), raw);
    auto& keep = found[static_cast<std::size_t>(t)];
    for (std::uint64_t mask : raw) {
      if (confirm_exact(b, mask, fam.slice)) keep.push_back(mask);
    }
  }
  for (auto& part : found) fam.masks.insert(fam.masks.end(), part.begin(), part.end());
  std::sort(fam.masks.begin(), fam.masks.end());
  return fam;
}

AdmissibleFamily compute_admissible_family_reference(const SupportMatrix& b, const UniPoly& slice) {
  const int n = b.size();
  if (n < 1 || n > kMaxFamilySize) throw SizeLimitError("admissible families need 1 <= n <= 8");
  const std::uint64_t s = mask_of_support(b);
  if (__builtin_popcountll(s) > 24) throw SizeLimitError("reference family needs |S| <= 24");
  MultiPoly want;
  for (int k = 0; k <= slice.degree(); ++k) {
    Monomial m;
    if (k > 0) m = {static_cast<std::uint16_t>(k)};
    want.add_term(m, slice.coefficient(k));
  }
  AdmissibleFamily fam{b, slice, {}};
  // Walk every submask of s, including the empty set.
  std::uint64_t sub = 0;
  do {
    VarMatrix a(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (!b.at(i, j)) continue;
        a.set(i, j, ((sub >> (i * n + j)) & 1u) ? Entry::var(1) : Entry::one());
      }
    }
    a.declare_variables(1);
    if (det_symbolic(a) == want) fam.masks.push_back(sub);
    sub = (sub - s) & s;
  } while (sub != 0);
  std::sort(fam.masks.begin(), fam.masks.end());
  return fam;
}

namespace {

// det(M) = num / den over F_p by fraction-free elimination
// (det * prod pivot_k^(n-k-1) = +-prod pivot_k); num = 0 when singular.
struct Ratio {
  FieldElement num, den;
};

Ratio det_ratio(FieldElement (*a)[kMaxFamilySize], int n, const PrimeField& f) {
  FieldElement num = f.one(), den = f.one();
  bool negate = false;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    while (piv < n && a[piv][k].value == 0) ++piv;
    if (piv == n) return {f.zero(), f.one()};
    if (piv != k) {
      for (int j = k; j < n; ++j) std::swap(a[k][j], a[piv][j]);
      negate = !negate;
    }
    const FieldElement p = a[k][k];
    num = f.mul(num, p);
    for (int i = k + 1; i < n; ++i) {
      den = f.mul(den, p);
      const FieldElement lead = a[i][k];
      for (int j = k + 1; j < n; ++j) a[i][j] = f.sub(f.mul(p, a[i][j]), f.mul(lead, a[k][j]));
    }
  }
  return {negate ? f.neg(num) : num, den};
}

class Searcher {
 public:
  Searcher(const SupportMatrix& b, const AdmissibleFamily& fam, const TargetPolynomial& target,
           const SearchOptions& opts)
      : b_(b), fam_(fam), target_(target), opts_(opts), n_(b.size()), active_(target.active_variables()) {
    auto rng = stream_for(opts.seed, b, 1);
    const PrimeField& f = opts.field;
    for (int pt = 0; pt < 2; ++pt) {
      std::vector<FieldElement> values(active_.size());
      for (auto& v : values) v = draw(rng, 2, f.modulus());
      // partial[k] = T with the first k active variables set, others 1.
      std::vector<FieldElement> point(static_cast<std::size_t>(target.arity()), f.one());
      partial_[pt].push_back(target_eval(target, point, f));
      for (std::size_t k = 0; k < active_.size(); ++k) {
        point[static_cast<std::size_t>(active_[k] - 1)] = values[k];
        partial_[pt].push_back(target_eval(target, point, f));
      }
      values_[pt] = std::move(values);
      for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) base_[pt][i][j] = b.at(i, j) ? f.one() : f.zero();
      }
    }
    sets_.reserve(active_.size());
  }

  SearchReport run() {
    SearchReport rep;
    rep.support = b_;
    rep.support_size = static_cast<std::size_t>(b_.ones());
    rep.family_size = fam_.size();
    report_ = &rep;
    if (!fam_.masks.empty()) dfs(0, 0);
    return rep;
  }

 private:
  void build(int pt, FieldElement (*a)[kMaxFamilySize]) const {
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) a[i][j] = base_[pt][i][j];
    }
    for (std::size_t k = 0; k < sets_.size(); ++k) {
      for (std::uint64_t m = sets_[k]; m; m &= m - 1) {
        const int bit = __builtin_ctzll(m);
        a[bit / n_][bit % n_] = values_[pt][k];
      }
    }
  }

  // Does the node in sets_ match the partial target at both points?
  bool passes(std::size_t depth) const {
    const PrimeField& f = opts_.field;
    for (int pt = 0; pt < 2; ++pt) {
      FieldElement a[kMaxFamilySize][kMaxFamilySize];
      build(pt, a);
      const Ratio r = det_ratio(a, n_, f);
      if (!(r.num == f.mul(partial_[pt][depth], r.den))) return false;
    }
    return true;
  }

  bool dfs(std::size_t depth, std::uint64_t used) {
    if (depth == active_.size()) return verify();
    for (std::uint64_t mask : fam_.masks) {
      if (mask & used) continue;
      sets_.push_back(mask);
      ++report_->nodes;
      if (passes(depth + 1)) {
        report_->max_depth = std::max(report_->max_depth, static_cast<int>(depth + 1));
        if (dfs(depth + 1, used | mask)) return true;
      } else if (opts_.on_prune) {
        opts_.on_prune(sets_);
      }
      sets_.pop_back();
    }
    return false;
  }

  bool verify() {
    std::vector<PositionSet> sets(static_cast<std::size_t>(target_.arity()));
    for (std::size_t k = 0; k < active_.size(); ++k) {
      sets[static_cast<std::size_t>(active_[k] - 1)] = PositionSet::from_mask(sets_[k], n_);
    }
    VarMatrix a = place_variables(b_, CandidateAssignment(std::move(sets)), VarNaming{target_.m()});
    if (!(det_symbolic(a) == target_.to_multipoly())) return false;
    report_->outcome = Outcome::kRealized;
    report_->realization = std::move(a);
    return true;
  }

  const SupportMatrix& b_;
  const AdmissibleFamily& fam_;
  const TargetPolynomial& target_;
  const SearchOptions& opts_;
  int n_;
  std::vector<int> active_;
  std::vector<FieldElement> values_[2];
  std::vector<FieldElement> partial_[2];
  FieldElement base_[2][kMaxFamilySize][kMaxFamilySize];
  std::vector<std::uint64_t> sets_;
  SearchReport* report_ = nullptr;
};

}  // namespace

SearchReport stepwise_search(const SupportMatrix& b, const AdmissibleFamily& family, const TargetPolynomial& target,
                             const SearchOptions& opts) {
  if (!(family.support == b)) throw InputError("admissible family belongs to a different support");
  if (b.size() < 1 || b.size() > kMaxFamilySize) throw SizeLimitError("stepwise search needs 1 <= n <= 8");
  return Searcher(b, family, target, opts).run();
}

std::pair<MultiPoly, MultiPoly> partial_polynomials(const SupportMatrix& b, const std::vector<std::uint64_t>& sets,
                                                    const TargetPolynomial& target) {
  const auto active = target.active_variables();
  if (sets.size() > active.size()) throw DimensionError("more position sets than active variables");
  std::vector<PositionSet> placed(static_cast<std::size_t>(target.arity()));
  for (std::size_t k = 0; k < sets.size(); ++k) {
    placed[static_cast<std::size_t>(active[k] - 1)] = PositionSet::from_mask(sets[k], b.size());
  }
  const VarMatrix a = place_variables(b, CandidateAssignment(std::move(placed)), VarNaming{target.m()});
  // Substitute 1 for the active variables not yet placed.
  const MultiPoly full = target.to_multipoly();
  MultiPoly partial;
  for (const auto& [mono, coeff] : full.terms()) {
    Monomial m = mono;
    for (std::size_t k = sets.size(); k < active.size(); ++k) {
      const auto slot = static_cast<std::size_t>(active[k] - 1);
      if (slot < m.size()) m[slot] = 0;
    }
    partial.add_term(std::move(m), coeff);
  }
  return {det_symbolic(a), partial};
}

ProofReport prove_lower_bound(const TargetPolynomial& target, const ProofOptions& opts) {
  if (opts.n < 2 || opts.n > 6) throw SizeLimitError("prove_lower_bound supports 2 <= n <= 6");
  ProofReport rep;
  rep.target_name = target.name();
  rep.n = opts.n;
  std::vector<std::int64_t> ones(static_cast<std::size_t>(target.arity()), 1);
  rep.target_at_ones = target_eval(target, ones);
  rep.smaller_max_det = max_det_exhaustive(opts.n - 1);
  if (rep.smaller_max_det >= rep.target_at_ones) {
    throw InternalError("max det of " + std::to_string(opts.n - 1) + "x" + std::to_string(opts.n - 1) +
                        " 0/1 matrices reaches T(1,...,1); the degree pruning would be unsound");
  }

  EnumerationOptions eo;
  eo.n = opts.n;
  eo.abs_det = rep.target_at_ones;
  eo.jobs = opts.jobs;
  const auto candidates = enumerate_candidate_supports(eo);

  rep.reports.resize(candidates.size());
  const int jobs = opts.jobs > 0 ? opts.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const SupportMatrix& b = candidates[c].matrix;
    FamilyOptions fo{opts.seed, opts.field, 1};
    const AdmissibleFamily fam = compute_admissible_family(b, target, fo);
    SearchOptions so;
    so.seed = opts.seed;
    so.field = opts.field;
    rep.reports[c] = stepwise_search(b, fam, target, so);
  }
  rep.all_refuted = std::all_of(rep.reports.begin(), rep.reports.end(),
                                [](const SearchReport& r) { return r.outcome == Outcome::kRefuted; });
  return rep;
}

void write_report(std::ostream& out, const ProofReport& report) {
  std::uint64_t nodes = 0;
  std::size_t refuted = 0;
  for (const auto& r : report.reports) {
    out << r.support.to_bitstring() << ' ' << to_string(r.outcome) << ' ' << r.support_size << ' '
        << r.family_size << ' ' << r.nodes << ' ' << r.max_depth << '\n';
    nodes += r.nodes;
    refuted += r.outcome == Outcome::kRefuted;
  }
  out << "# target=" << report.target_name << " n=" << report.n << " candidates=" << report.reports.size()
      << " refuted=" << refuted << " nodes=" << nodes << " max_det(" << report.n - 1
      << ")=" << report.smaller_max_det << " T(1..1)=" << report.target_at_ones;
  if (report.all_refuted) {
    out << " bound: bdc(" << report.target_name << ") >= " << report.proven_bound();
  } else {
    out << " bound: none";
  }
  out << '\n';
}

}  // namespace bdc
