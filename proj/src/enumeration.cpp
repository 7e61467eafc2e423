#include "bdc/enumeration.hpp"

#include <algorithm>
#include <istream>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

#include <omp.h>

#include "bdc/algebra.hpp"
#include "bdc/error.hpp"

namespace bdc {

std::string to_string(Equivalence e) {
  return e == Equivalence::kRowColumn ? "row-column" : "row-column-transpose";
}

namespace {

constexpr int kMaxCanonicalSize = 7;

// For every column permutation p of n columns, the image of each n-bit row
// word under p (new column j = old column p[j]).
struct PermTables {
  int n = 0;
  int count = 0;
  std::vector<std::uint8_t> image;  // count x 2^n

  const std::uint8_t* table(int p) const { return image.data() + (static_cast<std::size_t>(p) << n); }
};

const PermTables& perm_tables(int n) {
  static PermTables cache[kMaxCanonicalSize + 1];
  static std::once_flag flags[kMaxCanonicalSize + 1];
  std::call_once(flags[n], [n] {
    PermTables& t = cache[n];
    t.n = n;
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    do {
      for (unsigned v = 0; v < (1u << n); ++v) {
        unsigned w = 0;
        for (int j = 0; j < n; ++j) w |= ((v >> (n - 1 - p[static_cast<std::size_t>(j)])) & 1u) << (n - 1 - j);
        t.image.push_back(static_cast<std::uint8_t>(w));
      }
      ++t.count;
    } while (std::next_permutation(p.begin(), p.end()));
  });
  return cache[n];
}

// Smallest packed key over all column permutations of the given rows.
std::uint64_t min_key_over_columns(const std::uint64_t* rows, int n, std::uint64_t best) {
  const PermTables& t = perm_tables(n);
  const std::uint64_t best_first = best >> (n * (n - 1));
  std::uint8_t r[kMaxCanonicalSize];
  for (int p = 0; p < t.count; ++p) {
    const std::uint8_t* img = t.table(p);
    std::uint8_t lo = 0xff;
    for (int i = 0; i < n; ++i) {
      r[i] = img[rows[i]];
      lo = std::min(lo, r[i]);
    }
    if (lo > best_first) continue;
    std::sort(r, r + n);
    std::uint64_t key = 0;
    for (int i = 0; i < n; ++i) key = (key << n) | r[i];
    best = std::min(best, key);
  }
  return best;
}

std::uint64_t key_of(const SupportMatrix& b, Equivalence eq) {
  const int n = b.size();
  if (n < 1) throw DimensionError("canonical_form needs n >= 1");
  if (n > kMaxCanonicalSize) throw SizeLimitError("canonical_form supports n <= 7");
  std::uint64_t best = ~std::uint64_t{0};
  best = min_key_over_columns(b.rows().data(), n, best);
  if (eq == Equivalence::kRowColumnTranspose) {
    const SupportMatrix t = b.transposed();
    best = min_key_over_columns(t.rows().data(), n, best);
  }
  return best;
}

SupportMatrix from_key(std::uint64_t key, int n) {
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(n));
  const std::uint64_t row_mask = (std::uint64_t{1} << n) - 1;
  for (int i = n - 1; i >= 0; --i, key >>= n) rows[static_cast<std::size_t>(i)] = key & row_mask;
  return SupportMatrix::from_rows(n, std::move(rows));
}

// Depth-first generation of row-sorted, column-strictly-sorted matrices
// whose rows all have weight >= 2. `strict_rows` also demands distinct rows.
class SortedMatrixWalker {
 public:
  SortedMatrixWalker(int n, bool strict_rows) : n_(n), strict_rows_(strict_rows) {
    for (unsigned v = 0; v < (1u << n); ++v) {
      if (__builtin_popcount(v) >= 2) values_.push_back(v);
    }
    // Bit n-1-j marks the adjacent column pair (j, j+1).
    pair_mask_ = ((std::uint64_t{1} << n) - 1) & ~std::uint64_t{1};
  }

  std::size_t first_row_choices() const { return values_.size(); }

  // Calls visit(rows) for every completed matrix whose first row is
  // values_[first].
  template <class Visit>
  void walk_from(std::size_t first, Visit&& visit) {
    std::uint64_t rows[8];
    rows[0] = values_[first];
    std::uint64_t tied = pair_mask_;
    if (!advance(tied, rows[0])) return;
    recurse(1, first, tied, rows, visit);
  }

 private:
  // Updates the set of still-equal adjacent column pairs after appending
  // row v; false if some column would fall below its right neighbour.
  static bool advance(std::uint64_t& tied, std::uint64_t v) {
    const std::uint64_t right = v << 1;  // column j+1 moved onto column j's bit
    if (tied & v & ~right) return false;
    tied &= ~(~v & right);
    return true;
  }

  template <class Visit>
  void recurse(int depth, std::size_t prev, std::uint64_t tied, std::uint64_t* rows, Visit& visit) {
    if (depth == n_) {
      if (tied != 0) return;
      for (int j = 0; j < n_; ++j) {
        int weight = 0;
        for (int i = 0; i < n_; ++i) weight += static_cast<int>((rows[i] >> (n_ - 1 - j)) & 1u);
        if (weight < 2) return;
      }
      visit(static_cast<const std::uint64_t*>(rows));
      return;
    }
    for (std::size_t k = strict_rows_ ? prev + 1 : prev; k < values_.size(); ++k) {
      std::uint64_t t = tied;
      if (!advance(t, values_[k])) continue;
      rows[depth] = values_[k];
      recurse(depth + 1, k, t, rows, visit);
    }
  }

  int n_;
  bool strict_rows_;
  std::vector<std::uint64_t> values_;
  std::uint64_t pair_mask_ = 0;
};

void check_enumeration_options(const EnumerationOptions& opts) {
  if (opts.n < 2 || opts.n > 6) throw SizeLimitError("candidate enumeration supports 2 <= n <= 6");
  if (opts.abs_det < 1) throw InputError("abs_det must be positive");
}

std::vector<CanonicalSupport> finish(std::vector<std::uint64_t> keys, int n) {
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::vector<CanonicalSupport> out;
  out.reserve(keys.size());
  for (std::uint64_t key : keys) {
    CanonicalSupport c;
    c.canonical = from_key(key, n);
    std::vector<std::uint64_t> rows(c.canonical.rows().begin(), c.canonical.rows().end());
    std::int64_t d = det_bits(rows, n);
    if (d < 0) {
      std::swap(rows[0], rows[1]);
      d = -d;
    }
    c.matrix = SupportMatrix::from_rows(n, std::move(rows));
    c.det = d;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<CanonicalSupport> enumerate_impl(const EnumerationOptions& opts, EnumerationStats* stats,
                                             bool parallel) {
  check_enumeration_options(opts);
  const int n = opts.n;
  perm_tables(n);
  SortedMatrixWalker walker(n, true);
  const auto firsts = static_cast<std::int64_t>(walker.first_row_choices());
  std::vector<std::vector<std::uint64_t>> found(static_cast<std::size_t>(firsts));
  std::uint64_t visited = 0, survivors = 0;
  const int jobs = opts.jobs > 0 ? opts.jobs : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic) reduction(+ : visited, survivors) num_threads(jobs) if (parallel)
  for (std::int64_t f = 0; f < firsts; ++f) {
    SortedMatrixWalker local = walker;
    auto& bucket = found[static_cast<std::size_t>(f)];
    local.walk_from(static_cast<std::size_t>(f), [&](const std::uint64_t* rows) {
      ++visited;
      const std::int64_t d = det_bits(std::span<const std::uint64_t>(rows, static_cast<std::size_t>(n)), n);
      if (d != opts.abs_det && d != -opts.abs_det) return;
      ++survivors;
      std::uint64_t best = min_key_over_columns(rows, n, ~std::uint64_t{0});
      if (opts.equivalence == Equivalence::kRowColumnTranspose) {
        const SupportMatrix t =
            SupportMatrix::from_rows(n, std::vector<std::uint64_t>(rows, rows + n)).transposed();
        best = min_key_over_columns(t.rows().data(), n, best);
      }
      bucket.push_back(best);
    });
  }

  if (stats) {
    stats->sorted_matrices = visited;
    stats->det_survivors = survivors;
  }
  std::vector<std::uint64_t> keys;
  for (auto& bucket : found) keys.insert(keys.end(), bucket.begin(), bucket.end());
  return finish(std::move(keys), n);
}

// Sum over the group of 2^(#cell cycles), as an exact 128-bit integer.
using Wide = unsigned __int128;

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return perms;
}

std::vector<int> cycle_type(const std::vector<int>& p) {
  std::vector<int> lengths;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
      seen[j] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

}  // namespace

SupportMatrix canonical_form(const SupportMatrix& b, Equivalence eq) { return from_key(key_of(b, eq), b.size()); }

std::uint64_t canonical_key(const SupportMatrix& b, Equivalence eq) { return key_of(b, eq); }

std::vector<CanonicalSupport> enumerate_candidate_supports(const EnumerationOptions& opts, EnumerationStats* stats) {
  return enumerate_impl(opts, stats, true);
}

std::vector<CanonicalSupport> enumerate_candidate_supports_serial(const EnumerationOptions& opts,
                                                                  EnumerationStats* stats) {
  return enumerate_impl(opts, stats, false);
}

std::uint64_t count_bipartite_classes(int n, Equivalence eq) {
  if (n < 1 || n > 7) throw SizeLimitError("count_bipartite_classes supports 1 <= n <= 7");
  if (eq == Equivalence::kRowColumnTranspose && n > 6) {
    throw SizeLimitError("count_bipartite_classes with transposition supports n <= 6");
  }
  const auto perms = all_permutations(n);
  const Wide order = perms.size();

  // Row and column permutations only: the cycle count on cells depends on
  // the two cycle types alone (gcd of each pair of cycle lengths).
  std::vector<std::pair<std::vector<int>, Wide>> types;
  for (const auto& p : perms) {
    auto type = cycle_type(p);
    auto it = std::find_if(types.begin(), types.end(), [&](const auto& e) { return e.first == type; });
    if (it == types.end()) {
      types.emplace_back(std::move(type), 1);
    } else {
      ++it->second;
    }
  }
  Wide total = 0;
  for (const auto& [a, ca] : types) {
    for (const auto& [b, cb] : types) {
      int cycles = 0;
      for (int x : a) {
        for (int y : b) cycles += std::gcd(x, y);
      }
      total += ca * cb * (Wide{1} << cycles);
    }
  }
  Wide group = order * order;

  if (eq == Equivalence::kRowColumnTranspose) {
    // Transposed elements: cell (i,j) -> (sigma(j), tau(i)).
    const int cells = n * n;
    std::vector<bool> seen(static_cast<std::size_t>(cells));
    for (const auto& sigma : perms) {
      for (const auto& tau : perms) {
        std::fill(seen.begin(), seen.end(), false);
        int cycles = 0;
        for (int c = 0; c < cells; ++c) {
          if (seen[static_cast<std::size_t>(c)]) continue;
          ++cycles;
          for (int d = c; !seen[static_cast<std::size_t>(d)];) {
            seen[static_cast<std::size_t>(d)] = true;
            const int i = d / n, j = d % n;
            d = sigma[static_cast<std::size_t>(j)] * n + tau[static_cast<std::size_t>(i)];
          }
        }
        total += Wide{1} << cycles;
      }
    }
    group *= 2;
  }
  if (total % group != 0) throw InternalError("Burnside sum not divisible by the group order");
  return static_cast<std::uint64_t>(total / group);
}

std::uint64_t count_census_classes(int n) {
  if (n < 2 || n > 6) throw SizeLimitError("count_census_classes supports 2 <= n <= 6");
  perm_tables(n);
  SortedMatrixWalker walker(n, false);
  const auto firsts = static_cast<std::int64_t>(walker.first_row_choices());
  std::vector<std::vector<std::uint64_t>> found(static_cast<std::size_t>(firsts));
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t f = 0; f < firsts; ++f) {
    SortedMatrixWalker local = walker;
    auto& bucket = found[static_cast<std::size_t>(f)];
    local.walk_from(static_cast<std::size_t>(f), [&](const std::uint64_t* rows) {
      bucket.push_back(min_key_over_columns(rows, n, ~std::uint64_t{0}));
    });
    std::sort(bucket.begin(), bucket.end());
    bucket.erase(std::unique(bucket.begin(), bucket.end()), bucket.end());
  }
  std::vector<std::uint64_t> keys;
  for (auto& bucket : found) keys.insert(keys.end(), bucket.begin(), bucket.end());
  std::sort(keys.begin(), keys.end());
  return static_cast<std::uint64_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
}

void write_candidates(std::ostream& out, const std::vector<CanonicalSupport>& list, const EnumerationOptions& opts) {
  out << "# n=" << opts.n << " abs_det=" << opts.abs_det << " equivalence=" << to_string(opts.equivalence)
      << " classes=" << list.size() << '\n';
  for (const auto& c : list) out << c.matrix.to_bitstring() << ' ' << c.det << '\n';
}

std::vector<CanonicalSupport> read_candidates(std::istream& in, Equivalence eq) {
  std::vector<CanonicalSupport> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string bits;
    std::int64_t det = 0;
    std::string extra;
    if (!(ls >> bits >> det) || (ls >> extra)) throw ParseError("expected '<bits> <det>'", lineno, 1);
    CanonicalSupport c;
    try {
      c.matrix = SupportMatrix::from_bitstring(bits);
    } catch (const Error& e) {
      throw ParseError(e.what(), lineno, 1);
    }
    if (c.matrix.size() > kMaxCanonicalSize) throw ParseError("matrix larger than 7x7", lineno, 1);
    if (det_bits(c.matrix.rows(), c.matrix.size()) != det) {
      throw ParseError("recorded det does not match the matrix", lineno, static_cast<int>(bits.size()) + 2);
    }
    c.det = det;
    c.canonical = canonical_form(c.matrix, eq);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace bdc
