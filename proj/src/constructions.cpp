#include "bdc/constructions.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "bdc/error.hpp"

namespace bdc {

namespace {

Entry grid_var(int width, int i, int j) { return Entry::var((i - 1) * width + j); }

std::vector<unsigned> subsets_by_size(int m) {
  std::vector<unsigned> sets;
  for (unsigned mask = 0; mask < (1u << m); ++mask) sets.push_back(mask);
  std::stable_sort(sets.begin(), sets.end(),
                   [](unsigned a, unsigned b) { return __builtin_popcount(a) < __builtin_popcount(b); });
  return sets;
}

VarMatrix from_tokens(const std::vector<std::vector<std::string>>& rows, int width) {
  std::string text = std::to_string(rows.size()) + " binary\n";
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) text += (j ? " " : "") + row[j];
    text += '\n';
  }
  return parse_matrix(text, width);
}

}  // namespace

Abp grenet_abp(int m) {
  if (m < 1 || m > 5) throw InputError("grenet_abp needs 1 <= m <= 5");
  const auto sets = subsets_by_size(m);
  std::vector<int> index(sets.size());
  for (std::size_t k = 0; k < sets.size(); ++k) index[sets[k]] = static_cast<int>(k);
  const unsigned full = (1u << m) - 1;
  Abp abp(static_cast<int>(sets.size()), index[0], index[full], VarNaming{m});
  for (unsigned set : sets) {
    const int layer = __builtin_popcount(set) + 1;
    for (int j = 1; j <= m; ++j) {
      const unsigned bit = 1u << (j - 1);
      if (set & bit) continue;
      abp.add_edge(index[set], index[set | bit], grid_var(m, layer, j));
    }
  }
  return abp;
}

Abp hc_abp(int m) {
  if (m < 1 || m > 4) throw InputError("hc_abp needs 1 <= m <= 4");
  const int w = m + 1;
  std::vector<std::tuple<int, unsigned, int>> keys;
  for (unsigned set = 1; set < (1u << m); ++set) {
    for (int i = 1; i <= m; ++i) {
      if (set & (1u << (i - 1))) keys.emplace_back(__builtin_popcount(set), set, i);
    }
  }
  std::sort(keys.begin(), keys.end());
  std::map<std::pair<unsigned, int>, int> index;
  for (std::size_t k = 0; k < keys.size(); ++k) {
    index[{std::get<1>(keys[k]), std::get<2>(keys[k])}] = static_cast<int>(k) + 1;
  }
  const int t = static_cast<int>(keys.size()) + 1;
  const unsigned full = (1u << m) - 1;
  Abp abp(t + 1, 0, t, VarNaming{w});
  for (int i = 1; i <= m; ++i) abp.add_edge(0, index[{1u << (i - 1), i}], grid_var(w, m + 1, i));
  for (const auto& [size, set, i] : keys) {
    const int from = index[{set, i}];
    for (int j = 1; j <= m; ++j) {
      const unsigned bit = 1u << (j - 1);
      if (set & bit) continue;
      abp.add_edge(from, index[{set | bit, j}], grid_var(w, i, j));
    }
    if (set == full) abp.add_edge(from, t, grid_var(w, i, m + 1));
  }
  return abp;
}

VarMatrix explicit_hc_matrix(int m) {
  if (m == 2) return from_tokens({{"x1_2", "0"}, {"0", "x2_1"}}, 2);
  if (m == 3) {
    return from_tokens({{"0", "x1_2", "x1_3"}, {"x2_1", "0", "x2_3"}, {"x3_1", "x3_2", "0"}}, 3);
  }
  throw InputError("explicit_hc_matrix exists only for m = 2, 3");
}

VarMatrix grenet7x7() {
  return from_tokens({{"x1_1", "x1_2", "x1_3", "0", "0", "0", "0"},
                      {"1", "0", "0", "x3_2", "x3_3", "0", "0"},
                      {"0", "1", "0", "x3_1", "0", "x3_3", "0"},
                      {"0", "0", "1", "0", "x3_1", "x3_2", "0"},
                      {"0", "0", "0", "1", "0", "0", "x2_3"},
                      {"0", "0", "0", "0", "1", "0", "x2_2"},
                      {"0", "0", "0", "0", "0", "1", "x2_1"}},
                     3);
}

VarMatrix per2_example_matrix() {
  return from_tokens({{"0", "x1_1", "x2_1"}, {"x1_2", "0", "1"}, {"x2_2", "1", "0"}}, 2);
}

VarMatrix fig1_matrix() {
  VarMatrix c(3, Flavor::kInteger);
  c.set(0, 0, Entry::integer(3));
  c.set(0, 2, Entry::integer(-2));
  c.set(1, 1, Entry::var(1));
  c.set(2, 0, Entry::var(1));
  c.set(2, 2, Entry::var(2));
  return c;
}

VarMatrix uniqueness_example_a() {
  return from_tokens({{"x3_1", "x3_2", "x3_1", "0", "x3_2", "1", "x2_3"},
                      {"1", "x3_3", "0", "x3_1", "x3_3", "x3_1", "x2_2"},
                      {"x3_3", "0", "x3_3", "x3_2", "1", "x3_2", "x2_1"},
                      {"1", "0", "1", "0", "0", "0", "x2_2"},
                      {"0", "x1_1", "x1_2", "x1_3", "0", "0", "0"},
                      {"0", "1", "0", "0", "1", "0", "x2_1"},
                      {"0", "0", "0", "1", "0", "1", "x2_3"}},
                     3);
}

IntMatrix uniqueness_example_g() {
  return IntMatrix::from_rows({{0, 0, 0, 0, -1, 0, 0},
                               {0, 0, 1, 0, 0, -1, 0},
                               {0, 1, 0, -1, 0, 0, 0},
                               {1, 0, 0, 0, 0, 0, -1},
                               {0, 0, 0, 0, 0, 0, 1},
                               {0, 0, 0, 1, 0, 0, 0},
                               {0, 0, 0, 0, 0, 1, 0}});
}

IntMatrix uniqueness_example_h() {
  return IntMatrix::from_rows({{0, 1, 0, 0, 1, 0, 0},
                               {-1, 0, 0, 0, 0, 0, 0},
                               {0, -1, 0, 0, 0, 0, 0},
                               {0, 0, -1, 0, 0, 0, 0},
                               {1, 0, 0, 0, 0, 1, 0},
                               {0, 0, 1, 1, 0, 0, 0},
                               {0, 0, 0, 0, 0, 0, 1}});
}

}  // namespace bdc
