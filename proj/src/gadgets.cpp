#include "bdc/gadgets.hpp"

#include <algorithm>
#include <charconv>
#include <random>
#include <sstream>

#include "bdc/checked_int.hpp"
#include "bdc/error.hpp"

namespace bdc {

// ------------------------------------------------------------------ Abp

Abp::Abp(int vertex_count, int source, int target, VarNaming naming)
    : vertex_count_(vertex_count), source_(source), target_(target), naming_(naming) {}

void Abp::add_edge(int from, int to, Entry label) {
  if (!label.is_one() && !label.is_var()) throw InputError("ABP edge labels must be 1 or a variable");
  edges_.push_back({from, to, label});
}

std::vector<int> Abp::topological_order() const {
  std::vector<int> indeg(static_cast<std::size_t>(vertex_count_), 0);
  std::vector<std::vector<int>> out(static_cast<std::size_t>(vertex_count_));
  for (const auto& e : edges_) {
    ++indeg[static_cast<std::size_t>(e.to)];
    out[static_cast<std::size_t>(e.from)].push_back(e.to);
  }
  std::vector<int> order, stack;
  for (int v = vertex_count_ - 1; v >= 0; --v) {
    if (indeg[static_cast<std::size_t>(v)] == 0) stack.push_back(v);
  }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (int w : out[static_cast<std::size_t>(v)]) {
      if (--indeg[static_cast<std::size_t>(w)] == 0) stack.push_back(w);
    }
  }
  if (static_cast<int>(order.size()) != vertex_count_) throw InputError("ABP contains a cycle");
  return order;
}

void Abp::validate() const {
  if (vertex_count_ < 2) throw InputError("ABP needs at least two vertices");
  if (source_ < 0 || source_ >= vertex_count_ || target_ < 0 || target_ >= vertex_count_ || source_ == target_) {
    throw InputError("ABP source/target must be distinct vertices");
  }
  std::vector<std::pair<int, int>> pairs;
  for (const auto& e : edges_) {
    if (e.from < 0 || e.from >= vertex_count_ || e.to < 0 || e.to >= vertex_count_) {
      throw InputError("ABP edge endpoint out of range");
    }
    if (e.from == e.to) throw InputError("ABP contains a loop");
    if (e.to == source_) throw InputError("ABP source has an incoming edge");
    if (e.from == target_) throw InputError("ABP target has an outgoing edge");
    if (!e.label.is_one() && !e.label.is_var()) throw InputError("ABP edge labels must be 1 or a variable");
    pairs.emplace_back(e.from, e.to);
  }
  std::sort(pairs.begin(), pairs.end());
  if (std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end()) {
    throw InputError("ABP contains parallel edges");
  }
  topological_order();
}

// -------------------------------------------------------- AdditionChain

void AdditionChain::validate() const {
  if (values.empty() || values.front() != 1) throw InputError("addition chain must start at 1");
  if (steps.size() + 1 != values.size()) throw InputError("addition chain needs one step per value");
  for (std::size_t i = 1; i < values.size(); ++i) {
    auto [j, k] = steps[i - 1];
    if (j < 0 || k < 0 || static_cast<std::size_t>(j) >= i || static_cast<std::size_t>(k) >= i) {
      throw InputError("addition chain step refers to a later element");
    }
    if (values[i] != values[static_cast<std::size_t>(j)] + values[static_cast<std::size_t>(k)]) {
      throw InputError("addition chain step does not add up");
    }
  }
  auto sorted = values;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InputError("addition chain values must be distinct");
  }
}

AdditionChain addition_chain(std::uint64_t c) {
  if (c < 1) throw InputError("addition chains need c >= 1");
  AdditionChain chain;
  chain.values.push_back(1);
  const int top = 63 - __builtin_clzll(c);
  for (int bit = top - 1; bit >= 0; --bit) {
    int last = static_cast<int>(chain.values.size()) - 1;
    chain.values.push_back(chain.values.back() * 2);
    chain.steps.emplace_back(last, last);
    if ((c >> bit) & 1u) {
      chain.values.push_back(chain.values.back() + 1);
      chain.steps.emplace_back(last + 1, 0);
    }
  }
  return chain;
}

Abp constant_abp(std::int64_t c) {
  if (c == 0) throw InputError("constant_abp needs a nonzero constant");
  const std::uint64_t mag = c < 0 ? static_cast<std::uint64_t>(-(c + 1)) + 1 : static_cast<std::uint64_t>(c);
  const AdditionChain chain = addition_chain(mag);

  // Every chain vertex is reached only by paths of one length parity. An
  // edge flips the parity; a subdivided edge (two edges) keeps it. c_0 is
  // available at two parities: at the source itself and behind one edge.
  struct Handle {
    int vertex;
    int parity;
  };
  Abp abp(1, 0, 0);
  const int src = 0;
  const int v0 = abp.add_vertex();
  abp.add_edge(src, v0, Entry::one());
  std::vector<std::vector<Handle>> handles;
  handles.push_back({{src, 0}, {v0, 1}});

  auto connect = [&](Handle from, int to, int to_parity) {
    if (from.parity != to_parity) {
      abp.add_edge(from.vertex, to, Entry::one());
    } else {
      int mid = abp.add_vertex();
      abp.add_edge(from.vertex, mid, Entry::one());
      abp.add_edge(mid, to, Entry::one());
    }
  };
  auto cheapest = [](const std::vector<Handle>& hs, int parity) {
    for (const auto& h : hs) {
      if (h.parity != parity) return std::pair{h, 0};
    }
    return std::pair{hs.front(), 1};
  };

  for (std::size_t i = 1; i < chain.values.size(); ++i) {
    auto [j, k] = chain.steps[i - 1];
    const auto& hj = handles[static_cast<std::size_t>(j)];
    const auto& hk = handles[static_cast<std::size_t>(k)];
    const int v = abp.add_vertex();
    int parity;
    if (j == k && hj.size() == 1) {
      // Doubling one vertex: two subdivided edges avoid a parallel pair.
      parity = hj.front().parity;
      connect(hj.front(), v, parity);
      connect(hj.front(), v, parity);
    } else if (j == k) {
      // Doubling c_0: one direct edge from the source, one subdivided from v0.
      parity = 1;
      connect(hj[0], v, parity);
      connect(hj[1], v, parity);
    } else {
      auto [a1, cost1] = cheapest(hj, 1);
      auto [b1, cost1k] = cheapest(hk, 1);
      auto [a0, cost0] = cheapest(hj, 0);
      auto [b0, cost0k] = cheapest(hk, 0);
      if (cost1 + cost1k <= cost0 + cost0k) {
        parity = 1;
        connect(a1, v, 1);
        connect(b1, v, 1);
      } else {
        parity = 0;
        connect(a0, v, 0);
        connect(b0, v, 0);
      }
    }
    handles.push_back({{v, parity}});
  }

  // Paths of odd length weigh +1, even length -1.
  Handle last = handles.back().back();
  const int wanted = c > 0 ? 1 : 0;
  int target = last.vertex;
  if (last.parity != wanted) {
    target = abp.add_vertex();
    abp.add_edge(last.vertex, target, Entry::one());
  }
  abp.set_target(target);
  return abp;
}

// ----------------------------------------------------------- path values

namespace {

std::vector<std::vector<const AbpEdge*>> out_edges(const Abp& abp) {
  std::vector<std::vector<const AbpEdge*>> out(static_cast<std::size_t>(abp.vertex_count()));
  for (const auto& e : abp.edges()) out[static_cast<std::size_t>(e.from)].push_back(&e);
  return out;
}

}  // namespace

MultiPoly abp_path_value(const Abp& abp, std::size_t path_budget) {
  abp.validate();
  const auto out = out_edges(abp);
  MultiPoly value;
  std::size_t paths = 0;
  Monomial mono;
  // Iterative DFS; frame = (vertex, next edge index).
  std::vector<std::pair<int, std::size_t>> stack{{abp.source(), 0}};
  std::vector<const AbpEdge*> taken;
  while (!stack.empty()) {
    auto& [v, idx] = stack.back();
    if (v == abp.target()) {
      if (++paths > path_budget) {
        throw SizeLimitError("ABP has more than " + std::to_string(path_budget) + " s-t paths");
      }
      value.add_term(mono, taken.size() % 2 == 1 ? 1 : -1);
    }
    const auto& edges = out[static_cast<std::size_t>(v)];
    if (v == abp.target() || idx >= edges.size()) {
      stack.pop_back();
      if (!taken.empty()) {
        const AbpEdge* e = taken.back();
        taken.pop_back();
        if (e->label.is_var()) mono[static_cast<std::size_t>(e->label.var_index() - 1)]--;
      }
      continue;
    }
    const AbpEdge* e = edges[idx++];
    if (e->label.is_var()) {
      std::size_t slot = static_cast<std::size_t>(e->label.var_index() - 1);
      if (mono.size() <= slot) mono.resize(slot + 1, 0);
      mono[slot]++;
    }
    taken.push_back(e);
    stack.emplace_back(e->to, 0);
  }
  return value;
}

std::uint64_t abp_path_count(const Abp& abp) {
  const auto order = abp.topological_order();
  std::vector<std::uint64_t> count(static_cast<std::size_t>(abp.vertex_count()), 0);
  count[static_cast<std::size_t>(abp.source())] = 1;
  const auto out = out_edges(abp);
  for (int v : order) {
    for (const AbpEdge* e : out[static_cast<std::size_t>(v)]) {
      count[static_cast<std::size_t>(e->to)] += count[static_cast<std::size_t>(v)];
    }
  }
  return count[static_cast<std::size_t>(abp.target())];
}

FieldElement abp_eval_mod(const Abp& abp, std::span<const FieldElement> point, const PrimeField& field) {
  const auto order = abp.topological_order();
  const auto out = out_edges(abp);
  // weight[v] = sum over s-v paths of (-1)^(len+1) * labels; the target
  // value is then exactly the path value.
  std::vector<FieldElement> weight(static_cast<std::size_t>(abp.vertex_count()), field.zero());
  weight[static_cast<std::size_t>(abp.source())] = field.neg(field.one());
  for (int v : order) {
    const FieldElement wv = weight[static_cast<std::size_t>(v)];
    if (wv.value == 0) continue;
    for (const AbpEdge* e : out[static_cast<std::size_t>(v)]) {
      FieldElement step = field.neg(wv);
      if (e->label.is_var()) {
        std::size_t slot = static_cast<std::size_t>(e->label.var_index() - 1);
        if (slot >= point.size()) throw DimensionError("evaluation point too short for ABP labels");
        step = field.mul(step, point[slot]);
      }
      auto& w = weight[static_cast<std::size_t>(e->to)];
      w = field.add(w, step);
    }
  }
  return weight[static_cast<std::size_t>(abp.target())];
}

std::vector<int> abp_layers(const Abp& abp) {
  const auto order = abp.topological_order();
  const auto out = out_edges(abp);
  std::vector<int> layer(static_cast<std::size_t>(abp.vertex_count()), -1);
  layer[static_cast<std::size_t>(abp.source())] = 0;
  for (int v : order) {
    const int lv = layer[static_cast<std::size_t>(v)];
    if (lv < 0) continue;
    for (const AbpEdge* e : out[static_cast<std::size_t>(v)]) {
      int& lw = layer[static_cast<std::size_t>(e->to)];
      if (lw < 0) {
        lw = lv + 1;
      } else if (lw != lv + 1) {
        return {};
      }
    }
  }
  return layer;
}

// --------------------------------------------------------- abp_to_matrix

VarMatrix abp_to_matrix(const Abp& abp) {
  abp.validate();
  const int n = abp.vertex_count();
  const int s = abp.source(), t = abp.target();
  std::vector<int> index(static_cast<std::size_t>(n));
  for (int v = 0, next = 0; v < n; ++v) {
    if (v != t) index[static_cast<std::size_t>(v)] = next++;
  }
  index[static_cast<std::size_t>(t)] = index[static_cast<std::size_t>(s)];
  VarMatrix a(n - 1, Flavor::kBinary, abp.naming());
  for (int v = 0; v < n; ++v) {
    if (v != s && v != t) a.set(index[static_cast<std::size_t>(v)], index[static_cast<std::size_t>(v)], Entry::one());
  }
  for (const auto& e : abp.edges()) {
    a.set(index[static_cast<std::size_t>(e.from)], index[static_cast<std::size_t>(e.to)], e.label);
  }
  return a;
}

VarMatrix abp_to_matrix(const Abp& abp, const PointEvaluator& target, int target_arity, std::uint64_t seed,
                        const PrimeField& field) {
  VarMatrix a = abp_to_matrix(abp);
  if (!a.naming().is_grid()) a.declare_variables(target_arity);
  const int arity = std::max(target_arity, a.var_count());
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(2, field.modulus() - 1);
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::vector<FieldElement> point(static_cast<std::size_t>(arity));
    for (auto& x : point) x = {dist(rng)};
    const FieldElement path = abp_eval_mod(abp, point, field);
    const FieldElement want = target(std::span<const FieldElement>(point.data(), static_cast<std::size_t>(target_arity)), field);
    const bool plus = path == want;
    const bool minus = path == field.neg(want);
    if (plus && minus) continue;  // target vanishes here; try another point
    if (plus) return a;
    if (minus) {
      if (a.size() < 2) throw InputError("cannot fix the sign of a 1x1 matrix by a row swap");
      VarMatrix swapped(a.size(), a.flavor(), a.naming());
      for (int i = 0; i < a.size(); ++i) {
        const int src_row = i == 0 ? 1 : i == 1 ? 0 : i;
        for (int j = 0; j < a.size(); ++j) swapped.set(i, j, a(src_row, j));
      }
      swapped.declare_variables(a.var_count());
      return swapped;
    }
    throw InputError("ABP path value is neither +target nor -target");
  }
  return a;
}

VarMatrix abp_to_matrix(const Abp& abp, const TargetPolynomial& target, std::uint64_t seed) {
  PointEvaluator eval = [target](std::span<const FieldElement> point, const PrimeField& field) {
    return target_eval(target, point, field);
  };
  return abp_to_matrix(abp, eval, target.arity(), seed);
}

// -------------------------------------------------------- LabeledDigraph

LabeledDigraph::LabeledDigraph(int vertex_count, VarNaming naming)
    : naming_(naming),
      adj_(static_cast<std::size_t>(vertex_count), std::vector<Entry>(static_cast<std::size_t>(vertex_count))) {}

LabeledDigraph LabeledDigraph::from_matrix(const VarMatrix& c) {
  LabeledDigraph g(c.size(), c.naming());
  g.declared_vars_ = c.var_count();
  for (int i = 0; i < c.size(); ++i) {
    for (int j = 0; j < c.size(); ++j) g.adj_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = c(i, j);
  }
  return g;
}

int LabeledDigraph::add_vertex() {
  for (auto& row : adj_) row.emplace_back();
  adj_.emplace_back(adj_.size() + 1);
  return static_cast<int>(adj_.size()) - 1;
}

void LabeledDigraph::set_edge(int from, int to, Entry label) {
  adj_.at(static_cast<std::size_t>(from)).at(static_cast<std::size_t>(to)) = label;
}

void LabeledDigraph::remove_edge(int from, int to) { set_edge(from, to, Entry::zero()); }

const Entry& LabeledDigraph::label(int from, int to) const {
  return adj_.at(static_cast<std::size_t>(from)).at(static_cast<std::size_t>(to));
}

VarMatrix LabeledDigraph::adjacency_matrix() const {
  bool binary = true;
  for (const auto& row : adj_) {
    for (const auto& e : row) binary = binary && !e.is_int();
  }
  VarMatrix a(vertex_count(), binary ? Flavor::kBinary : Flavor::kInteger, naming_);
  for (int i = 0; i < vertex_count(); ++i) {
    for (int j = 0; j < vertex_count(); ++j) a.set(i, j, adj_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  }
  if (!naming_.is_grid()) a.declare_variables(declared_vars_);
  return a;
}

VarMatrix binarize(const VarMatrix& c) {
  LabeledDigraph g = LabeledDigraph::from_matrix(c);
  const int n = c.size();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Entry e = c(i, j);
      if (!e.is_int()) continue;
      const Abp gadget = constant_abp(e.constant());
      const int offset = g.vertex_count();
      for (int v = 0; v < gadget.vertex_count(); ++v) {
        int id = g.add_vertex();
        g.set_edge(id, id, Entry::one());
      }
      for (const auto& ge : gadget.edges()) g.set_edge(ge.from + offset, ge.to + offset, ge.label);
      g.remove_edge(i, j);
      g.set_edge(i, gadget.source() + offset, Entry::one());
      g.set_edge(gadget.target() + offset, j, Entry::one());
    }
  }
  return g.adjacency_matrix();
}

// -------------------------------------------------------- serialization

std::string serialize_abp(const Abp& abp) {
  std::ostringstream out;
  out << abp.vertex_count() << ' ' << abp.source() + 1 << ' ' << abp.target() + 1 << '\n';
  for (const auto& e : abp.edges()) {
    out << e.from + 1 << ' ' << e.to + 1 << ' ' << e.label.to_string(abp.naming()) << '\n';
  }
  return out.str();
}

namespace {

int parse_vertex(std::string_view tok, int line, int max) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || v < 1 || (max > 0 && v > max)) {
    throw ParseError("bad vertex '" + std::string(tok) + "'", line, 1);
  }
  return v - 1;
}

}  // namespace

Abp parse_abp(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string tok;
    while (ls >> tok) toks.push_back(tok);
    rows.push_back(std::move(toks));
  }
  std::size_t first = 0;
  while (first < rows.size() && rows[first].empty()) ++first;
  if (first == rows.size() || rows[first].size() != 3) throw ParseError("expected '<#vertices> <s> <t>' header");
  const int line0 = static_cast<int>(first) + 1;
  const int n = parse_vertex(rows[first][0], line0, 0) + 1;
  const int s = parse_vertex(rows[first][1], line0, n);
  const int t = parse_vertex(rows[first][2], line0, n);

  struct RawEdge {
    int u, v;
    Entry constant;
    VarToken var;
  };
  std::vector<RawEdge> raw;
  int max_grid = 0;
  bool any_seq = false, any_grid = false;
  for (std::size_t r = first + 1; r < rows.size(); ++r) {
    const int lineno = static_cast<int>(r) + 1;
    if (rows[r].empty()) continue;
    if (rows[r].size() != 3) throw ParseError("expected '<u> <v> <label>'", lineno, 1);
    RawEdge e{parse_vertex(rows[r][0], lineno, n), parse_vertex(rows[r][1], lineno, n), Entry::one(), {}};
    const std::string& lab = rows[r][2];
    if (lab == "1") {
      e.constant = Entry::one();
    } else if (auto var = parse_var_token(lab)) {
      e.var = *var;
      if (var->seq) {
        any_seq = true;
      } else {
        any_grid = true;
        max_grid = std::max({max_grid, var->row, var->col});
      }
    } else {
      throw ParseError("bad ABP label '" + lab + "'", lineno, 1);
    }
    raw.push_back(e);
  }
  if (any_seq && any_grid) throw ParseError("mixed x<k> and x<i>_<j> variable names");
  VarNaming naming{any_grid ? max_grid : 0};
  Abp abp(n, s, t, naming);
  for (const auto& e : raw) {
    Entry label = e.constant;
    if (e.var.seq) label = Entry::var(e.var.seq);
    if (e.var.row) label = Entry::var((e.var.row - 1) * naming.grid_width + e.var.col);
    abp.add_edge(e.u, e.v, label);
  }
  abp.validate();
  return abp;
}

}  // namespace bdc
