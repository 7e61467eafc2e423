#include "bdc/matrix.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <sstream>

#include "bdc/checked_int.hpp"
#include "bdc/error.hpp"

namespace bdc {

// ---------------------------------------------------------------- Entry

Entry Entry::var(int index) {
  if (index < 1) throw InputError("variable index must be >= 1");
  return Entry(Kind::kVar, index);
}

std::string Entry::to_string(const VarNaming& naming) const {
  switch (kind_) {
    case Kind::kZero:
      return "0";
    case Kind::kOne:
      return "1";
    case Kind::kVar:
      return naming.name(var_index());
    case Kind::kInt:
      return std::to_string(value_);
  }
  return "?";
}

// ---------------------------------------------------------- PositionSet

PositionSet::PositionSet(std::vector<Position> positions) : positions_(std::move(positions)) {
  for (const auto& p : positions_) {
    if (p.row < 0 || p.col < 0) throw InputError("negative matrix position");
  }
  std::sort(positions_.begin(), positions_.end());
  if (std::adjacent_find(positions_.begin(), positions_.end()) != positions_.end()) {
    throw InputError("duplicate position in position set");
  }
}

PositionSet PositionSet::from_mask(std::uint64_t mask, int n) {
  if (n < 1 || n > 8) throw SizeLimitError("position masks need 1 <= n <= 8");
  std::vector<Position> ps;
  while (mask) {
    int bit = __builtin_ctzll(mask);
    mask &= mask - 1;
    if (bit >= n * n) throw InputError("position mask has bits outside an n x n matrix");
    ps.push_back({bit / n, bit % n});
  }
  return PositionSet(std::move(ps));
}

std::uint64_t PositionSet::to_mask(int n) const {
  if (n < 1 || n > 8) throw SizeLimitError("position masks need 1 <= n <= 8");
  std::uint64_t m = 0;
  for (const auto& p : positions_) {
    if (p.row >= n || p.col >= n) throw InputError("position outside matrix");
    m |= std::uint64_t{1} << (p.row * n + p.col);
  }
  return m;
}

bool PositionSet::contains(Position p) const {
  return std::binary_search(positions_.begin(), positions_.end(), p);
}

std::string PositionSet::to_string() const {
  std::ostringstream out;
  out << "{";
  for (std::size_t k = 0; k < positions_.size(); ++k) {
    if (k) out << ",";
    out << "(" << positions_[k].row + 1 << "," << positions_[k].col + 1 << ")";
  }
  out << "}";
  return out.str();
}

CandidateAssignment::CandidateAssignment(std::vector<PositionSet> sets) : sets_(std::move(sets)) {
  std::vector<Position> all;
  for (const auto& s : sets_) all.insert(all.end(), s.begin(), s.end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
    throw InputError("candidate assignment sets are not pairwise disjoint");
  }
}

// -------------------------------------------------------- SupportMatrix

SupportMatrix::SupportMatrix(int n) : n_(n), rows_(static_cast<std::size_t>(n), 0) {
  if (n < 0 || n > 64) throw SizeLimitError("support matrices need 0 <= n <= 64");
}

SupportMatrix SupportMatrix::from_rows(int n, std::vector<std::uint64_t> rows) {
  SupportMatrix b(n);
  if (rows.size() != static_cast<std::size_t>(n)) throw DimensionError("expected n rows");
  const std::uint64_t limit = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  for (auto r : rows) {
    if (r & ~limit) throw InputError("row word has bits beyond column n");
  }
  b.rows_ = std::move(rows);
  return b;
}

SupportMatrix SupportMatrix::from_int_matrix(const IntMatrix& m) {
  SupportMatrix b(m.size());
  for (int i = 0; i < m.size(); ++i) {
    for (int j = 0; j < m.size(); ++j) {
      if (m(i, j) != 0 && m(i, j) != 1) throw InputError("support matrix entries must be 0 or 1");
      b.set(i, j, m(i, j) == 1);
    }
  }
  return b;
}

SupportMatrix SupportMatrix::from_bitstring(std::string_view bits) {
  int n = 0;
  while (static_cast<std::size_t>(n * n) < bits.size()) ++n;
  if (static_cast<std::size_t>(n * n) != bits.size()) {
    throw ParseError("bitstring length " + std::to_string(bits.size()) + " is not a square");
  }
  SupportMatrix b(n);
  for (int k = 0; k < n * n; ++k) {
    char c = bits[static_cast<std::size_t>(k)];
    if (c != '0' && c != '1') throw ParseError("bitstring may only contain 0 and 1");
    b.set(k / n, k % n, c == '1');
  }
  return b;
}

void SupportMatrix::set(int i, int j, bool v) {
  std::uint64_t bit = std::uint64_t{1} << (n_ - 1 - j);
  auto& r = rows_[static_cast<std::size_t>(i)];
  r = v ? (r | bit) : (r & ~bit);
}

std::uint64_t SupportMatrix::column(int j) const noexcept {
  std::uint64_t c = 0;
  for (int i = 0; i < n_; ++i) c = (c << 1) | (at(i, j) ? 1u : 0u);
  return c;
}

int SupportMatrix::ones() const noexcept {
  int s = 0;
  for (auto r : rows_) s += __builtin_popcountll(r);
  return s;
}

std::uint64_t SupportMatrix::position_mask() const {
  if (n_ > 8) throw SizeLimitError("position masks need n <= 8");
  std::uint64_t m = 0;
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      if (at(i, j)) m |= std::uint64_t{1} << (i * n_ + j);
    }
  }
  return m;
}

SupportMatrix SupportMatrix::transposed() const {
  SupportMatrix t(n_);
  for (int j = 0; j < n_; ++j) t.rows_[static_cast<std::size_t>(j)] = column(j);
  return t;
}

IntMatrix SupportMatrix::to_int_matrix() const {
  IntMatrix m(n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) m(i, j) = at(i, j) ? 1 : 0;
  }
  return m;
}

std::string SupportMatrix::to_bitstring() const {
  std::string s;
  s.reserve(static_cast<std::size_t>(n_ * n_));
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) s.push_back(at(i, j) ? '1' : '0');
  }
  return s;
}

// ------------------------------------------------------------ VarMatrix

VarMatrix::VarMatrix(int n, Flavor flavor, VarNaming naming)
    : n_(n),
      flavor_(flavor),
      naming_(naming),
      var_count_(naming.is_grid() ? naming.grid_width * naming.grid_width : 0),
      entries_(n) {}

void VarMatrix::set(int i, int j, Entry e) {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) throw DimensionError("entry index out of range");
  if (e.is_int() && flavor_ == Flavor::kBinary) {
    throw InputError("integer constant " + std::to_string(e.constant()) +
                     " not allowed in a binary variable matrix");
  }
  if (e.is_var()) {
    if (naming_.is_grid() && e.var_index() > var_count_) {
      throw InputError("variable index " + std::to_string(e.var_index()) +
                       " exceeds grid width " + std::to_string(naming_.grid_width));
    }
    var_count_ = std::max(var_count_, e.var_index());
  }
  entries_(i, j) = e;
}

void VarMatrix::declare_variables(int count) {
  if (naming_.is_grid() && count > var_count_) {
    throw InputError("cannot declare more variables than the grid holds");
  }
  var_count_ = std::max(var_count_, count);
}

VarMatrix VarMatrix::with_naming(VarNaming naming) const {
  VarMatrix r(n_, flavor_, naming);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      Entry e = entries_(i, j);
      if (e.is_var() && naming_.is_grid() && naming.is_grid()) {
        int row = (e.var_index() - 1) / naming_.grid_width;
        int col = (e.var_index() - 1) % naming_.grid_width;
        if (row >= naming.grid_width || col >= naming.grid_width) {
          throw InputError("variable " + naming_.name(e.var_index()) + " does not fit grid width " +
                           std::to_string(naming.grid_width));
        }
        e = Entry::var(row * naming.grid_width + col + 1);
      }
      r.set(i, j, e);
    }
  }
  if (!naming.is_grid()) r.declare_variables(var_count_);
  return r;
}

CandidateAssignment VarMatrix::variable_positions() const {
  std::vector<std::vector<Position>> sets(static_cast<std::size_t>(var_count_));
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      const Entry& e = entries_(i, j);
      if (e.is_var()) sets[static_cast<std::size_t>(e.var_index() - 1)].push_back({i, j});
    }
  }
  std::vector<PositionSet> out;
  out.reserve(sets.size());
  for (auto& s : sets) out.emplace_back(std::move(s));
  return CandidateAssignment(std::move(out));
}

bool VarMatrix::has_variables() const {
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      if (entries_(i, j).is_var()) return true;
    }
  }
  return false;
}

IntMatrix VarMatrix::to_int_matrix() const {
  IntMatrix m(n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      const Entry& e = entries_(i, j);
      if (e.is_var()) throw InputError("matrix contains variables; expected constants only");
      m(i, j) = e.constant();
    }
  }
  return m;
}

VarMatrix VarMatrix::from_int_matrix(const IntMatrix& m) {
  bool binary = true;
  for (int i = 0; i < m.size(); ++i) {
    for (int j = 0; j < m.size(); ++j) binary = binary && (m(i, j) == 0 || m(i, j) == 1);
  }
  VarMatrix a(m.size(), binary ? Flavor::kBinary : Flavor::kInteger);
  for (int i = 0; i < m.size(); ++i) {
    for (int j = 0; j < m.size(); ++j) a.set(i, j, Entry::integer(m(i, j)));
  }
  return a;
}

// -------------------------------------------------------------- LinExpr

LinExpr LinExpr::from_entry(const Entry& e) {
  LinExpr l;
  if (e.is_var()) {
    l.coeffs_[e.var_index()] = 1;
  } else {
    l.constant_ = e.constant();
  }
  return l;
}

LinExpr& LinExpr::add_scaled(const LinExpr& o, std::int64_t factor) {
  if (factor == 0) return *this;
  constant_ = checked_add(constant_, checked_mul(o.constant_, factor));
  for (const auto& [v, c] : o.coeffs_) {
    std::int64_t& slot = coeffs_[v];
    slot = checked_add(slot, checked_mul(c, factor));
    if (slot == 0) coeffs_.erase(v);
  }
  return *this;
}

bool LinExpr::equals(const Entry& e) const { return *this == from_entry(e); }

std::string LinExpr::to_string(const VarNaming& naming) const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [v, c] : coeffs_) {
    if (!first) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << "-";
    std::int64_t mag = c < 0 ? -c : c;
    if (mag != 1) out << mag << "*";
    out << naming.name(v);
    first = false;
  }
  if (first) return std::to_string(constant_);
  if (constant_ != 0) out << (constant_ < 0 ? " - " : " + ") << (constant_ < 0 ? -constant_ : constant_);
  return out.str();
}

bool LinExprMatrix::equals(const VarMatrix& a) const {
  if (a.size() != size()) return false;
  for (int i = 0; i < size(); ++i) {
    for (int j = 0; j < size(); ++j) {
      if (!entries_(i, j).equals(a(i, j))) return false;
    }
  }
  return true;
}

VarMatrix LinExprMatrix::to_var_matrix(VarNaming naming) const {
  bool binary = true;
  for (int i = 0; i < size(); ++i) {
    for (int j = 0; j < size(); ++j) {
      const LinExpr& l = entries_(i, j);
      if (l.coefficients().empty()) binary = binary && (l.constant() == 0 || l.constant() == 1);
    }
  }
  VarMatrix a(size(), binary ? Flavor::kBinary : Flavor::kInteger, naming);
  for (int i = 0; i < size(); ++i) {
    for (int j = 0; j < size(); ++j) {
      const LinExpr& l = entries_(i, j);
      if (l.coefficients().empty()) {
        a.set(i, j, Entry::integer(l.constant()));
      } else if (l.coefficients().size() == 1 && l.constant() == 0 &&
                 l.coefficients().begin()->second == 1) {
        a.set(i, j, Entry::var(l.coefficients().begin()->first));
      } else {
        throw InputError("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                         ") = " + l.to_string(naming) + " is not a single matrix entry");
      }
    }
  }
  return a;
}

// -------------------------------------------------------------- parsing

namespace {

struct Token {
  std::string_view text;
  int line;
  int column;
};

std::vector<std::vector<Token>> tokenize(std::string_view text) {
  std::vector<std::vector<Token>> lines;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    std::vector<Token> toks;
    std::size_t k = 0;
    while (k < line.size()) {
      while (k < line.size() && (line[k] == ' ' || line[k] == '\t' || line[k] == '\r')) ++k;
      std::size_t start = k;
      while (k < line.size() && line[k] != ' ' && line[k] != '\t' && line[k] != '\r') ++k;
      if (k > start) toks.push_back({line.substr(start, k - start), line_no, static_cast<int>(start) + 1});
    }
    if (!toks.empty()) lines.push_back(std::move(toks));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

std::optional<std::int64_t> parse_int(std::string_view s) {
  std::int64_t v = 0;
  std::string_view body = s;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  if (body.empty()) return std::nullopt;
  auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
  if (ec != std::errc() || ptr != body.data() + body.size()) return std::nullopt;
  return v;
}

std::optional<int> parse_index(std::string_view s) {
  if (s.empty() || s.size() > 6) return std::nullopt;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
  }
  int v = 0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  if (v < 1) return std::nullopt;
  return v;
}

// A parsed cell before grid widths are known.
struct RawCell {
  Entry constant;
  int seq = 0;       // x<k>
  int gi = 0, gj = 0;  // x<i>_<j>
};

}  // namespace

std::optional<VarToken> parse_var_token(std::string_view token) {
  if (token.size() < 2 || token.front() != 'x') return std::nullopt;
  std::string_view body = token.substr(1);
  auto us = body.find('_');
  VarToken t;
  if (us == std::string_view::npos) {
    auto k = parse_index(body);
    if (!k) return std::nullopt;
    t.seq = *k;
    return t;
  }
  auto i = parse_index(body.substr(0, us));
  auto j = parse_index(body.substr(us + 1));
  if (!i || !j) return std::nullopt;
  t.row = *i;
  t.col = *j;
  return t;
}

VarMatrix parse_matrix(std::string_view text) { return parse_matrix(text, 0); }

VarMatrix parse_matrix(std::string_view text, int grid_width) {
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError("empty matrix text");
  const auto& header = lines.front();
  auto n_opt = parse_int(header[0].text);
  if (!n_opt || *n_opt < 1 || *n_opt > 4096) {
    throw ParseError("expected matrix size as first token", header[0].line, header[0].column);
  }
  const int n = static_cast<int>(*n_opt);
  Flavor flavor = Flavor::kBinary;
  if (header.size() >= 2) {
    if (header[1].text == "binary") {
      flavor = Flavor::kBinary;
    } else if (header[1].text == "integer") {
      flavor = Flavor::kInteger;
    } else {
      throw ParseError("unknown flavor '" + std::string(header[1].text) + "'", header[1].line,
                       header[1].column);
    }
  }
  if (header.size() > 2) throw ParseError("unexpected token in header", header[2].line, header[2].column);
  if (lines.size() != static_cast<std::size_t>(n) + 1) {
    throw ParseError("expected " + std::to_string(n) + " matrix rows, found " +
                     std::to_string(lines.size() - 1));
  }

  std::vector<RawCell> cells;
  cells.reserve(static_cast<std::size_t>(n * n));
  bool any_seq = false, any_grid = false;
  int max_grid = 0;
  for (int i = 0; i < n; ++i) {
    const auto& row = lines[static_cast<std::size_t>(i) + 1];
    if (row.size() != static_cast<std::size_t>(n)) {
      throw ParseError("row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(n),
                       row.front().line, row.front().column);
    }
    for (const auto& tok : row) {
      RawCell cell;
      if (tok.text.front() == 'x') {
        auto var = parse_var_token(tok.text);
        if (!var) throw ParseError("bad variable token '" + std::string(tok.text) + "'", tok.line, tok.column);
        if (var->seq) {
          cell.seq = var->seq;
          any_seq = true;
        } else {
          cell.gi = var->row;
          cell.gj = var->col;
          max_grid = std::max({max_grid, var->row, var->col});
          any_grid = true;
        }
      } else {
        auto v = parse_int(tok.text);
        if (!v) throw ParseError("unknown token '" + std::string(tok.text) + "'", tok.line, tok.column);
        if (flavor == Flavor::kBinary && *v != 0 && *v != 1) {
          throw ParseError("integer entry " + std::string(tok.text) + " in a binary matrix", tok.line,
                           tok.column);
        }
        cell.constant = Entry::integer(*v);
      }
      cells.push_back(cell);
    }
  }
  if (any_seq && any_grid) throw ParseError("mixed x<k> and x<i>_<j> variable names");
  if (grid_width > 0 && any_seq) throw ParseError("grid width given but variables use x<k> names");
  if (grid_width > 0 && max_grid > grid_width) {
    throw ParseError("variable index exceeds requested grid width " + std::to_string(grid_width));
  }
  VarNaming naming;
  if (any_grid || grid_width > 0) naming.grid_width = grid_width > 0 ? grid_width : max_grid;

  VarMatrix a(n, flavor, naming);
  for (int k = 0; k < n * n; ++k) {
    const RawCell& c = cells[static_cast<std::size_t>(k)];
    Entry e = c.constant;
    if (c.seq) e = Entry::var(c.seq);
    if (c.gi) e = Entry::var((c.gi - 1) * naming.grid_width + c.gj);
    a.set(k / n, k % n, e);
  }
  return a;
}

std::string serialize_matrix(const VarMatrix& a) {
  std::string out = std::to_string(a.size()) + (a.flavor() == Flavor::kBinary ? " binary\n" : " integer\n");
  for (int i = 0; i < a.size(); ++i) {
    for (int j = 0; j < a.size(); ++j) {
      if (j) out += ' ';
      out += a(i, j).to_string(a.naming());
    }
    out += '\n';
  }
  return out;
}

// ----------------------------------------------------------- operations

SupportMatrix support(const VarMatrix& a) {
  if (a.flavor() != Flavor::kBinary) throw InputError("support is only defined for binary variable matrices");
  SupportMatrix b(a.size());
  for (int i = 0; i < a.size(); ++i) {
    for (int j = 0; j < a.size(); ++j) b.set(i, j, !a(i, j).is_zero());
  }
  return b;
}

VarMatrix place_variables(const SupportMatrix& b, const CandidateAssignment& assignment, VarNaming naming) {
  VarMatrix a(b.size(), Flavor::kBinary, naming);
  for (int i = 0; i < b.size(); ++i) {
    for (int j = 0; j < b.size(); ++j) a.set(i, j, b.at(i, j) ? Entry::one() : Entry::zero());
  }
  for (std::size_t k = 0; k < assignment.variable_count(); ++k) {
    for (const Position& p : assignment.sets()[k]) {
      if (p.row >= b.size() || p.col >= b.size()) throw InputError("position outside support matrix");
      if (!b.at(p.row, p.col)) {
        throw InputError("cannot place x" + std::to_string(k + 1) + " on a zero entry at (" +
                         std::to_string(p.row + 1) + "," + std::to_string(p.col + 1) + ")");
      }
      a.set(p.row, p.col, Entry::var(static_cast<int>(k) + 1));
    }
  }
  a.declare_variables(static_cast<int>(assignment.variable_count()));
  return a;
}

IntMatrix substitute(const VarMatrix& a, std::span<const std::int64_t> point) {
  if (point.size() != static_cast<std::size_t>(a.var_count())) {
    throw DimensionError("point has " + std::to_string(point.size()) + " values, matrix declares " +
                         std::to_string(a.var_count()) + " variables");
  }
  IntMatrix m(a.size());
  for (int i = 0; i < a.size(); ++i) {
    for (int j = 0; j < a.size(); ++j) {
      const Entry& e = a(i, j);
      m(i, j) = e.is_var() ? point[static_cast<std::size_t>(e.var_index() - 1)] : e.constant();
    }
  }
  return m;
}

FieldMatrix substitute_mod(const VarMatrix& a, std::span<const FieldElement> point, const PrimeField& field) {
  if (point.size() != static_cast<std::size_t>(a.var_count())) {
    throw DimensionError("point has " + std::to_string(point.size()) + " values, matrix declares " +
                         std::to_string(a.var_count()) + " variables");
  }
  FieldMatrix m(a.size());
  for (int i = 0; i < a.size(); ++i) {
    for (int j = 0; j < a.size(); ++j) {
      const Entry& e = a(i, j);
      m(i, j) = e.is_var() ? point[static_cast<std::size_t>(e.var_index() - 1)] : field.from_int(e.constant());
    }
  }
  return m;
}

void check_permutation(std::span<const int> perm, int n) {
  if (perm.size() != static_cast<std::size_t>(n)) throw InputError("permutation has wrong length");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int v : perm) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) throw InputError("not a permutation");
    seen[static_cast<std::size_t>(v)] = true;
  }
}

SupportMatrix apply_equivalence(const SupportMatrix& b, std::span<const int> row_perm,
                                std::span<const int> col_perm, bool transpose) {
  const int n = b.size();
  check_permutation(row_perm, n);
  check_permutation(col_perm, n);
  const SupportMatrix src = transpose ? b.transposed() : b;
  SupportMatrix r(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      r.set(i, j, src.at(row_perm[static_cast<std::size_t>(i)], col_perm[static_cast<std::size_t>(j)]));
    }
  }
  return r;
}

LinExprMatrix gl_sandwich(const IntMatrix& g, const VarMatrix& a, const IntMatrix& h) {
  const int n = a.size();
  if (g.size() != n || h.size() != n) throw DimensionError("g, A, h must have equal sizes");
  // (gA)_{il} = sum_k g_ik A_kl, then (gAh)_{ij} = sum_l (gA)_il h_lj.
  SquareMatrix<LinExpr> ga(n);
  for (int i = 0; i < n; ++i) {
    for (int l = 0; l < n; ++l) {
      for (int k = 0; k < n; ++k) ga(i, l).add_scaled(LinExpr::from_entry(a(k, l)), g(i, k));
    }
  }
  LinExprMatrix r(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < n; ++l) r(i, j).add_scaled(ga(i, l), h(l, j));
    }
  }
  return r;
}

VarMatrix permute_target_variables(const VarMatrix& a, std::span<const int> sigma, std::span<const int> tau,
                                   bool transpose) {
  if (a.var_count() != 9) {
    throw InputError("target-variable action needs exactly 9 variables, matrix declares " +
                     std::to_string(a.var_count()));
  }
  check_permutation(sigma, 3);
  check_permutation(tau, 3);
  VarMatrix r(a.size(), a.flavor(), a.naming());
  for (int i = 0; i < a.size(); ++i) {
    for (int j = 0; j < a.size(); ++j) {
      Entry e = a(i, j);
      if (e.is_var()) {
        int row = sigma[static_cast<std::size_t>((e.var_index() - 1) / 3)];
        int col = tau[static_cast<std::size_t>((e.var_index() - 1) % 3)];
        if (transpose) std::swap(row, col);
        e = Entry::var(row * 3 + col + 1);
      }
      r.set(i, j, e);
    }
  }
  r.declare_variables(9);
  return r;
}

}  // namespace bdc
