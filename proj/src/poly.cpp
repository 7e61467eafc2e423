#include "bdc/poly.hpp"

#include <algorithm>
#include <sstream>

#include "bdc/checked_int.hpp"
#include "bdc/error.hpp"

namespace bdc {

std::string VarNaming::name(int index) const {
  if (!is_grid()) return "x" + std::to_string(index);
  int i = (index - 1) / grid_width + 1;
  int j = (index - 1) % grid_width + 1;
  return "x" + std::to_string(i) + "_" + std::to_string(j);
}

namespace {

void trim(Monomial& m) {
  while (!m.empty() && m.back() == 0) m.pop_back();
}

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = static_cast<std::uint16_t>(r[i] + b[i]);
  return r;
}

}  // namespace

MultiPoly MultiPoly::constant(std::int64_t c) {
  MultiPoly p;
  p.add_term({}, c);
  return p;
}

MultiPoly MultiPoly::variable(int index) {
  if (index < 1) throw InputError("variable index must be >= 1");
  Monomial m(static_cast<std::size_t>(index), 0);
  m.back() = 1;
  MultiPoly p;
  p.terms_.emplace(std::move(m), 1);
  return p;
}

std::int64_t MultiPoly::coefficient(const Monomial& m) const {
  Monomial key = m;
  trim(key);
  auto it = terms_.find(key);
  return it == terms_.end() ? 0 : it->second;
}

int MultiPoly::max_variable() const noexcept {
  std::size_t v = 0;
  for (const auto& [m, c] : terms_) v = std::max(v, m.size());
  return static_cast<int>(v);
}

int MultiPoly::total_degree() const noexcept {
  int d = is_zero() ? -1 : 0;
  for (const auto& [m, c] : terms_) {
    int s = 0;
    for (auto e : m) s += e;
    d = std::max(d, s);
  }
  return d;
}

void MultiPoly::add_term(Monomial m, std::int64_t c) {
  if (c == 0) return;
  trim(m);
  auto [it, inserted] = terms_.try_emplace(std::move(m), c);
  if (!inserted) {
    it->second = checked_add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, checked_sub(0, c));
  return *this;
}

MultiPoly MultiPoly::operator-() const { return scaled(-1); }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly r;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) r.add_term(multiply(ma, mb), checked_mul(ca, cb));
  }
  return r;
}

MultiPoly MultiPoly::scaled(std::int64_t c) const {
  MultiPoly r;
  if (c == 0) return r;
  for (const auto& [m, coef] : terms_) r.terms_.emplace(m, checked_mul(coef, c));
  return r;
}

std::int64_t MultiPoly::eval(std::span<const std::int64_t> point) const {
  if (static_cast<std::size_t>(max_variable()) > point.size()) {
    throw DimensionError("evaluation point has " + std::to_string(point.size()) +
                         " values, polynomial uses x" + std::to_string(max_variable()));
  }
  std::int64_t total = 0;
  for (const auto& [m, c] : terms_) {
    std::int64_t t = c;
    for (std::size_t v = 0; v < m.size(); ++v) {
      for (int e = 0; e < m[v]; ++e) t = checked_mul(t, point[v]);
    }
    total = checked_add(total, t);
  }
  return total;
}

FieldElement MultiPoly::eval_mod(std::span<const FieldElement> point,
                                 const PrimeField& field) const {
  if (static_cast<std::size_t>(max_variable()) > point.size()) {
    throw DimensionError("evaluation point too short for polynomial");
  }
  FieldElement total = field.zero();
  for (const auto& [m, c] : terms_) {
    FieldElement t = field.from_int(c);
    for (std::size_t v = 0; v < m.size(); ++v) {
      if (m[v]) t = field.mul(t, field.pow(point[v], m[v]));
    }
    total = field.add(total, t);
  }
  return total;
}

std::string MultiPoly::to_string(const VarNaming& naming) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::int64_t mag = c < 0 ? -c : c;
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (mag != 1 || m.empty()) {
      out << mag;
      wrote = true;
    }
    for (std::size_t v = 0; v < m.size(); ++v) {
      if (m[v] == 0) continue;
      if (wrote) out << "*";
      out << naming.name(static_cast<int>(v) + 1);
      if (m[v] > 1) out << "^" << m[v];
      wrote = true;
    }
  }
  return out.str();
}

UniPoly::UniPoly(std::vector<std::int64_t> coefficients) : coeffs_(std::move(coefficients)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::int64_t UniPoly::eval(std::int64_t y) const {
  std::int64_t r = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    r = checked_add(checked_mul(r, y), *it);
  }
  return r;
}

FieldElement UniPoly::eval_mod(FieldElement y, const PrimeField& field) const {
  FieldElement r = field.zero();
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    r = field.add(field.mul(r, y), field.from_int(*it));
  }
  return r;
}

std::string UniPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int d = degree(); d >= 0; --d) {
    std::int64_t c = coeffs_[static_cast<std::size_t>(d)];
    if (c == 0) continue;
    std::int64_t mag = c < 0 ? -c : c;
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (d == 0 || mag != 1) out << mag;
    if (d > 0) {
      if (mag != 1) out << "*";
      out << "y";
      if (d > 1) out << "^" << d;
    }
  }
  return out.str();
}

}  // namespace bdc
