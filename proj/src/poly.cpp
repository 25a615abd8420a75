#include <utility>

#include "c2qf/field.hpp"

namespace c2qf {

Poly::Poly(Field k, std::vector<Element> coeffs) : k_(k), c_(std::move(coeffs)) {
  for (auto& c : c_) {
    if (c.field() != k_) c = c.embed(k_);
  }
  trim();
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::constant(const Element& c) {
  Poly p(c.field());
  if (!c.is_zero()) p.c_.push_back(c);
  return p;
}

Poly Poly::monomial(const Element& c, int degree) {
  Poly p(c.field());
  if (c.is_zero()) return p;
  p.c_.assign(static_cast<std::size_t>(degree) + 1, c.field().zero());
  p.c_.back() = c;
  return p;
}

Poly Poly::x(Field k) { return monomial(k.one(), 1); }

bool Poly::is_one() const { return c_.size() == 1 && c_[0].is_one(); }
bool Poly::is_monic() const { return !c_.empty() && c_.back().is_one(); }

Element Poly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return k_.zero();
  return c_[static_cast<std::size_t>(i)];
}

const Element& Poly::lead() const {
  if (c_.empty()) fail(ErrorCode::ZeroPolynomial, "leading coefficient of zero polynomial");
  return c_.back();
}

Poly Poly::operator+(const Poly& o) const {
  if (o.c_.empty()) return *this;
  if (c_.empty()) return o;
  Poly r(k_);
  const std::size_t n = std::max(c_.size(), o.c_.size());
  r.c_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i < c_.size() && i < o.c_.size()) r.c_.push_back(c_[i] + o.c_[i]);
    else r.c_.push_back(i < c_.size() ? c_[i] : o.c_[i]);
  }
  r.trim();
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  if (c_.empty() || o.c_.empty()) return Poly(k_);
  Poly r(k_);
  r.c_.assign(c_.size() + o.c_.size() - 1, k_.zero());
  if (k_.is_finite()) {
    const FiniteField& F = k_.ff();
    std::vector<std::uint32_t> acc(r.c_.size(), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      const std::uint32_t a = c_[i].ff_value();
      if (!a) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) acc[i + j] ^= F.mul(a, o.c_[j].ff_value());
    }
    for (std::size_t i = 0; i < acc.size(); ++i) r.c_[i] = Element::finite(k_, acc[i]);
  } else {
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
    }
  }
  r.trim();
  return r;
}

Poly Poly::scale(const Element& c) const {
  if (c.is_zero()) return Poly(k_);
  if (c.is_one()) return *this;
  Poly r(k_);
  r.c_.reserve(c_.size());
  for (const auto& a : c_) r.c_.push_back(a * c);
  r.trim();
  return r;
}

Poly Poly::shift(int k) const {
  if (c_.empty() || k == 0) return *this;
  Poly r(k_);
  r.c_.assign(static_cast<std::size_t>(k), k_.zero());
  r.c_.insert(r.c_.end(), c_.begin(), c_.end());
  return r;
}

Poly Poly::pow(int e) const {
  Poly r = constant(k_.one());
  Poly b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

Poly Poly::monic() const {
  if (c_.empty() || is_monic()) return *this;
  return scale(inv(lead()));
}

Poly Poly::derivative() const {
  Poly r(k_);
  for (std::size_t i = 1; i < c_.size(); ++i) r.c_.push_back((i & 1) ? c_[i] : k_.zero());
  r.trim();
  return r;
}

Element Poly::eval(const Element& x) const {
  Field f = common_field(k_, x.field());
  Element r = f.zero();
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

Poly Poly::compose(const Poly& inner) const {
  Poly r(inner.k_);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * inner + constant(it->embed(inner.k_));
  return r;
}

void Poly::divmod(const Poly& d, Poly& q, Poly& r) const {
  if (d.is_zero()) fail(ErrorCode::DivisionByZero, "polynomial division by zero");
  q = Poly(k_);
  r = *this;
  const int dd = d.degree();
  if (r.degree() < dd) return;
  q.c_.assign(static_cast<std::size_t>(r.degree() - dd + 1), k_.zero());
  const Element li = inv(d.lead());
  if (k_.is_finite()) {
    const FiniteField& F = k_.ff();
    std::vector<std::uint32_t> rv(r.c_.size()), dv(d.c_.size());
    for (std::size_t i = 0; i < rv.size(); ++i) rv[i] = r.c_[i].ff_value();
    for (std::size_t i = 0; i < dv.size(); ++i) dv[i] = d.c_[i].ff_value();
    const std::uint32_t l = li.ff_value();
    for (int i = static_cast<int>(rv.size()) - 1; i >= dd; --i) {
      const std::uint32_t c = rv[static_cast<std::size_t>(i)];
      if (!c) continue;
      const std::uint32_t m = F.mul(c, l);
      q.c_[static_cast<std::size_t>(i - dd)] = Element::finite(k_, m);
      for (int j = 0; j <= dd; ++j) rv[static_cast<std::size_t>(i - dd + j)] ^= F.mul(m, dv[static_cast<std::size_t>(j)]);
    }
    rv.resize(static_cast<std::size_t>(dd));
    r.c_.clear();
    for (auto v : rv) r.c_.push_back(Element::finite(k_, v));
    r.trim();
    q.trim();
    return;
  }
  for (int i = r.degree(); i >= dd; --i) {
    if (i >= static_cast<int>(r.c_.size())) continue;
    const Element c = r.c_[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    const Element m = c * li;
    q.c_[static_cast<std::size_t>(i - dd)] = m;
    for (int j = 0; j <= dd; ++j) {
      auto& t = r.c_[static_cast<std::size_t>(i - dd + j)];
      t = t + m * d.c_[static_cast<std::size_t>(j)];
    }
  }
  r.c_.resize(static_cast<std::size_t>(dd));
  r.trim();
  q.trim();
}

Poly Poly::operator/(const Poly& d) const {
  Poly q, r;
  divmod(d, q, r);
  return q;
}

Poly Poly::operator%(const Poly& d) const {
  Poly q, r;
  divmod(d, q, r);
  return r;
}

bool Poly::divisible_by(const Poly& d) const { return (*this % d).is_zero(); }

bool Poly::operator==(const Poly& o) const {
  if (c_.size() != o.c_.size()) return false;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!(c_[i] == o.c_[i])) return false;
  }
  return true;
}

std::string Poly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const Element& c = c_[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    if (!out.empty()) out += "+";
    std::string cs = c.to_string();
    if (i == 0) {
      out += cs;
      continue;
    }
    if (!c.is_one()) {
      const bool paren = cs.find('+') != std::string::npos || cs.find('/') != std::string::npos;
      out += (paren ? "(" + cs + ")" : cs) + "*";
    }
    out += var;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

Poly gcd(const Poly& a0, const Poly& b0) {
  Poly a = a0, b = b0;
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Poly xgcd(const Poly& a0, const Poly& b0, Poly& s, Poly& t) {
  Field k = a0.coeff_field();
  Poly r0 = a0, r1 = b0;
  Poly s0 = Poly::constant(k.one()), s1(k);
  Poly t0(k), t1 = Poly::constant(k.one());
  while (!r1.is_zero()) {
    Poly q, r;
    r0.divmod(r1, q, r);
    Poly s2 = s0 + q * s1;
    Poly t2 = t0 + q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) {
    s = s0;
    t = t0;
    return r0;
  }
  const Element c = inv(r0.lead());
  s = s0.scale(c);
  t = t0.scale(c);
  return r0.scale(c);
}

}  // namespace c2qf
