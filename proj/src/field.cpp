#include <cctype>
#include <functional>
#include <map>
#include <mutex>

#include "field_internal.hpp"

namespace c2qf {

namespace {

std::mutex& registry_mutex() {
  static std::mutex mu;
  return mu;
}

std::map<std::string, std::unique_ptr<FieldNode>>& registry() {
  static std::map<std::string, std::unique_ptr<FieldNode>> r;
  return r;
}

const FieldNode* intern(FieldNode node) {
  std::lock_guard<std::mutex> lock(registry_mutex());
  auto& r = registry();
  auto it = r.find(node.key);
  if (it != r.end()) return it->second.get();
  auto owned = std::make_unique<FieldNode>(std::move(node));
  const FieldNode* p = owned.get();
  r.emplace(p->key, std::move(owned));
  return p;
}

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

bool reserved(const std::string& s) {
  return s == "w" || s == "O" || s == "H" || s == "pf" || s == "GF";
}

void check_new_variable(const Field& base, const std::string& var) {
  if (!valid_identifier(var) || reserved(var)) {
    fail(ErrorCode::PreconditionViolated, "invalid variable name '" + var + "'");
  }
  for (const auto& v : base.variables()) {
    if (v == var) fail(ErrorCode::PreconditionViolated, "variable '" + var + "' already in tower");
  }
}

std::string hex(std::uint32_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  do {
    s.insert(s.begin(), digits[v & 15]);
    v >>= 4;
  } while (v);
  return s;
}

}  // namespace

// ---------------------------------------------------------------- Field

Field Field::gf2k(int k) {
  FieldNode n;
  n.kind = FieldKind::Finite;
  n.ff = FiniteField::gf2k(k);
  n.key = k == 1 ? "GF(2)" : "GF(2^" + std::to_string(k) + ")";
  n.var = "w";
  n.pinned = true;
  return Field(intern(std::move(n)));
}

Field Field::finite_extension(Field base, FiniteFieldPtr ff, const std::string& var) {
  if (!base.is_finite()) fail(ErrorCode::UnsupportedField, "finite extension of an infinite field");
  if (ff.get() == base.node_->ff.get()) return base;
  FieldNode n;
  n.kind = FieldKind::Finite;
  n.base = base.node_;
  n.var = var;
  std::string key = base.to_string() + "[" + var + "]/(";
  for (std::size_t i = 0; i < ff->ext_modulus().size(); ++i) {
    if (i) key += ",";
    key += hex(ff->ext_modulus()[i]);
  }
  n.key = key + ")";
  n.ff = std::move(ff);
  return Field(intern(std::move(n)));
}

Field Field::rational(Field base, const std::string& var) {
  check_new_variable(base, var);
  FieldNode n;
  n.kind = FieldKind::Rational;
  n.base = base.node_;
  n.var = var;
  n.key = base.to_string() + "(" + var + ")";
  return Field(intern(std::move(n)));
}

Field Field::laurent(Field base, const std::string& var, int precision) {
  check_new_variable(base, var);
  if (precision < 1) fail(ErrorCode::PreconditionViolated, "Laurent precision must be positive");
  FieldNode n;
  n.kind = FieldKind::Laurent;
  n.base = base.node_;
  n.var = var;
  n.precision = precision;
  n.key = base.to_string() + "((" + var + "):" + std::to_string(precision) + ")";
  return Field(intern(std::move(n)));
}

FieldKind Field::kind() const { return node_->kind; }

const FiniteField& Field::ff() const {
  if (node_->kind != FieldKind::Finite) fail(ErrorCode::Internal, "ff() on an infinite field");
  return *node_->ff;
}

const FiniteFieldPtr& Field::ff_ptr() const {
  if (node_->kind != FieldKind::Finite) fail(ErrorCode::Internal, "ff_ptr() on an infinite field");
  return node_->ff;
}

Field Field::base() const { return Field(node_->base); }
const std::string& Field::var() const { return node_->var; }
int Field::precision() const { return node_->precision; }

Field Field::bottom() const {
  const FieldNode* n = node_;
  while (n->kind != FieldKind::Finite) n = n->base;
  return Field(n);
}

int Field::height() const {
  int h = 0;
  for (const FieldNode* n = node_; n->kind != FieldKind::Finite; n = n->base) ++h;
  return h;
}

bool Field::is_rational_tower() const {
  for (const FieldNode* n = node_; n->kind != FieldKind::Finite; n = n->base) {
    if (n->kind == FieldKind::Laurent) return false;
  }
  return true;
}

std::vector<std::string> Field::variables() const {
  std::vector<std::string> out;
  for (const FieldNode* n = node_; n && n->kind != FieldKind::Finite; n = n->base) {
    out.insert(out.begin(), n->var);
  }
  return out;
}

bool Field::contains(Field sub) const {
  for (const FieldNode* n = node_; n; n = n->base) {
    if (n == sub.node_) return true;
  }
  // GF(2) embeds everywhere.
  return sub.node_->kind == FieldKind::Finite && sub.node_->pinned && sub.node_->ff->bits() == 1;
}

std::string Field::to_string() const {
  if (node_->key.find('[') == std::string::npos) return node_->key;
  if (node_->kind == FieldKind::Finite) return node_->ff->describe(node_->var);
  // Tower over a residue field: the base key is a prefix of this key.
  return base().to_string() + node_->key.substr(node_->base->key.size());
}

Element Field::zero() const { return from_int(0); }
Element Field::one() const { return from_int(1); }

Element Field::from_int(long long n) const {
  const std::uint32_t bit = static_cast<std::uint32_t>(n & 1);
  switch (node_->kind) {
    case FieldKind::Finite:
      return ElementAccess::make_finite(node_, bit);
    case FieldKind::Rational: {
      Field b = base();
      Poly num = bit ? Poly::constant(b.one()) : Poly(b);
      return Element::rational(*this, num, Poly::constant(b.one()));
    }
    case FieldKind::Laurent: {
      Field b = base();
      if (!bit) return make_laurent(node_, 0, {}, true, 0);
      return make_laurent(node_, 0, {b.one()}, true, 0);
    }
  }
  fail(ErrorCode::Internal, "unreachable");
}

Element Field::gen() const {
  switch (node_->kind) {
    case FieldKind::Finite:
      return ElementAccess::make_finite(node_, node_->ff->generator());
    case FieldKind::Rational:
      return Element::from_poly(*this, Poly::x(base()));
    case FieldKind::Laurent:
      return make_laurent(node_, 1, {base().one()}, true, 0);
  }
  fail(ErrorCode::Internal, "unreachable");
}

Element Field::variable(const std::string& name) const {
  for (const FieldNode* n = node_; n; n = n->base) {
    if (n->kind == FieldKind::Finite) {
      if (n->pinned ? name == "w" : name == n->var) return Field(n).gen().embed(*this);
      continue;
    }
    if (n->var == name) return Field(n).gen().embed(*this);
  }
  fail(ErrorCode::UnknownVariable, "unknown variable '" + name + "' in " + to_string());
}

Field common_field(Field a, Field b) {
  if (a == b) return a;
  if (a.contains(b)) return a;
  if (b.contains(a)) return b;
  fail(ErrorCode::MixedFields, "elements of " + a.to_string() + " and " + b.to_string());
}

// ---------------------------------------------------------------- Element

Element Element::finite(Field f, std::uint32_t v) {
  if (!f.is_finite()) fail(ErrorCode::WrongField, "finite element in " + f.to_string());
  if (v > f.ff().mask()) fail(ErrorCode::PreconditionViolated, "value out of range for " + f.to_string());
  return ElementAccess::make_finite(f.node(), v);
}

Element Element::rational(Field f, const Poly& num_in, const Poly& den_in) {
  if (!f.is_rational()) fail(ErrorCode::WrongField, "rational element in " + f.to_string());
  Field b = f.base();
  if (den_in.is_zero()) fail(ErrorCode::DivisionByZero, "zero denominator in " + f.to_string());
  auto rep = std::make_shared<detail::RationalRep>();
  if (num_in.is_zero()) {
    rep->num = Poly(b);
    rep->den = Poly::constant(b.one());
  } else if (den_in.degree() == 0) {
    rep->num = den_in.is_one() ? num_in : num_in.scale(inv(den_in.lead()));
    rep->den = Poly::constant(b.one());
  } else {
    Poly g = gcd(num_in, den_in);
    Poly num = g.degree() > 0 ? num_in / g : num_in;
    Poly den = g.degree() > 0 ? den_in / g : den_in;
    if (!den.is_monic()) {
      Element c = inv(den.lead());
      num = num.scale(c);
      den = den.scale(c);
    }
    rep->num = std::move(num);
    rep->den = std::move(den);
  }
  return ElementAccess::make_rep(f.node(), std::move(rep));
}

Element Element::from_poly(Field f, const Poly& num) {
  return rational(f, num, Poly::constant(f.base().one()));
}

Element Element::laurent(Field f, int val, std::vector<Element> coeffs, bool exact, int abs_prec) {
  if (!f.is_laurent()) fail(ErrorCode::WrongField, "Laurent element in " + f.to_string());
  for (auto& c : coeffs) c = c.embed(f.base());
  return make_laurent(f.node(), val, std::move(coeffs), exact, abs_prec);
}

Element Element::laurent_big_o(Field f, int n) {
  if (!f.is_laurent()) fail(ErrorCode::WrongField, "O(...) outside a Laurent field");
  return make_laurent(f.node(), n, {}, false, n);
}

bool Element::is_exact_zero() const {
  switch (f_->kind) {
    case FieldKind::Finite:
      return v_ == 0;
    case FieldKind::Rational:
      return ElementAccess::rat(*this).num.is_zero();
    case FieldKind::Laurent: {
      const auto& l = ElementAccess::lau(*this);
      return l.exact && l.coeffs.empty();
    }
  }
  return false;
}

bool Element::is_zero() const {
  if (f_->kind == FieldKind::Laurent) {
    const auto& l = ElementAccess::lau(*this);
    if (l.coeffs.empty() && !l.exact) {
      fail(ErrorCode::PrecisionExhausted, "zero test on " + to_string());
    }
    return l.coeffs.empty();
  }
  return is_exact_zero();
}

bool Element::is_one() const {
  switch (f_->kind) {
    case FieldKind::Finite:
      return v_ == 1;
    case FieldKind::Rational: {
      const auto& r = ElementAccess::rat(*this);
      return r.den.degree() == 0 && r.num.is_one();
    }
    case FieldKind::Laurent: {
      const auto& l = ElementAccess::lau(*this);
      if (!l.exact) {
        if (l.coeffs.empty() || l.val != 0 || !l.coeffs[0].is_one()) return false;
        for (std::size_t i = 1; i < l.coeffs.size(); ++i) {
          if (!l.coeffs[i].is_zero()) return false;
        }
        fail(ErrorCode::PrecisionExhausted, "unit test on " + to_string());
      }
      return l.val == 0 && l.coeffs.size() == 1 && l.coeffs[0].is_one();
    }
  }
  return false;
}

const Poly& Element::num() const {
  if (f_->kind != FieldKind::Rational) fail(ErrorCode::WrongField, "num() outside a rational field");
  return ElementAccess::rat(*this).num;
}

const Poly& Element::den() const {
  if (f_->kind != FieldKind::Rational) fail(ErrorCode::WrongField, "den() outside a rational field");
  return ElementAccess::rat(*this).den;
}

bool Element::laurent_exact() const { return ElementAccess::lau(*this).exact; }
int Element::laurent_val() const { return ElementAccess::lau(*this).val; }
int Element::laurent_abs_prec() const { return ElementAccess::lau(*this).abs; }
const std::vector<Element>& Element::laurent_coeffs() const { return ElementAccess::lau(*this).coeffs; }

Element Element::embed(Field target) const {
  if (target.node() == f_) return *this;
  const FieldNode* t = target.node();
  if (t->kind == FieldKind::Finite) {
    if (f_->kind == FieldKind::Finite && target.contains(Field(f_))) {
      return ElementAccess::make_finite(t, v_);
    }
    fail(ErrorCode::MixedFields, "cannot embed " + Field(f_).to_string() + " into " + target.to_string());
  }
  if (!target.contains(Field(f_))) {
    fail(ErrorCode::MixedFields, "cannot embed " + Field(f_).to_string() + " into " + target.to_string());
  }
  Element inner = embed(target.base());
  if (t->kind == FieldKind::Rational) {
    return Element::rational(target, Poly::constant(inner), Poly::constant(target.base().one()));
  }
  if (inner.is_exact_zero()) return make_laurent(t, 0, {}, true, 0);
  return make_laurent(t, 0, {inner}, true, 0);
}

bool Element::lies_in(Field sub) const {
  if (sub.node() == f_) return true;
  const FieldNode* n = f_;
  if (n->kind == FieldKind::Finite) {
    if (sub.is_finite() && sub.ff().bits() == 1) return v_ <= 1;
    if (!sub.is_finite() || !Field(n).contains(sub)) return false;
    return v_ <= sub.ff().mask();
  }
  if (!Field(n).contains(sub)) return false;
  if (n->kind == FieldKind::Rational) {
    const auto& r = ElementAccess::rat(*this);
    if (r.den.degree() != 0 || r.num.degree() > 0) return false;
    Element c = r.num.is_zero() ? Field(n).base().zero() : r.num.coeff(0);
    return c.lies_in(sub);
  }
  const auto& l = ElementAccess::lau(*this);
  if (!l.exact) return false;
  if (l.coeffs.empty()) return true;
  if (l.val != 0 || l.coeffs.size() != 1) return false;
  return l.coeffs[0].lies_in(sub);
}

Element Element::restrict_to(Field sub) const {
  if (!lies_in(sub)) fail(ErrorCode::WrongField, to_string() + " does not lie in " + sub.to_string());
  if (sub.node() == f_) return *this;
  if (f_->kind == FieldKind::Finite) return ElementAccess::make_finite(sub.node(), v_);
  if (is_exact_zero()) return sub.zero();
  if (f_->kind == FieldKind::Rational) return ElementAccess::rat(*this).num.coeff(0).restrict_to(sub);
  return ElementAccess::lau(*this).coeffs[0].restrict_to(sub);
}

bool Element::operator==(const Element& o) const {
  if (f_ != o.f_) {
    if (!f_ || !o.f_) return false;
    Field c = common_field(Field(f_), Field(o.f_));
    return embed(c) == o.embed(c);
  }
  switch (f_->kind) {
    case FieldKind::Finite:
      return v_ == o.v_;
    case FieldKind::Rational: {
      const auto& a = ElementAccess::rat(*this);
      const auto& b = ElementAccess::rat(o);
      return a.num == b.num && a.den == b.den;
    }
    case FieldKind::Laurent: {
      const auto& a = ElementAccess::lau(*this);
      const auto& b = ElementAccess::lau(o);
      return a.exact == b.exact && a.val == b.val && a.abs == b.abs && a.coeffs == b.coeffs;
    }
  }
  return false;
}

std::size_t Element::hash() const {
  std::size_t h = std::hash<const void*>()(f_);
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  switch (f_->kind) {
    case FieldKind::Finite:
      mix(v_);
      break;
    case FieldKind::Rational: {
      const auto& r = ElementAccess::rat(*this);
      for (const auto& c : r.num.coeffs()) mix(c.hash());
      mix(0xabcdef);
      for (const auto& c : r.den.coeffs()) mix(c.hash());
      break;
    }
    case FieldKind::Laurent: {
      const auto& l = ElementAccess::lau(*this);
      mix(static_cast<std::size_t>(l.val));
      mix(static_cast<std::size_t>(l.exact ? 1 : l.abs + 7));
      for (const auto& c : l.coeffs) mix(c.hash());
      break;
    }
  }
  return h;
}

namespace {

bool needs_parens_as_factor(const std::string& s) {
  return s.find('+') != std::string::npos || s.find('/') != std::string::npos ||
         s.find('O') != std::string::npos;
}

}  // namespace

std::string Element::to_string() const {
  switch (f_->kind) {
    case FieldKind::Finite:
      if (f_->ff->bits() == 1) return v_ ? "1" : "0";
      return f_->ff->element_string(v_, f_->var);
    case FieldKind::Rational: {
      const auto& r = ElementAccess::rat(*this);
      std::string n = r.num.to_string(f_->var);
      if (r.den.degree() == 0) return n;
      std::string d = r.den.to_string(f_->var);
      if (needs_parens_as_factor(n)) n = "(" + n + ")";
      if (needs_parens_as_factor(d) || d.find('*') != std::string::npos) d = "(" + d + ")";
      return n + "/" + d;
    }
    case FieldKind::Laurent:
      return laurent_to_string(*this);
  }
  return "?";
}

// ------------------------------------------------------------ arithmetic

namespace {

Element rational_add(const Element& a, const Element& b) {
  const auto& x = ElementAccess::rat(a);
  const auto& y = ElementAccess::rat(b);
  Field f = a.field();
  if (x.num.is_zero()) return b;
  if (y.num.is_zero()) return a;
  if (x.den == y.den) {
    if (x.den.degree() == 0) {
      auto rep = std::make_shared<detail::RationalRep>();
      rep->num = x.num + y.num;
      rep->den = x.den;
      return ElementAccess::make_rep(f.node(), std::move(rep));
    }
    return Element::rational(f, x.num + y.num, x.den);
  }
  return Element::rational(f, x.num * y.den + y.num * x.den, x.den * y.den);
}

Element rational_mul(const Element& a, const Element& b) {
  const auto& x = ElementAccess::rat(a);
  const auto& y = ElementAccess::rat(b);
  Field f = a.field();
  if (x.num.is_zero()) return a;
  if (y.num.is_zero()) return b;
  if (x.den.degree() == 0 && y.den.degree() == 0) {
    auto rep = std::make_shared<detail::RationalRep>();
    rep->num = x.num * y.num;
    rep->den = x.den;
    return ElementAccess::make_rep(f.node(), std::move(rep));
  }
  // Cross-cancel before multiplying to keep gcds small.
  Poly g1 = gcd(x.num, y.den);
  Poly g2 = gcd(y.num, x.den);
  Poly n1 = g1.degree() > 0 ? x.num / g1 : x.num;
  Poly d2 = g1.degree() > 0 ? y.den / g1 : y.den;
  Poly n2 = g2.degree() > 0 ? y.num / g2 : y.num;
  Poly d1 = g2.degree() > 0 ? x.den / g2 : x.den;
  Poly num = n1 * n2;
  Poly den = d1 * d2;
  auto rep = std::make_shared<detail::RationalRep>();
  if (!den.is_monic()) {
    Element c = inv(den.lead());
    num = num.scale(c);
    den = den.scale(c);
  }
  rep->num = std::move(num);
  rep->den = std::move(den);
  return ElementAccess::make_rep(f.node(), std::move(rep));
}

Element rational_inv(const Element& a) {
  const auto& x = ElementAccess::rat(a);
  if (x.num.is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero in " + a.field().to_string());
  Poly num = x.den;
  Poly den = x.num;
  Element c = inv(den.lead());
  auto rep = std::make_shared<detail::RationalRep>();
  rep->num = num.scale(c);
  rep->den = den.scale(c);
  return ElementAccess::make_rep(a.field().node(), std::move(rep));
}

void unify(const Element& a, const Element& b, Element& x, Element& y) {
  Field c = common_field(a.field(), b.field());
  x = a.embed(c);
  y = b.embed(c);
}

}  // namespace

Element operator+(const Element& a0, const Element& b0) {
  if (a0.field() != b0.field()) {
    Element a, b;
    unify(a0, b0, a, b);
    return a + b;
  }
  const FieldNode* f = ElementAccess::node(a0);
  switch (f->kind) {
    case FieldKind::Finite:
      return ElementAccess::make_finite(f, a0.ff_value() ^ b0.ff_value());
    case FieldKind::Rational:
      return rational_add(a0, b0);
    case FieldKind::Laurent:
      return laurent_add(a0, b0);
  }
  fail(ErrorCode::Internal, "unreachable");
}

Element operator-(const Element& a, const Element& b) { return a + b; }
Element operator-(const Element& a) { return a; }

Element operator*(const Element& a0, const Element& b0) {
  if (a0.field() != b0.field()) {
    Element a, b;
    unify(a0, b0, a, b);
    return a * b;
  }
  const FieldNode* f = ElementAccess::node(a0);
  switch (f->kind) {
    case FieldKind::Finite:
      return ElementAccess::make_finite(f, f->ff->mul(a0.ff_value(), b0.ff_value()));
    case FieldKind::Rational:
      return rational_mul(a0, b0);
    case FieldKind::Laurent:
      return laurent_mul(a0, b0);
  }
  fail(ErrorCode::Internal, "unreachable");
}

Element inv(const Element& a) {
  const FieldNode* f = ElementAccess::node(a);
  switch (f->kind) {
    case FieldKind::Finite:
      return ElementAccess::make_finite(f, f->ff->inv(a.ff_value()));
    case FieldKind::Rational:
      return rational_inv(a);
    case FieldKind::Laurent:
      return laurent_inv(a);
  }
  fail(ErrorCode::Internal, "unreachable");
}

Element operator/(const Element& a, const Element& b) { return a * inv(b); }

Element& operator+=(Element& a, const Element& b) {
  a = a + b;
  return a;
}

Element& operator*=(Element& a, const Element& b) {
  a = a * b;
  return a;
}

Element square(const Element& a) { return a * a; }

Element pow(const Element& a, long long e) {
  if (e < 0) return pow(inv(a), -e);
  Element r = a.field().one();
  Element base = a;
  while (e) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

bool equal(const Element& a, const Element& b) { return (a + b).is_zero(); }

}  // namespace c2qf
