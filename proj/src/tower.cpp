#include "c2qf/tower.hpp"

#include <algorithm>
#include <functional>
#include <mutex>

#include "field_internal.hpp"

namespace c2qf {

// ------------------------------------------------------------ square classes

namespace {

SquareMonomial top_bit(Field f) { return SquareMonomial{1} << (f.height() - 1); }

}  // namespace

TwoBasisTable two_basis_decompose(const Element& x) {
  Field f = x.field();
  TwoBasisTable out;
  if (f.is_finite()) {
    if (!x.is_zero()) out.emplace(0, Element::finite(f, f.ff().sqrt(x.ff_value())));
    return out;
  }
  if (!f.is_rational_tower()) {
    fail(ErrorCode::UnsupportedField, "2-basis decomposition over " + f.to_string());
  }
  if (x.is_zero()) return out;
  const Field b = f.base();
  const SquareMonomial tb = top_bit(f);
  const Poly& q = x.den();
  const Poly r = x.num() * q;
  std::map<SquareMonomial, std::vector<Element>> acc;
  for (int j = 0; j <= r.degree(); ++j) {
    const Element rj = r.coeff(j);
    if (rj.is_zero()) continue;
    for (const auto& [m, c] : two_basis_decompose(rj)) {
      const SquareMonomial key = m | ((j & 1) ? tb : 0);
      auto& v = acc[key];
      const std::size_t idx = static_cast<std::size_t>(j / 2);
      if (v.size() <= idx) v.resize(idx + 1, b.zero());
      v[idx] = v[idx] + c;
    }
  }
  for (auto& [m, coeffs] : acc) {
    Poly p(b, std::move(coeffs));
    if (!p.is_zero()) out.emplace(m, Element::rational(f, p, q));
  }
  return out;
}

Element monomial_element(Field field, SquareMonomial m) {
  Element out = field.one();
  const auto vars = field.variables();
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if ((m >> i) & 1) out = out * field.variable(vars[i]);
  }
  return out;
}

std::string monomial_string(Field field, SquareMonomial m) {
  const auto vars = field.variables();
  std::string out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (!((m >> i) & 1)) continue;
    if (!out.empty()) out += "*";
    out += vars[i];
  }
  return out.empty() ? "1" : out;
}

Element two_basis_reassemble(Field field, const TwoBasisTable& table) {
  Element s = field.zero();
  for (const auto& [m, c] : table) s = s + monomial_element(field, m) * square(c.embed(field));
  return s;
}

std::optional<Element> sqrt_if_square(const Element& x) {
  Field f = x.field();
  if (f.is_finite()) return Element::finite(f, f.ff().sqrt(x.ff_value()));
  if (f.is_laurent()) {
    if (x.is_exact_zero()) return x;
    const int v = x.laurent_val();
    const auto& c = x.laurent_coeffs();
    if (c.empty()) fail(ErrorCode::PrecisionExhausted, "square test on " + x.to_string());
    if (v % 2 != 0) return std::nullopt;
    std::vector<Element> root;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i % 2 == 1) {
        if (!c[i].is_zero()) return std::nullopt;
        continue;
      }
      auto r = sqrt_if_square(c[i]);
      if (!r) return std::nullopt;
      root.push_back(*r);
    }
    if (!x.laurent_exact()) {
      fail(ErrorCode::PrecisionExhausted, "square test on " + x.to_string() + " needs unknown coefficients");
    }
    return Element::laurent(f, v / 2, std::move(root), true, 0);
  }
  if (!f.is_rational_tower()) fail(ErrorCode::UnsupportedField, "square test over " + f.to_string());
  auto t = two_basis_decompose(x);
  if (t.empty()) return f.zero();
  if (t.size() == 1 && t.begin()->first == 0) return t.begin()->second;
  return std::nullopt;
}

namespace {

// Square root of a polynomial over a field where square roots can be
// decided; nothing when p is not a square.
std::optional<Poly> poly_sqrt(const Poly& p) {
  Field b = p.coeff_field();
  std::vector<Element> out;
  for (int i = 0; i <= p.degree(); ++i) {
    const Element c = p.coeff(i);
    if (i % 2 == 1) {
      if (!c.is_zero()) return std::nullopt;
      continue;
    }
    auto r = sqrt_if_square(c);
    if (!r) return std::nullopt;
    out.push_back(*r);
  }
  return Poly(b, std::move(out));
}

// Solves p^2 + q p = N over K'[t] top-down; see artin_schreier_solve.
bool solve_p(const Poly& q, Poly rem, int d, std::vector<Element>& p, bool& decided) {
  Field b = q.coeff_field();
  const int e = q.degree();
  if (d < 0) return rem.is_zero();
  const int j = std::max(2 * d, d + e);
  const Element rj = rem.coeff(j);
  auto apply = [&](const Element& pd) {
    Poly term = Poly::monomial(square(pd), 2 * d) + (q * Poly::monomial(pd, d));
    return rem + term;
  };
  std::vector<Element> candidates;
  if (d > e) {
    auto r = sqrt_if_square(rj);
    if (!r) return false;
    candidates.push_back(*r);
  } else if (d < e) {
    candidates.push_back(rj / q.lead());
  } else {
    const Element qe = q.lead();
    auto z = artin_schreier_solve(rj / square(qe));
    if (!z.decided) decided = false;
    if (!z.root) return false;
    candidates.push_back(qe * *z.root);
    candidates.push_back(qe * (*z.root + b.one()));
  }
  for (const auto& pd : candidates) {
    p[static_cast<std::size_t>(d)] = pd;
    if (solve_p(q, apply(pd), d - 1, p, decided)) return true;
  }
  return false;
}

}  // namespace

ArtinSchreierResult artin_schreier_solve(const Element& x, int degree_bound) {
  (void)degree_bound;
  Field f = x.field();
  ArtinSchreierResult out;
  if (f.is_finite()) {
    auto r = f.ff().artin_schreier(x.ff_value());
    if (r) out.root = Element::finite(f, *r);
    return out;
  }
  if (x.is_exact_zero()) {
    out.root = f.zero();
    return out;
  }
  if (f.is_laurent()) {
    // Only the contracting case v(x) > 0 is handled: y = x + x^2 + x^4 + ...
    if (x.laurent_coeffs().empty() || x.laurent_val() <= 0) {
      out.decided = false;
      return out;
    }
    Element y = f.zero();
    Element term = x;
    const int limit = x.laurent_exact() ? x.laurent_val() + f.precision() : x.laurent_abs_prec();
    while (!term.laurent_coeffs().empty() && term.laurent_val() < limit) {
      y = y + term;
      term = square(term);
    }
    y = y + Element::laurent_big_o(f, limit);
    out.root = y;
    return out;
  }
  if (!f.is_rational_tower()) {
    out.decided = false;
    return out;
  }
  // y = p/q in lowest terms forces den(x) = q^2 and num(x) = p^2 + q p.
  auto q = poly_sqrt(x.den());
  if (!q) return out;
  const Poly& N = x.num();
  const int e = q->degree();
  int dmax = e;
  if (N.degree() > 2 * e) {
    if (N.degree() % 2) return out;
    dmax = N.degree() / 2;
  }
  std::vector<Element> p(static_cast<std::size_t>(dmax + 1), f.base().zero());
  bool decided = true;
  if (solve_p(*q, N, dmax, p, decided)) {
    out.root = Element::rational(f, Poly(f.base(), p), *q);
  }
  out.decided = decided;
  return out;
}

// ---------------------------------------------------------------- places

Place Place::finite(Field field, const Poly& p) {
  if (!field.is_rational()) fail(ErrorCode::WrongField, "finite place on " + field.to_string());
  if (p.degree() < 1) fail(ErrorCode::PreconditionViolated, "place polynomial must have degree >= 1");
  Place out;
  out.kind = PlaceKind::Finite;
  out.field = field;
  out.poly = Poly(field.base(), p.coeffs()).monic();
  if (out.poly.degree() > 1) {
    if (!field.base().is_finite()) {
      fail(ErrorCode::Unsupported, "places of degree > 1 need a finite base field");
    }
    if (!is_irreducible(out.poly)) {
      fail(ErrorCode::PreconditionViolated, "place polynomial is not irreducible");
    }
  }
  return out;
}

Place Place::degree(Field field) {
  if (!field.is_rational()) fail(ErrorCode::WrongField, "degree place on " + field.to_string());
  Place out;
  out.kind = PlaceKind::Degree;
  out.field = field;
  return out;
}

Place Place::laurent(Field field) {
  if (!field.is_laurent()) fail(ErrorCode::WrongField, "X-adic place on " + field.to_string());
  Place out;
  out.kind = PlaceKind::Laurent;
  out.field = field;
  return out;
}

Place Place::top_variable(Field field) {
  if (field.is_laurent()) return laurent(field);
  return finite(field, Poly::x(field.base()));
}

std::string Place::to_string() const {
  switch (kind) {
    case PlaceKind::Finite:
      return poly.to_string(field.var());
    case PlaceKind::Degree:
      return "1/" + field.var();
    case PlaceKind::Laurent:
      return field.var();
  }
  return "?";
}

namespace {

std::mutex& ext_mutex() {
  static std::mutex mu;
  return mu;
}

std::map<std::string, Field>& ext_cache() {
  static std::map<std::string, Field> c;
  return c;
}

int poly_order(Poly g, const Poly& p) {
  int k = 0;
  for (;;) {
    Poly q, r;
    g.divmod(p, q, r);
    if (!r.is_zero()) return k;
    g = std::move(q);
    ++k;
  }
}

Element as_in(const Element& x, const Place& p) {
  if (x.field() == p.field) return x;
  return x.embed(p.field);
}

}  // namespace

Field Place::residue_field() const {
  switch (kind) {
    case PlaceKind::Finite:
      if (poly.degree() == 1) return field.base();
      return residue_extension(field.base(), poly, field.var());
    case PlaceKind::Laurent:
      return field.base();
    case PlaceKind::Degree:
      break;
  }
  fail(ErrorCode::Unsupported, "residues at the degree place are not supported");
}

int valuation(const Element& x0, const Place& p) {
  const Element x = as_in(x0, p);
  switch (p.kind) {
    case PlaceKind::Laurent:
      if (x.is_zero()) fail(ErrorCode::ZeroValuation, "valuation of zero");
      return x.laurent_val();
    case PlaceKind::Degree:
      if (x.is_zero()) fail(ErrorCode::ZeroValuation, "valuation of zero");
      return x.den().degree() - x.num().degree();
    case PlaceKind::Finite:
      if (x.is_zero()) fail(ErrorCode::ZeroValuation, "valuation of zero");
      return poly_order(x.num(), p.poly) - poly_order(x.den(), p.poly);
  }
  return 0;
}

ValuationResidue valuation_residue(const Element& x, const Place& p) {
  ValuationResidue out;
  out.valuation = valuation(x, p);
  if (out.valuation >= 0 && p.kind != PlaceKind::Degree) out.residue = residue(x, p);
  return out;
}

Element residue(const Element& x0, const Place& p) {
  const Element x = as_in(x0, p);
  Field rf = p.residue_field();
  if (x.is_zero()) return rf.zero();
  const int v = valuation(x, p);
  if (v < 0) fail(ErrorCode::NegativeValuationResidue, "residue of " + x.to_string() + " at a pole");
  if (v > 0) return rf.zero();
  if (p.kind == PlaceKind::Laurent) return x.laurent_coeffs()[0];
  if (p.poly.degree() == 1) {
    const Element root = p.poly.coeff(0);
    return x.num().eval(root) / x.den().eval(root);
  }
  return reduce_into(x.num(), p.poly, rf) / reduce_into(x.den(), p.poly, rf);
}

Element lift_residue(const Element& r, const Place& p) {
  switch (p.kind) {
    case PlaceKind::Laurent:
      return r.embed(p.field);
    case PlaceKind::Finite:
      if (p.poly.degree() == 1) return r.embed(p.field);
      return Element::from_poly(p.field, lift_from(r, p.field.base(), p.poly.degree()));
    case PlaceKind::Degree:
      break;
  }
  fail(ErrorCode::Unsupported, "lifting from the degree place");
}

Element uniformizer(const Place& p) {
  switch (p.kind) {
    case PlaceKind::Laurent:
      return p.field.gen();
    case PlaceKind::Finite:
      return Element::from_poly(p.field, p.poly);
    case PlaceKind::Degree:
      return inv(p.field.gen());
  }
  return p.field.one();
}

Field residue_extension(Field finite_field, const Poly& f, const std::string& var) {
  if (f.degree() == 1) return finite_field;
  const Poly m = f.monic();
  std::vector<std::uint32_t> digits;
  for (const auto& c : m.coeffs()) digits.push_back(c.ff_value());
  std::string key = finite_field.to_string() + "|" + var + "|";
  for (auto d : digits) key += std::to_string(d) + ",";
  {
    std::lock_guard<std::mutex> lock(ext_mutex());
    auto it = ext_cache().find(key);
    if (it != ext_cache().end()) return it->second;
  }
  auto ff = FiniteField::extension(finite_field.ff_ptr(), digits);
  Field out = Field::finite_extension(finite_field, ff, var);
  std::lock_guard<std::mutex> lock(ext_mutex());
  ext_cache().emplace(key, out);
  return out;
}

Element reduce_into(const Poly& g, const Poly& f, Field ext) {
  if (f.degree() == 1) return g.eval(f.coeff(0)).embed(ext);
  const Poly r = g % f;
  std::vector<std::uint32_t> digits;
  for (const auto& c : r.coeffs()) digits.push_back(c.ff_value());
  return Element::finite(ext, ext.ff().from_digits(digits));
}

Poly lift_from(const Element& e, Field base_field, int degree) {
  if (degree == 1) return Poly::constant(e.restrict_to(base_field));
  const FiniteField& F = e.field().ff();
  std::vector<Element> c;
  for (int i = 0; i < degree; ++i) c.push_back(Element::finite(base_field, F.digit(e.ff_value(), i)));
  return Poly(base_field, std::move(c));
}

// ---------------------------------------------------------- factorization

bool poly_less(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    const std::uint32_t x = a.coeff(i).ff_value();
    const std::uint32_t y = b.coeff(i).ff_value();
    if (x != y) return x < y;
  }
  return false;
}

namespace {

Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return (a * b) % m; }

// x^(q^k) mod m by repeated Frobenius.
Poly frobenius_power(const Poly& h, const Poly& m, std::uint64_t q) {
  Poly r = Poly::constant(m.coeff_field().one());
  Poly b = h % m;
  std::uint64_t e = q;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    e >>= 1;
    if (e) b = mulmod(b, b, m);
  }
  return r;
}

Poly counter_poly(Field k, std::uint64_t n) {
  const std::uint64_t q = k.ff().size();
  std::vector<Element> c;
  while (n) {
    c.push_back(Element::finite(k, static_cast<std::uint32_t>(n % q)));
    n /= q;
  }
  return Poly(k, std::move(c));
}

void equal_degree_split(const Poly& g, int d, std::vector<Poly>& out) {
  if (g.degree() == d) {
    out.push_back(g);
    return;
  }
  Field k = g.coeff_field();
  const int bits = k.ff().bits();
  for (std::uint64_t n = 2;; ++n) {
    Poly a = counter_poly(k, n);
    if (a.degree() >= g.degree()) fail(ErrorCode::Internal, "equal-degree splitting failed");
    if (a.degree() < 1) continue;
    // Absolute trace map a + a^2 + ... + a^(2^(bits*d - 1)) mod g.
    Poly t = a % g;
    Poly s = t;
    for (int i = 1; i < bits * d; ++i) {
      t = mulmod(t, t, g);
      s = s + t;
    }
    Poly h = gcd(g, s);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      equal_degree_split(h, d, out);
      equal_degree_split(g / h, d, out);
      return;
    }
  }
}

// Distinct irreducible factors of a squarefree monic polynomial.
std::vector<Poly> squarefree_factors(Poly s) {
  std::vector<Poly> out;
  Field k = s.coeff_field();
  const std::uint64_t q = k.ff().size();
  const Poly x = Poly::x(k);
  Poly h = x;
  for (int i = 1; s.degree() >= 2 * i; ++i) {
    h = frobenius_power(h, s, q);
    Poly g = gcd(s, h + x);
    if (g.degree() > 0) {
      equal_degree_split(g, i, out);
      s = s / g;
      h = h % s;
    }
  }
  if (s.degree() > 0) out.push_back(s);
  return out;
}

void factor_monic(const Poly& f, int mult, std::map<std::vector<std::uint32_t>, std::pair<Poly, int>>& acc) {
  if (f.degree() < 1) return;
  const Poly d = f.derivative();
  Poly rest = f;
  if (!d.is_zero()) {
    const Poly s = f / gcd(f, d);
    for (const Poly& p : squarefree_factors(s)) {
      int e = 0;
      for (;;) {
        Poly q, r;
        rest.divmod(p, q, r);
        if (!r.is_zero()) break;
        rest = std::move(q);
        ++e;
      }
      std::vector<std::uint32_t> key;
      for (const auto& c : p.coeffs()) key.push_back(c.ff_value());
      auto& slot = acc[key];
      if (slot.second == 0) slot.first = p;
      slot.second += e * mult;
    }
  }
  if (rest.degree() < 1) return;
  auto r = poly_sqrt(rest);
  if (!r) fail(ErrorCode::Internal, "square-part extraction failed");
  factor_monic(*r, mult * 2, acc);
}

}  // namespace

Factorization factor_univariate(const Poly& f) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "factorization of zero");
  Field k = f.coeff_field();
  if (!k.is_finite()) fail(ErrorCode::UnsupportedField, "factorization over " + k.to_string());
  Factorization out;
  out.lead = f.lead();
  std::map<std::vector<std::uint32_t>, std::pair<Poly, int>> acc;
  factor_monic(f.monic(), 1, acc);
  for (auto& [key, pm] : acc) out.factors.push_back(pm);
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
  return out;
}

bool is_irreducible(const Poly& f0) {
  if (f0.degree() < 1) return false;
  if (f0.degree() == 1) return true;
  Field k = f0.coeff_field();
  if (!k.is_finite()) fail(ErrorCode::Unsupported, "irreducibility test over " + k.to_string());
  const Poly f = f0.monic();
  const std::uint64_t q = k.ff().size();
  const Poly x = Poly::x(k);
  Poly h = x;
  for (int i = 1; 2 * i <= f.degree(); ++i) {
    h = frobenius_power(h, f, q);
    if (gcd(f, h + x).degree() > 0) return false;
  }
  return true;
}

std::vector<Poly> enum_irreducibles(Field k, int degree) {
  if (!k.is_finite()) fail(ErrorCode::UnsupportedField, "enumeration over " + k.to_string());
  if (degree < 1) fail(ErrorCode::PreconditionViolated, "degree must be >= 1");
  const std::uint64_t q = k.ff().size();
  std::uint64_t total = 1;
  for (int i = 0; i < degree; ++i) total *= q;
  std::vector<Poly> out;
  for (std::uint64_t n = 0; n < total; ++n) {
    Poly p = counter_poly(k, n) + Poly::monomial(k.one(), degree);
    if (is_irreducible(p)) out.push_back(p);
  }
  std::sort(out.begin(), out.end(), poly_less);
  return out;
}

std::uint64_t necklace_count(std::uint64_t q, int n) {
  auto mobius = [](int m) {
    int r = 1;
    for (int p = 2; p * p <= m; ++p) {
      if (m % p == 0) {
        m /= p;
        if (m % p == 0) return 0;
        r = -r;
      }
    }
    if (m > 1) r = -r;
    return r;
  };
  long long sum = 0;
  for (int d = 1; d <= n; ++d) {
    if (n % d) continue;
    long long term = 1;
    for (int i = 0; i < n / d; ++i) term *= static_cast<long long>(q);
    sum += mobius(d) * term;
  }
  return static_cast<std::uint64_t>(sum / n);
}

// ------------------------------------------------------------ linear algebra

namespace {

struct Rref {
  Matrix m;
  std::vector<std::size_t> pivots;  // pivot column per row
};

Rref row_reduce(Matrix m, std::size_t cols, Field k) {
  Rref out;
  std::size_t row = 0;
  for (auto& r : m) {
    for (auto& e : r) e = e.embed(k);
  }
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t p = row;
    while (p < m.size() && m[p][col].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    const Element li = inv(m[row][col]);
    for (auto& e : m[row]) e = e * li;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      const Element f = m[r][col];
      for (std::size_t c = 0; c < cols; ++c) m[r][c] = m[r][c] + f * m[row][c];
    }
    out.pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  out.m = std::move(m);
  return out;
}

}  // namespace

Element common_denominator(const std::vector<Element>& v, Field k) {
  if (!k.is_rational()) return k.one();
  Poly l = Poly::constant(k.base().one());
  for (const auto& e : v) {
    const Poly& d = e.den();
    l = (l * d) / gcd(l, d);
  }
  std::vector<Element> inner;
  for (const auto& e : v) {
    const Element scaled = e * Element::from_poly(k, l);
    for (const auto& c : scaled.num().coeffs()) inner.push_back(c);
  }
  const Element d = common_denominator(inner, k.base());
  return Element::from_poly(k, l) * d.embed(k);
}

std::vector<std::vector<Element>> kernel(const Matrix& m, std::size_t cols, Field k) {
  Rref r = row_reduce(m, cols, k);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : r.pivots) is_pivot[c] = true;
  std::vector<std::vector<Element>> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Element> v(cols, k.zero());
    v[f] = k.one();
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = r.m[i][f];
    out.push_back(std::move(v));
  }
  return out;
}

int rank(const Matrix& m, Field k) {
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  return static_cast<int>(row_reduce(m, cols, k).pivots.size());
}

Matrix square_span_matrix(const std::vector<Element>& c, Field k) {
  std::vector<TwoBasisTable> tables;
  std::map<SquareMonomial, std::size_t> rows;
  for (const auto& e : c) {
    tables.push_back(two_basis_decompose(e.embed(k)));
    for (const auto& kv : tables.back()) rows.emplace(kv.first, 0);
  }
  std::size_t idx = 0;
  for (auto& kv : rows) kv.second = idx++;
  Matrix m(rows.size(), std::vector<Element>(c.size(), k.zero()));
  for (std::size_t i = 0; i < tables.size(); ++i) {
    for (const auto& [mono, coeff] : tables[i]) m[rows[mono]][i] = coeff;
  }
  return m;
}

int square_span_rank(const std::vector<Element>& c, Field k) {
  return rank(square_span_matrix(c, k), k);
}

std::optional<std::vector<Element>> square_dependency(const std::vector<Element>& c, Field k) {
  auto ker = kernel(square_span_matrix(c, k), c.size(), k);
  if (ker.empty()) return std::nullopt;
  std::vector<Element> v = ker.front();
  const Element d = common_denominator(v, k);
  for (auto& e : v) e = e * d;
  return v;
}

bool same_square_span(const std::vector<Element>& a, const std::vector<Element>& b, Field k) {
  std::vector<Element> both = a;
  both.insert(both.end(), b.begin(), b.end());
  const int ra = square_span_rank(a, k);
  return ra == square_span_rank(b, k) && ra == square_span_rank(both, k);
}

}  // namespace c2qf
