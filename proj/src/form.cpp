#include "c2qf/form.hpp"

#include <algorithm>
#include <functional>

#include "c2qf/parse.hpp"
#include "c2qf/tower.hpp"
#include "enumerate.hpp"
#include "finite_form.hpp"
#include "parser_internal.hpp"

namespace c2qf {

std::string_view to_string(FormClass c) {
  switch (c) {
    case FormClass::Zero:
      return "zero";
    case FormClass::Nonsingular:
      return "nonsingular";
    case FormClass::Semisingular:
      return "semisingular";
    case FormClass::Quasilinear:
      return "quasilinear";
  }
  return "?";
}

QuadraticForm::QuadraticForm(Field f, std::vector<Plane> planes, std::vector<Element> diagonal)
    : field_(f), planes_(std::move(planes)), diag_(std::move(diagonal)) {
  for (auto& p : planes_) {
    p.a = p.a.embed(f);
    p.b = p.b.embed(f);
  }
  for (auto& c : diag_) c = c.embed(f);
}

QuadraticForm QuadraticForm::plane(const Element& a, const Element& b) {
  Field f = common_field(a.field(), b.field());
  return QuadraticForm(f, {Plane{a, b}}, {});
}

QuadraticForm QuadraticForm::diagonal(Field f, std::vector<Element> c) {
  return QuadraticForm(f, {}, std::move(c));
}

QuadraticForm QuadraticForm::hyperbolic(Field f) {
  return QuadraticForm(f, {Plane{f.zero(), f.zero()}}, {});
}

QuadraticForm QuadraticForm::embed(Field target) const {
  if (target == field_) return *this;
  return QuadraticForm(target, planes_, diag_);
}

std::string QuadraticForm::to_string() const {
  std::string out;
  for (const auto& p : planes_) {
    if (!out.empty()) out += "+";
    if (p.a.is_exact_zero() && p.b.is_exact_zero()) {
      out += "H";
    } else {
      out += "[" + p.a.to_string() + "," + p.b.to_string() + "]";
    }
  }
  if (!diag_.empty() || out.empty()) {
    if (!out.empty()) out += "+";
    out += "<";
    for (std::size_t i = 0; i < diag_.size(); ++i) {
      if (i) out += ",";
      out += diag_[i].to_string();
    }
    out += ">";
  }
  return out;
}

bool QuadraticForm::operator==(const QuadraticForm& o) const {
  if (field_ != o.field_ || planes_.size() != o.planes_.size() || diag_ != o.diag_) return false;
  for (std::size_t i = 0; i < planes_.size(); ++i) {
    if (planes_[i].a != o.planes_[i].a || planes_[i].b != o.planes_[i].b) return false;
  }
  return true;
}

std::vector<Element> BilinearPfister::subset_products() const {
  std::vector<Element> out;
  const std::size_t n = entries.size();
  for (std::size_t S = 0; S < (std::size_t{1} << n); ++S) {
    Element p = field.one();
    for (std::size_t i = 0; i < n; ++i) {
      if ((S >> i) & 1) p = p * entries[i];
    }
    out.push_back(p);
  }
  return out;
}

std::string BilinearPfister::to_string() const {
  std::string out = "pf(";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) out += ",";
    out += entries[i].to_string();
  }
  return out + ")";
}

// -------------------------------------------------------------- evaluation

namespace {

void check_dim(const QuadraticForm& phi, const Vec& v) {
  if (static_cast<int>(v.size()) != phi.dim()) {
    fail(ErrorCode::DimensionMismatch, "vector of length " + std::to_string(v.size()) +
                                           " for a form of dimension " + std::to_string(phi.dim()));
  }
}

}  // namespace

Element evaluate(const QuadraticForm& phi, const Vec& v) {
  check_dim(phi, v);
  Element acc = phi.field().zero();
  const int r = phi.r();
  for (int i = 0; i < r; ++i) {
    const Element& x = v[static_cast<std::size_t>(2 * i)];
    const Element& y = v[static_cast<std::size_t>(2 * i + 1)];
    const Plane& p = phi.planes()[static_cast<std::size_t>(i)];
    acc = acc + p.a * square(x) + x * y + p.b * square(y);
  }
  for (int j = 0; j < phi.s(); ++j) {
    acc = acc + phi.diag()[static_cast<std::size_t>(j)] * square(v[static_cast<std::size_t>(2 * r + j)]);
  }
  return acc;
}

Element polar(const QuadraticForm& phi, const Vec& u, const Vec& v) {
  check_dim(phi, u);
  check_dim(phi, v);
  Element acc = phi.field().zero();
  for (int i = 0; i < phi.r(); ++i) {
    const std::size_t x = static_cast<std::size_t>(2 * i), y = x + 1;
    acc = acc + u[x] * v[y] + u[y] * v[x];
  }
  return acc;
}

QuadraticForm direct_sum(const QuadraticForm& a, const QuadraticForm& b) {
  Field f = common_field(a.field(), b.field());
  std::vector<Plane> planes = a.planes();
  planes.insert(planes.end(), b.planes().begin(), b.planes().end());
  std::vector<Element> diag = a.diag();
  diag.insert(diag.end(), b.diag().begin(), b.diag().end());
  return QuadraticForm(f, std::move(planes), std::move(diag));
}

QuadraticForm scale(const Element& c, const QuadraticForm& phi) {
  if (c.is_zero()) fail(ErrorCode::ZeroScale, "scaling a form by zero");
  Field f = common_field(c.field(), phi.field());
  const Element ci = inv(c);
  std::vector<Plane> planes;
  for (const auto& p : phi.planes()) planes.push_back(Plane{c * p.a, p.b * ci});
  std::vector<Element> diag;
  for (const auto& d : phi.diag()) diag.push_back(c * d);
  return QuadraticForm(f, std::move(planes), std::move(diag));
}

QuadraticForm pfister_multiply(const BilinearPfister& pi, const QuadraticForm& phi) {
  Field f = pi.field.valid() ? common_field(pi.field, phi.field()) : phi.field();
  QuadraticForm out(f);
  for (const auto& p : pi.subset_products()) out = direct_sum(out, scale(p, phi));
  if (pi.entries.empty()) return phi.embed(f);
  return out;
}

FormType type_of(const QuadraticForm& phi) {
  FormType t;
  t.r = phi.r();
  t.s = phi.s();
  if (t.r == 0 && t.s == 0) {
    t.cls = FormClass::Zero;
  } else if (t.s == 0) {
    t.cls = FormClass::Nonsingular;
  } else if (t.r == 0) {
    t.cls = FormClass::Quasilinear;
  } else {
    t.cls = FormClass::Semisingular;
  }
  return t;
}

Vec zero_vector(Field f, int n) { return Vec(static_cast<std::size_t>(n), f.zero()); }

Vec unit_vector(Field f, int n, int i) {
  Vec v = zero_vector(f, n);
  v[static_cast<std::size_t>(i)] = f.one();
  return v;
}

Vec embed_vector(const Vec& v, Field target) {
  Vec out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(e.embed(target));
  return out;
}

std::string vector_to_string(const Vec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v[i].to_string();
  }
  return out + ")";
}

// ------------------------------------------------------------------ parsing

namespace {

QuadraticForm read_form(Reader& r, Field field);

std::vector<Element> read_list(Reader& r, Field field, char close) {
  std::vector<Element> out;
  if (r.accept(close)) return out;
  for (;;) {
    out.push_back(read_element(r, field));
    if (r.accept(close)) return out;
    r.expect(',');
  }
}

bool at_word(Reader& r, std::string_view w) {
  const std::size_t save = r.pos();
  if (!r.at_identifier()) return false;
  const std::string id = r.identifier();
  r.set_pos(save);
  return id == w;
}

QuadraticForm read_parenthesized(Reader& r, Field field) {
  r.expect('(');
  QuadraticForm f = read_form(r, field);
  r.expect(')');
  return f;
}

QuadraticForm read_term(Reader& r, Field field) {
  const char c = r.peek();
  if (c == '[') {
    r.expect('[');
    Element a = read_element(r, field);
    r.expect(',');
    Element b = read_element(r, field);
    r.expect(']');
    return QuadraticForm(field, {Plane{a, b}}, {});
  }
  if (c == '<') {
    r.expect('<');
    return QuadraticForm::diagonal(field, read_list(r, field, '>'));
  }
  if (at_word(r, "H")) {
    r.identifier();
    return QuadraticForm::hyperbolic(field);
  }
  if (at_word(r, "pf")) {
    r.identifier();
    r.expect('(');
    const std::size_t at = r.pos();
    BilinearPfister pi{field, read_list(r, field, ')')};
    for (const auto& e : pi.entries) {
      if (e.is_zero()) r.error_at(at, ErrorCode::ZeroScale, "nonzero entries", "Pfister entries must be nonzero");
    }
    r.expect('*');
    return pfister_multiply(pi, read_parenthesized(r, field));
  }
  if (c == '(') {
    const std::size_t save = r.pos();
    try {
      QuadraticForm f = read_parenthesized(r, field);
      if (!(r.peek() == '*' && r.peek_at(1) == '(')) return f;
    } catch (const ParseError&) {
    }
    r.set_pos(save);
  }
  const std::size_t at = r.pos();
  if (!(r.at_digit() || r.at_identifier() || c == '(' || c == '-')) r.error("form");
  Element s = read_element(r, field, true);
  r.expect('*');
  QuadraticForm inner = read_parenthesized(r, field);
  if (s.is_zero()) r.error_at(at, ErrorCode::ZeroScale, "nonzero scalar", "scaling a form by zero");
  return scale(s, inner);
}

QuadraticForm read_form(Reader& r, Field field) {
  QuadraticForm acc = read_term(r, field);
  while (r.accept('+')) acc = direct_sum(acc, read_term(r, field));
  return acc;
}

}  // namespace

QuadraticForm parse_form(Field field, std::string_view text) {
  Reader r(text);
  QuadraticForm f = read_form(r, field);
  expect_end(r);
  return f;
}

BilinearPfister parse_pfister(Field field, std::string_view text) {
  Reader r(text);
  BilinearPfister pi{field, {}};
  if (r.accept("<<")) {
    if (!r.accept(">>")) {
      for (;;) {
        pi.entries.push_back(read_element(r, field));
        if (r.accept(">>")) break;
        r.expect(',');
      }
    }
  } else {
    if (!r.accept("pf")) r.error("'pf(' or '<<'");
    r.expect('(');
    pi.entries = read_list(r, field, ')');
  }
  expect_end(r);
  for (const auto& e : pi.entries) {
    if (e.is_zero()) fail(ErrorCode::ZeroScale, "Pfister entries must be nonzero");
  }
  return pi;
}

Vec parse_vector(Field field, std::string_view text) {
  Reader r(text);
  Vec v;
  if (r.accept('(')) {
    v = read_list(r, field, ')');
  } else if (!r.at_end()) {
    for (;;) {
      v.push_back(read_element(r, field));
      if (!r.accept(',')) break;
    }
  }
  expect_end(r);
  return v;
}

// ------------------------------------------------------------ packed forms

PackedForm::PackedForm(const QuadraticForm& phi) : field(phi.field()), r(phi.r()), s(phi.s()) {
  if (!field.is_finite()) fail(ErrorCode::UnsupportedField, "finite field expected, got " + field.to_string());
  F = &field.ff();
  for (const auto& p : phi.planes()) {
    a.push_back(p.a.ff_value());
    b.push_back(p.b.ff_value());
  }
  for (const auto& d : phi.diag()) c.push_back(d.ff_value());
}

Vec PackedForm::unpack(const std::vector<std::uint32_t>& v) const {
  Vec out;
  for (auto x : v) out.push_back(Element::finite(field, x));
  return out;
}

std::vector<std::uint32_t> pack_vector(const Vec& v, Field f) {
  std::vector<std::uint32_t> out;
  for (const auto& e : v) out.push_back(e.embed(f).ff_value());
  return out;
}

// ---------------------------------------------------------------- subspaces

QuadraticForm restrict_form(const QuadraticForm& phi, const std::vector<Vec>& basis,
                            std::vector<Vec>* out_basis) {
  std::vector<Vec> w = basis;
  std::vector<Plane> planes;
  std::vector<Element> diag;
  std::vector<Vec> adapted;
  std::vector<Vec> radical;
  Field f = phi.field();
  for (auto& v : w) v = embed_vector(v, f);
  while (!w.empty()) {
    std::size_t pi = w.size(), pj = w.size();
    Element bij;
    for (std::size_t i = 0; i < w.size() && pi == w.size(); ++i) {
      for (std::size_t j = i + 1; j < w.size(); ++j) {
        Element b = polar(phi, w[i], w[j]);
        if (!b.is_zero()) {
          pi = i;
          pj = j;
          bij = b;
          break;
        }
      }
    }
    if (pi == w.size()) {
      for (auto& v : w) {
        diag.push_back(evaluate(phi, v));
        radical.push_back(v);
      }
      break;
    }
    const Vec e = w[pi];
    Vec g = w[pj];
    const Element bi = inv(bij);
    for (auto& x : g) x = x * bi;
    planes.push_back(Plane{evaluate(phi, e), evaluate(phi, g)});
    adapted.push_back(e);
    adapted.push_back(g);
    std::vector<Vec> rest;
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (k == pi || k == pj) continue;
      Vec v = w[k];
      const Element be = polar(phi, v, e);
      const Element bg = polar(phi, v, g);
      for (std::size_t c = 0; c < v.size(); ++c) v[c] = v[c] + bg * e[c] + be * g[c];
      rest.push_back(std::move(v));
    }
    w = std::move(rest);
  }
  if (out_basis) {
    *out_basis = adapted;
    out_basis->insert(out_basis->end(), radical.begin(), radical.end());
  }
  return QuadraticForm(f, std::move(planes), std::move(diag));
}

// ------------------------------------------------------------- dominance

namespace {

// Incremental row echelon over a finite field for injectivity checks.
struct Echelon {
  const FiniteField* F;
  std::vector<std::vector<std::uint32_t>> rows;
  std::vector<int> pivot;

  bool reduce(std::vector<std::uint32_t>& v) const {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::uint32_t c = v[static_cast<std::size_t>(pivot[i])];
      if (!c) continue;
      for (std::size_t k = 0; k < v.size(); ++k) v[k] ^= F->mul(c, rows[i][k]);
    }
    for (auto x : v) {
      if (x) return true;
    }
    return false;
  }

  bool add(std::vector<std::uint32_t> v) {
    if (!reduce(v)) return false;
    int p = 0;
    while (!v[static_cast<std::size_t>(p)]) ++p;
    const std::uint32_t li = F->inv(v[static_cast<std::size_t>(p)]);
    for (auto& x : v) x = F->mul(x, li);
    for (auto& row : rows) {
      const std::uint32_t c = row[static_cast<std::size_t>(p)];
      if (!c) continue;
      for (std::size_t k = 0; k < v.size(); ++k) row[k] ^= F->mul(c, v[k]);
    }
    rows.push_back(std::move(v));
    pivot.push_back(p);
    return true;
  }
};

std::vector<std::uint32_t> decode(std::uint64_t idx, int n, int bits) {
  std::vector<std::uint32_t> v(static_cast<std::size_t>(n));
  const std::uint64_t mask = (std::uint64_t{1} << bits) - 1;
  for (int k = n - 1; k >= 0; --k) {
    v[static_cast<std::size_t>(k)] = static_cast<std::uint32_t>(idx & mask);
    idx >>= bits;
  }
  return v;
}

std::optional<QuadraticForm> subform_complement(const QuadraticForm& phi, const Columns& cols) {
  Field f = phi.field();
  const int n = phi.dim();
  // U-perp = { x : b(col_j, x) = 0 for all j }.
  Matrix m;
  for (const auto& c : cols) {
    std::vector<Element> row;
    for (int k = 0; k < n; ++k) row.push_back(polar(phi, c, unit_vector(f, n, k)));
    m.push_back(std::move(row));
  }
  auto perp = kernel(m, static_cast<std::size_t>(n), f);
  Matrix all(cols.begin(), cols.end());
  for (const auto& v : perp) all.push_back(v);
  if (rank(all, f) != n) return std::nullopt;
  std::vector<Vec> basis(cols.begin(), cols.end());
  std::vector<Vec> w;
  for (const auto& v : perp) {
    Matrix trial(basis.begin(), basis.end());
    trial.push_back(v);
    if (rank(trial, f) == static_cast<int>(trial.size())) {
      basis.push_back(v);
      w.push_back(v);
    }
  }
  return restrict_form(phi, w);
}

}  // namespace

bool verify_embedding(const QuadraticForm& sigma, const QuadraticForm& phi, const Columns& m) {
  const int k = sigma.dim();
  if (static_cast<int>(m.size()) != k) return false;
  Field f = common_field(sigma.field(), phi.field());
  for (const auto& c : m) {
    if (static_cast<int>(c.size()) != phi.dim()) return false;
  }
  for (int i = 0; i < k; ++i) {
    const Vec ei = unit_vector(f, k, i);
    if (!equal(evaluate(phi, m[static_cast<std::size_t>(i)]), evaluate(sigma, ei))) return false;
    for (int j = i + 1; j < k; ++j) {
      const Vec ej = unit_vector(f, k, j);
      if (!equal(polar(phi, m[static_cast<std::size_t>(i)], m[static_cast<std::size_t>(j)]),
                 polar(sigma, ei, ej))) {
        return false;
      }
    }
  }
  Matrix mm(m.begin(), m.end());
  for (auto& row : mm) row = embed_vector(row, f);
  return k == 0 || rank(mm, f) == k;
}

std::optional<EmbeddingWitness> dominance_search(const QuadraticForm& sigma0, const QuadraticForm& phi0,
                                                 bool subform, std::uint64_t budget) {
  Field f = common_field(sigma0.field(), phi0.field());
  if (!f.is_finite()) fail(ErrorCode::UnsupportedField, "dominance search needs a finite field");
  const QuadraticForm sigma = sigma0.embed(f), phi = phi0.embed(f);
  const PackedForm P(phi), S(sigma);
  const int n = phi.dim(), m = sigma.dim();
  if (m > n) return std::nullopt;
  const FiniteField& F = f.ff();
  const std::uint64_t total = power_checked(F.size(), n, budget);
  std::vector<std::uint32_t> target(static_cast<std::size_t>(m));
  std::vector<std::vector<std::uint32_t>> tpolar(static_cast<std::size_t>(m),
                                                 std::vector<std::uint32_t>(static_cast<std::size_t>(m)));
  for (int i = 0; i < m; ++i) {
    std::vector<std::uint32_t> ei(static_cast<std::size_t>(m), 0);
    ei[static_cast<std::size_t>(i)] = 1;
    target[static_cast<std::size_t>(i)] = S.eval(ei.data());
    for (int j = 0; j < m; ++j) {
      std::vector<std::uint32_t> ej(static_cast<std::size_t>(m), 0);
      ej[static_cast<std::size_t>(j)] = 1;
      tpolar[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = S.polar(ei.data(), ej.data());
    }
  }
  // Bucket the nonzero vectors by value, in lexicographic order.
  std::vector<std::vector<std::uint64_t>> bucket(F.size());
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    const auto v = decode(idx, n, F.bits());
    bucket[P.eval(v.data())].push_back(idx);
  }
  std::vector<std::vector<std::uint32_t>> chosen;
  std::optional<EmbeddingWitness> found;
  std::function<bool(int, const Echelon&)> rec = [&](int j, const Echelon& ech) -> bool {
    if (j == m) {
      Columns cols;
      for (const auto& c : chosen) cols.push_back(P.unpack(c));
      EmbeddingWitness w{cols, std::nullopt};
      if (subform) {
        auto comp = subform_complement(phi, cols);
        if (!comp) return false;
        w.complement = *comp;
      }
      found = std::move(w);
      return true;
    }
    for (std::uint64_t idx : bucket[target[static_cast<std::size_t>(j)]]) {
      auto v = decode(idx, n, F.bits());
      bool ok = true;
      for (int i = 0; i < j && ok; ++i) {
        ok = P.polar(chosen[static_cast<std::size_t>(i)].data(), v.data()) ==
             tpolar[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      }
      if (!ok) continue;
      Echelon next = ech;
      if (!next.add(v)) continue;
      chosen.push_back(v);
      if (rec(j + 1, next)) return true;
      chosen.pop_back();
    }
    return false;
  };
  Echelon e{&F, {}, {}};
  if (rec(0, e)) return found;
  return std::nullopt;
}

}  // namespace c2qf
