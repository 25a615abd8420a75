#include "c2qf/isotropy.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "enumerate.hpp"
#include "finite_form.hpp"

namespace c2qf {

namespace {

bool all_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Element& e) { return e.is_zero(); });
}

Vec combine(const Vec& coeffs, const std::vector<Vec>& basis, Field f, int n) {
  Vec x = zero_vector(f, n);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].is_zero()) continue;
    for (int k = 0; k < n; ++k) x[static_cast<std::size_t>(k)] = x[static_cast<std::size_t>(k)] + coeffs[i] * basis[i][static_cast<std::size_t>(k)];
  }
  return x;
}

}  // namespace

// ----------------------------------------------------------- finite search

std::optional<Vec> isotropy_ff(const QuadraticForm& phi, std::uint64_t budget) {
  const PackedForm P(phi);
  const FiniteField& F = *P.F;
  const int n = P.dim();
  if (n == 0) return std::nullopt;
  power_checked(F.size(), n, budget);
  const std::uint32_t q = static_cast<std::uint32_t>(F.size());
  std::vector<std::uint32_t> v(static_cast<std::size_t>(n), 0);
  std::vector<std::uint32_t> last(static_cast<std::size_t>(n), 0);
  last[static_cast<std::size_t>(n - 1)] = 1;
  const std::uint32_t A = P.eval(last.data());
  // The least isotropic vector has its first nonzero coordinate as far
  // right as possible; try supports of increasing length k.
  for (int k = 1; k <= n; ++k) {
    const int lo = n - k;
    std::fill(v.begin(), v.end(), 0);
    if (k == 1) {
      if (A == 0) {
        v[static_cast<std::size_t>(n - 1)] = 1;
        return P.unpack(v);
      }
      continue;
    }
    v[static_cast<std::size_t>(lo)] = 1;
    for (;;) {
      v[static_cast<std::size_t>(n - 1)] = 0;
      const std::uint32_t B = P.polar(v.data(), last.data());
      const std::uint32_t C = P.eval(v.data());
      std::optional<std::uint32_t> z;
      if (A == 0 && B == 0) {
        if (C == 0) z = 0;
      } else {
        z = F.least_root(A, B, C);
      }
      if (z) {
        v[static_cast<std::size_t>(n - 1)] = *z;
        return P.unpack(v);
      }
      // Next prefix in lexicographic order over positions lo..n-2.
      int pos = n - 2;
      while (pos >= lo) {
        auto& d = v[static_cast<std::size_t>(pos)];
        if (d + 1 < q) {
          ++d;
          break;
        }
        d = (pos == lo) ? 1 : 0;
        --pos;
      }
      if (pos < lo) break;
    }
  }
  return std::nullopt;
}

// ------------------------------------------------------------ classification

int arf_invariant(const QuadraticForm& phi) {
  const PackedForm P(phi);
  std::uint32_t acc = 0;
  for (int i = 0; i < P.r; ++i) acc ^= P.F->mul(P.a[static_cast<std::size_t>(i)], P.b[static_cast<std::size_t>(i)]);
  return P.F->trace(acc);
}

FiniteClass finite_class(const QuadraticForm& phi) {
  const PackedForm P(phi);
  FiniteClass c;
  c.dim = P.dim();
  const bool ql_nonzero = std::any_of(P.c.begin(), P.c.end(), [](std::uint32_t x) { return x != 0; });
  if (ql_nonzero) {
    c.i_d = P.s - 1;
    c.i_W = P.r;
    c.an_dim = 1;
    return c;
  }
  c.i_d = P.s;
  if (P.r > 0 && arf_invariant(phi) == 1) {
    c.i_W = P.r - 1;
    c.an_dim = 2;
  } else {
    c.i_W = P.r;
  }
  return c;
}

std::string FiniteClass::to_string() const {
  std::string an = an_dim == 0 ? "0" : an_dim == 1 ? "<1>" : "[1,d] with tr(d)=1";
  return "dim " + std::to_string(dim) + ", i_W " + std::to_string(i_W) + ", i_d " + std::to_string(i_d) +
         ", anisotropic part " + an;
}

std::optional<Vec> quasilinear_isotropy_tower(const QuadraticForm& phi) {
  if (!phi.is_quasilinear()) fail(ErrorCode::PreconditionViolated, "form is not quasilinear");
  if (phi.field().is_finite()) return isotropy_ff(phi);
  if (!phi.field().is_rational_tower()) fail(ErrorCode::UnsupportedField, "rational tower expected");
  return square_dependency(phi.diag(), phi.field());
}

bool is_isotropic(const QuadraticForm& phi) {
  if (phi.field().is_finite()) {
    const FiniteClass c = finite_class(phi);
    return c.i_W + c.i_d > 0;
  }
  if (phi.is_quasilinear() && phi.field().is_rational_tower()) {
    return quasilinear_isotropy_tower(phi).has_value();
  }
  fail(ErrorCode::Unsupported, "isotropy of non-quasilinear forms over " + phi.field().to_string());
}

// --------------------------------------------------------- Witt decomposition

QuadraticForm WittDecomposition::reassemble() const {
  Field f = anisotropic_part.field();
  QuadraticForm out(f);
  for (int i = 0; i < i_W; ++i) out = direct_sum(out, QuadraticForm::hyperbolic(f));
  out = direct_sum(out, anisotropic_part);
  return direct_sum(out, QuadraticForm::diagonal(f, std::vector<Element>(static_cast<std::size_t>(i_d), f.zero())));
}

WittDecomposition witt_decompose(const QuadraticForm& phi, std::uint64_t budget) {
  Field f = phi.field();
  const bool finite = f.is_finite();
  if (!finite && !f.is_rational_tower()) {
    fail(ErrorCode::Unsupported, "Witt decomposition over " + f.to_string());
  }
  const int n = phi.dim();
  WittDecomposition out;
  std::vector<Vec> W;
  for (int i = 0; i < n; ++i) W.push_back(unit_vector(f, n, i));
  std::vector<Vec> ad;
  // Radical witnesses first: each strips a <0>.
  for (;;) {
    QuadraticForm psi = restrict_form(phi, W, &ad);
    const QuadraticForm ql = psi.ql();
    std::optional<Vec> z = finite ? isotropy_ff(ql, budget) : square_dependency(ql.diag(), f);
    if (!z) break;
    const int r2 = 2 * psi.r();
    Vec coeffs = zero_vector(f, psi.dim());
    int last = -1;
    for (int j = 0; j < ql.dim(); ++j) {
      coeffs[static_cast<std::size_t>(r2 + j)] = (*z)[static_cast<std::size_t>(j)];
      if (!(*z)[static_cast<std::size_t>(j)].is_zero()) last = r2 + j;
    }
    out.witnesses.push_back(combine(coeffs, ad, f, n));
    ++out.i_d;
    ad.erase(ad.begin() + last);
    W = ad;
  }
  QuadraticForm psi = restrict_form(phi, W, &ad);
  if (!finite) {
    if (psi.r() > 0) fail(ErrorCode::Unsupported, "Witt index of non-quasilinear forms over " + f.to_string());
    out.anisotropic_part = psi;
    return out;
  }
  for (;;) {
    auto z = isotropy_ff(psi, budget);
    if (!z) break;
    const Vec x = combine(*z, ad, f, n);
    out.witnesses.push_back(x);
    std::size_t pick = ad.size();
    Element bxy;
    for (std::size_t i = 0; i < ad.size(); ++i) {
      bxy = polar(phi, x, ad[i]);
      if (!bxy.is_zero()) {
        pick = i;
        break;
      }
    }
    if (pick == ad.size()) fail(ErrorCode::Internal, "isotropic vector in an anisotropic radical");
    Vec y = ad[pick];
    const Element bi = inv(bxy);
    for (auto& e : y) e = e * bi;
    const Element py = evaluate(phi, y);
    for (int k = 0; k < n; ++k) y[static_cast<std::size_t>(k)] = y[static_cast<std::size_t>(k)] + py * x[static_cast<std::size_t>(k)];
    std::vector<Vec> rest;
    Matrix acc{x, y};
    for (const auto& a : ad) {
      Vec v = a;
      const Element bvy = polar(phi, v, y), bvx = polar(phi, v, x);
      for (int k = 0; k < n; ++k) {
        v[static_cast<std::size_t>(k)] = v[static_cast<std::size_t>(k)] + bvy * x[static_cast<std::size_t>(k)] + bvx * y[static_cast<std::size_t>(k)];
      }
      if (all_zero(v)) continue;
      acc.push_back(v);
      if (rank(acc, f) == static_cast<int>(acc.size())) {
        rest.push_back(v);
      } else {
        acc.pop_back();
      }
      if (static_cast<int>(rest.size()) + 2 == static_cast<int>(ad.size())) break;
    }
    ++out.i_W;
    W = rest;
    psi = restrict_form(phi, W, &ad);
  }
  out.anisotropic_part = psi;
  return out;
}

// ---------------------------------------------------------------- isometry

IsometryReport isometry_test(const QuadraticForm& phi0, const QuadraticForm& psi0) {
  Field f = common_field(phi0.field(), psi0.field());
  const QuadraticForm phi = phi0.embed(f), psi = psi0.embed(f);
  IsometryReport rep;
  auto add = [&](const std::string& k, const std::string& a, const std::string& b) {
    rep.invariants.push_back({k, {a, b}});
  };
  add("dim", std::to_string(phi.dim()), std::to_string(psi.dim()));
  if (f.is_finite()) {
    rep.regime = "finite field";
    const FiniteClass a = finite_class(phi), b = finite_class(psi);
    add("i_W", std::to_string(a.i_W), std::to_string(b.i_W));
    add("i_d", std::to_string(a.i_d), std::to_string(b.i_d));
    add("anisotropic_dim", std::to_string(a.an_dim), std::to_string(b.an_dim));
    if (phi.s() == 0 && psi.s() == 0) {
      add("arf", std::to_string(arf_invariant(phi)), std::to_string(arf_invariant(psi)));
    }
    rep.isometric = a == b;
    return rep;
  }
  if (phi.is_quasilinear() && psi.is_quasilinear() && f.is_rational_tower()) {
    rep.regime = "quasilinear over a rational tower";
    const int ra = square_span_rank(phi.diag(), f), rb = square_span_rank(psi.diag(), f);
    add("square_span_rank", std::to_string(ra), std::to_string(rb));
    const bool same = same_square_span(phi.diag(), psi.diag(), f);
    add("same_square_span", same ? "yes" : "no", same ? "yes" : "no");
    rep.isometric = phi.dim() == psi.dim() && same;
    return rep;
  }
  fail(ErrorCode::Unsupported, "isometry test over " + f.to_string() + " for non-quasilinear forms");
}

// ---------------------------------------------------- residue certificates

namespace {

std::vector<Place> default_places(const QuadraticForm& phi) {
  Field f = phi.field();
  std::vector<Place> out;
  if (f.is_laurent()) {
    out.push_back(Place::laurent(f));
    return out;
  }
  if (!f.is_rational()) return out;
  out.push_back(Place::top_variable(f));
  if (!f.base().is_finite()) return out;
  std::vector<Poly> polys;
  auto collect = [&](const Element& e) {
    if (e.is_zero()) return;
    for (const Poly& p : {e.num(), e.den()}) {
      if (p.degree() < 1) continue;
      for (const auto& [g, m] : factor_univariate(p).factors) polys.push_back(g);
    }
  };
  for (const auto& p : phi.planes()) {
    collect(p.a);
    collect(p.b);
  }
  for (const auto& c : phi.diag()) collect(c);
  std::sort(polys.begin(), polys.end(), poly_less);
  polys.erase(std::unique(polys.begin(), polys.end()), polys.end());
  for (const auto& g : polys) {
    if (g.degree() == 1 && g.coeff(0).is_zero()) continue;  // the top variable
    out.push_back(Place::finite(f, g));
  }
  return out;
}

// phi = phi0 + pi*phi1 with unit blocks; returns the two residue forms.
std::optional<std::pair<QuadraticForm, QuadraticForm>> residue_split(const QuadraticForm& phi, const Place& p) {
  try {
    const Field rf = p.residue_field();
    const Element pi = uniformizer(p);
    std::vector<Plane> planes[2];
    std::vector<Element> diag[2];
    for (const auto& pl : phi.planes()) {
      if (pl.a.is_zero() || pl.b.is_zero()) return std::nullopt;
      const Element ab = pl.a * pl.b;
      if (valuation(ab, p) < 0) return std::nullopt;
      const int v = valuation(pl.a, p);
      const Element unit = pl.a * pow(pi, -v);
      const Element ru = residue(unit, p), rab = residue(ab, p);
      planes[v & 1].push_back(Plane{ru, rab * inv(ru)});
    }
    for (const auto& c : phi.diag()) {
      if (c.is_zero()) return std::nullopt;
      const int v = valuation(c, p);
      diag[v & 1].push_back(residue(c * pow(pi, -v), p));
    }
    return std::make_pair(QuadraticForm(rf, planes[0], diag[0]), QuadraticForm(rf, planes[1], diag[1]));
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::optional<CertificateNode> certify(const QuadraticForm& phi, const std::vector<Place>& given, int depth) {
  CertificateNode node;
  node.form = phi;
  if (phi.dim() == 0) {
    node.exhausted = true;
    return node;
  }
  if (phi.field().is_finite()) {
    try {
      if (isotropy_ff(phi)) return std::nullopt;
    } catch (const Error&) {
      return std::nullopt;
    }
    node.exhausted = true;
    return node;
  }
  if (depth > 16) return std::nullopt;
  const std::vector<Place> places = given.empty() ? default_places(phi) : given;
  for (const auto& p : places) {
    auto split = residue_split(phi, p);
    if (!split) continue;
    auto c0 = certify(split->first, {}, depth + 1);
    if (!c0) continue;
    auto c1 = certify(split->second, {}, depth + 1);
    if (!c1) continue;
    node.place = p;
    node.children = {std::move(*c0), std::move(*c1)};
    return node;
  }
  return std::nullopt;
}

}  // namespace

std::optional<CertificateNode> residue_anisotropy(const QuadraticForm& phi, const std::vector<Place>& places) {
  return certify(phi, places, 0);
}

bool verify_certificate(const CertificateNode& node) {
  if (node.is_leaf()) {
    if (!node.exhausted || !node.children.empty()) return false;
    if (node.form.dim() == 0) return true;
    if (!node.form.field().is_finite()) return false;
    return !isotropy_ff(node.form).has_value();
  }
  if (node.children.size() != 2) return false;
  auto split = residue_split(node.form, *node.place);
  if (!split) return false;
  if (!(split->first == node.children[0].form) || !(split->second == node.children[1].form)) return false;
  return verify_certificate(node.children[0]) && verify_certificate(node.children[1]);
}

// ---------------------------------------------------- quadratic extensions

QuadExtResult quad_ext_isotropy(const QuadraticForm& phi0, ExtensionKind kind, const Element& d0,
                                std::uint64_t budget) {
  Field f = common_field(phi0.field(), d0.field());
  const QuadraticForm phi = phi0.embed(f);
  const Element d = d0.embed(f);
  QuadExtResult out;
  if (kind == ExtensionKind::Inseparable) {
    if (is_square(d)) fail(ErrorCode::PreconditionViolated, "d is a square; the extension is trivial");
  } else {
    auto as = artin_schreier_solve(d);
    if (as.root) fail(ErrorCode::PreconditionViolated, "d lies in wp(F); the extension is trivial");
    if (!as.decided) fail(ErrorCode::Unsupported, "cannot decide whether d lies in wp(F)");
  }
  if (is_isotropic(phi)) {
    out.isotropic = true;
    out.note = "isotropic over the base field already";
    return out;
  }
  if (kind == ExtensionKind::Inseparable) {
    if (!phi.is_quasilinear()) {
      fail(ErrorCode::Unsupported, "inseparable criterion implemented for quasilinear forms");
    }
    // phi(x) + d phi(y) = 0 is a square-class dependency of (c, d c).
    std::vector<Element> cs = phi.diag();
    for (const auto& c : phi.diag()) cs.push_back(d * c);
    auto dep = square_dependency(cs, f);
    if (!dep) {
      out.note = "no c with c<1,d> dominated by phi: square spans independent";
      return out;
    }
    const std::size_t s = phi.diag().size();
    Vec x(dep->begin(), dep->begin() + static_cast<long>(s));
    Vec y(dep->begin() + static_cast<long>(s), dep->end());
    out.isotropic = true;
    out.c = evaluate(phi, y);
    out.witness = {y, x};
    out.note = "c<1,d> dominated by phi";
    return out;
  }
  if (!f.is_finite()) {
    if (phi.is_quasilinear()) {
      out.note = "anisotropic quasilinear forms stay anisotropic over separable extensions";
      return out;
    }
    fail(ErrorCode::Unsupported, "separable criterion over " + f.to_string() + " needs a finite field");
  }
  const FiniteField& F = f.ff();
  for (std::uint32_t cv = 1; cv < F.size(); ++cv) {
    const Element c = Element::finite(f, cv);
    const QuadraticForm sigma = scale(c, QuadraticForm::plane(f.one(), d));
    if (sigma.dim() > phi.dim()) break;
    auto w = dominance_search(sigma, phi, true, budget);
    if (w) {
      out.isotropic = true;
      out.c = c;
      out.witness = w->columns;
      out.note = "c[1,d] is a subform of phi";
      return out;
    }
  }
  out.note = "no c with c[1,d] a subform of phi";
  return out;
}

FunctionFieldVerdict isotropy_over_form_function_field(const QuadraticForm& phi0, const QuadraticForm& psi0) {
  Field f = common_field(phi0.field(), psi0.field());
  if (!f.is_finite()) fail(ErrorCode::UnsupportedBase, "function field isotropy needs a finite base field");
  if (psi0.dim() < 1) fail(ErrorCode::PreconditionViolated, "psi must have dimension at least 1");
  const QuadraticForm phi = phi0.embed(f), psi = psi0.embed(f);
  FunctionFieldVerdict out;
  auto& tr = out.trace;
  if (is_isotropic(phi)) {
    tr.push_back("phi is isotropic over F, hence over every extension");
    out.isotropic = true;
    return out;
  }
  tr.push_back("phi is anisotropic over F");
  // Invariants instead of an explicit decomposition: psi may be large (a
  // Pfister multiple), and only its class matters here.
  const FiniteClass wd = finite_class(psi);
  if (wd.i_d > 0) {
    tr.push_back("psi has defect " + std::to_string(wd.i_d) + "; F(psi)/F(psi_nd) is purely transcendental");
  }
  if (wd.i_W > 0 || wd.an_dim <= 1) {
    if (wd.i_W > 0) {
      tr.push_back("psi_nd is isotropic; F(psi_nd)/F is purely transcendental (or trivial when psi_nd = H)");
    } else {
      tr.push_back("psi_nd has dimension " + std::to_string(wd.an_dim) + "; F(psi) = F up to a purely transcendental extension");
    }
    tr.push_back("isotropy is unchanged by purely transcendental extensions: phi stays anisotropic");
    return out;
  }
  tr.push_back("psi_nd is anisotropic; over a finite field it is a binary form [1,d] with tr(d) = 1 (forms of dimension >= 3 with a nonsingular part are isotropic)");
  if (phi.is_quasilinear()) {
    tr.push_back("phi is quasilinear and psi is not: phi stays anisotropic over F(psi)");
    return out;
  }
  const FiniteField& K = f.ff();
  std::uint32_t dv = 1;
  while (K.trace(dv) != 1) ++dv;
  const Element d = Element::finite(f, dv);
  tr.push_back("F(psi) = F(wp^-1(" + d.to_string() + "))(y) with y transcendental");
  const QuadExtResult q = quad_ext_isotropy(phi, ExtensionKind::Separable, d);
  if (q.isotropic) {
    tr.push_back("separable criterion: c = " + q.c->to_string() + " gives c[1,d] inside phi");
  } else {
    tr.push_back("separable criterion: no c in F* with c[1,d] inside phi");
  }
  out.isotropic = q.isotropic;
  return out;
}

// -------------------------------------------------------- bounded search

std::optional<Vec> bounded_isotropy_search(const QuadraticForm& phi, int degree_bound, std::uint64_t budget) {
  Field f = phi.field();
  if (degree_bound < 0) fail(ErrorCode::PreconditionViolated, "degree bound must be nonnegative");
  if (f.is_finite()) return isotropy_ff(phi, budget);
  if (!f.is_rational_tower()) fail(ErrorCode::UnsupportedField, "bounded search needs a rational tower");
  const int n = phi.dim();
  if (n == 0) return std::nullopt;
  std::uint64_t spent = 0;
  for (int d = 0; d <= degree_bound; ++d) {
    const std::vector<Element> table = bounded_polynomials(f, d, budget);
    const std::uint64_t values = table.size();
    power_checked(values, n, budget);
    std::vector<std::uint64_t> idx(static_cast<std::size_t>(n), 0);
    for (;;) {
      int pos = n - 1;
      while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == values) {
        idx[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
      if (++spent > budget) fail(ErrorCode::BudgetExceeded, "bounded search exceeds the budget");
      Vec v;
      for (auto i : idx) v.push_back(table[i]);
      if (evaluate(phi, v).is_zero()) return v;
    }
  }
  return std::nullopt;
}

// -------------------------------------------------- finite field embeddings

namespace {

std::uint32_t generator_image(int j, const Field& target) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::uint32_t> cache;
  const FiniteField& T = target.ff();
  const std::pair<int, int> key{j, T.bits()};
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  const std::uint32_t m = FiniteField::pinned_modulus(j);
  for (std::uint32_t g = 0; g < T.size(); ++g) {
    std::uint32_t acc = 0, pw = 1;
    for (int i = 0; i <= j; ++i) {
      if ((m >> i) & 1) acc ^= pw;
      pw = T.mul(pw, g);
    }
    if (acc == 0) {
      cache[key] = g;
      return g;
    }
  }
  fail(ErrorCode::WrongField, "GF(2^" + std::to_string(j) + ") does not embed in " + target.to_string());
}

}  // namespace

Element finite_embedding(const Element& x, Field target) {
  Field src = x.field();
  if (src == target) return x;
  if (!src.is_finite() || !target.is_finite() || src.base().valid() || target.base().valid()) {
    fail(ErrorCode::UnsupportedField, "embedding between pinned finite fields only");
  }
  const int j = src.ff().bits(), k = target.ff().bits();
  if (k % j != 0) fail(ErrorCode::WrongField, src.to_string() + " does not embed in " + target.to_string());
  if (j == 1) return Element::finite(target, x.ff_value());
  const FiniteField& T = target.ff();
  const std::uint32_t g = generator_image(j, target);
  std::uint32_t acc = 0, pw = 1;
  for (int i = 0; i < j; ++i) {
    if ((x.ff_value() >> i) & 1) acc ^= pw;
    pw = T.mul(pw, g);
  }
  return Element::finite(target, acc);
}

QuadraticForm finite_embedding(const QuadraticForm& phi, Field target) {
  std::vector<Plane> planes;
  for (const auto& p : phi.planes()) planes.push_back(Plane{finite_embedding(p.a, target), finite_embedding(p.b, target)});
  std::vector<Element> diag;
  for (const auto& c : phi.diag()) diag.push_back(finite_embedding(c, target));
  return QuadraticForm(target, std::move(planes), std::move(diag));
}

}  // namespace c2qf
