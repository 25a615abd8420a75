#include "c2qf/certify.hpp"

#include <algorithm>

#include "c2qf/valuegroups.hpp"
#include "enumerate.hpp"
#include "finite_form.hpp"

namespace c2qf {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds:
      return "holds";
    case Verdict::Fails:
      return "fails";
    case Verdict::Supported:
      return "supported";
    case Verdict::Refuted:
      return "refuted";
    case Verdict::Undecided:
      return "undecided";
  }
  return "?";
}

RepresentationCheck verify_representation(const RepresentationCertificate& cert) {
  Field L = cert.target.field();
  RepresentationCheck out;
  Element prod = cert.scalar.embed(L);
  for (const auto& v : cert.vectors) {
    if (static_cast<int>(v.size()) != cert.form.dim()) {
      fail(ErrorCode::DimensionMismatch, "certificate vector of length " + std::to_string(v.size()));
    }
    prod = prod * evaluate(cert.form, embed_vector(v, common_field(L, v.empty() ? L : v[0].field())));
  }
  if (prod.field() != L) {
    fail(ErrorCode::MixedFields, "certificate vectors live outside the field of the target");
  }
  if (prod.is_zero()) return out;
  out.residual = cert.target / prod;
  out.pass = out.residual->is_one();
  return out;
}

Poly evaluate_poly(const QuadraticForm& phi, const std::vector<Poly>& v) {
  if (static_cast<int>(v.size()) != phi.dim()) fail(ErrorCode::DimensionMismatch, "vector length");
  Field k = phi.field();
  Poly acc(k);
  const int r = phi.r();
  for (int i = 0; i < r; ++i) {
    const Poly& x = v[static_cast<std::size_t>(2 * i)];
    const Poly& y = v[static_cast<std::size_t>(2 * i + 1)];
    const Plane& p = phi.planes()[static_cast<std::size_t>(i)];
    acc = acc + (x * x).scale(p.a) + x * y + (y * y).scale(p.b);
  }
  for (int j = 0; j < phi.s(); ++j) {
    const Poly& z = v[static_cast<std::size_t>(2 * r + j)];
    acc = acc + (z * z).scale(phi.diag()[static_cast<std::size_t>(j)]);
  }
  return acc;
}

namespace {

// A form given over the top field with constant coefficients, moved down to F.
QuadraticForm form_over(const QuadraticForm& phi, Field F) {
  if (phi.field() == F || !phi.field().is_rational() || phi.field().base() != F) return phi.embed(F);
  auto down = [&](const Element& e) {
    if (!e.lies_in(F)) fail(ErrorCode::MalformedCertificate, "form coefficient " + e.to_string() + " is not constant");
    return e.restrict_to(F);
  };
  std::vector<Plane> planes;
  for (const auto& p : phi.planes()) planes.push_back(Plane{down(p.a), down(p.b)});
  std::vector<Element> diag;
  for (const auto& c : phi.diag()) diag.push_back(down(c));
  return QuadraticForm(F, planes, diag);
}

void require_finite_one_variable(Field L) {
  if (!L.is_rational() || !L.base().is_finite()) {
    fail(ErrorCode::UnsupportedField, "one variable over a finite field expected, got " + L.to_string());
  }
}

Vec clear_denominators(const Vec& v, Field L) {
  const Element d = common_denominator(v, L);
  Vec out;
  for (const auto& e : v) out.push_back(e * d);
  return out;
}

QuadraticForm residue_form(const QuadraticForm& phi, const Place& p) {
  Field L = p.field;
  std::vector<Plane> planes;
  for (const auto& pl : phi.planes()) planes.push_back(Plane{residue(pl.a.embed(L), p), residue(pl.b.embed(L), p)});
  std::vector<Element> diag;
  for (const auto& c : phi.diag()) diag.push_back(residue(c.embed(L), p));
  return QuadraticForm(p.residue_field(), std::move(planes), std::move(diag));
}

// Lexicographically least alpha over the finite field with phi(alpha) = t.
std::optional<Vec> find_value(const QuadraticForm& phi, const Element& t, std::uint64_t budget) {
  const PackedForm P(phi);
  const int n = P.dim();
  const std::uint64_t q = P.F->size();
  const std::uint64_t total = power_checked(q, n, budget);
  const std::uint32_t want = t.embed(phi.field()).ff_value();
  std::vector<std::uint32_t> v(static_cast<std::size_t>(n));
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    std::uint64_t rest = idx;
    for (int i = n - 1; i >= 0; --i) {
      v[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(rest % q);
      rest /= q;
    }
    if (P.eval(v.data()) == want) return P.unpack(v);
  }
  return std::nullopt;
}

Vec scaled(const Vec& v, const Element& c) {
  Vec out;
  for (const auto& e : v) out.push_back(e * c);
  return out;
}

Element sqrt_finite(const Element& a) {
  return Element::finite(a.field(), a.field().ff().sqrt(a.ff_value()));
}

}  // namespace

// --------------------------------------------- certificate -> isotropy

ResidueWitness certificate_to_isotropy_witness(const RepresentationCertificate& cert) {
  Field L = cert.field();
  require_finite_one_variable(L);
  if (!verify_representation(cert).pass) fail(ErrorCode::CertificateInvalid, "certificate does not verify");
  if (!cert.target.den().is_one() || cert.target.num().degree() < 1) {
    fail(ErrorCode::PreconditionViolated, "target must be a nonconstant polynomial");
  }
  const Poly f = cert.target.num().monic();
  if (!is_irreducible(f)) fail(ErrorCode::PreconditionViolated, "target is not irreducible");
  const Place place = Place::finite(L, f);
  const Element fe = Element::from_poly(L, f);
  std::vector<Vec> xs;
  for (const auto& v : cert.vectors) {
    Vec x = clear_denominators(v, L);
    // Remove f from vectors it divides entirely.
    for (int guard = 0; guard < 4096; ++guard) {
      const bool all = std::all_of(x.begin(), x.end(), [&](const Element& e) {
        return e.is_zero() || valuation(e, place) >= 1;
      });
      if (!all) break;
      for (auto& e : x) e = e / fe;
    }
    xs.push_back(std::move(x));
  }
  for (const auto& x : xs) {
    const Element val = evaluate(cert.form, x);
    if (val.is_zero() || valuation(val, place) < 1) continue;
    ResidueWitness out{f, place.residue_field(), {}};
    for (const auto& e : x) out.witness.push_back(residue(e, place));
    const QuadraticForm rf = residue_form(cert.form, place);
    const bool nonzero = std::any_of(out.witness.begin(), out.witness.end(), [](const Element& e) { return !e.is_zero(); });
    if (!nonzero || !evaluate(rf, out.witness).is_zero()) break;
    return out;
  }
  fail(ErrorCode::CertificateInvalid, "no vector of the certificate reduces to an isotropic vector");
}

// ------------------------------------------------- one-variable algorithm

namespace {

struct Representer {
  QuadraticForm phi;  // over the finite field F
  Field F;
  Field L;            // F(X)
  std::uint64_t budget;

  Element lift(const Poly& p) const { return Element::from_poly(L, p); }

  // phi isotropic and nondefective: f = phi(f x + y) for a hyperbolic pair.
  std::vector<Vec> universal(const Poly& f) const {
    const Vec x = *isotropy_ff(phi, budget);
    const int n = phi.dim();
    Vec y;
    Element b;
    for (int i = 0; i < n; ++i) {
      y = unit_vector(F, n, i);
      b = polar(phi, x, y);
      if (!b.is_zero()) break;
    }
    if (b.is_zero()) fail(ErrorCode::PreconditionViolated, "form is defective");
    y = scaled(y, inv(b));
    const Element py = evaluate(phi, y);
    for (int i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(i)] + py * x[static_cast<std::size_t>(i)];
    const Element fe = lift(f);
    Vec xi;
    for (int i = 0; i < n; ++i) xi.push_back(fe * x[static_cast<std::size_t>(i)].embed(L) + y[static_cast<std::size_t>(i)].embed(L));
    return {xi};
  }

  // f = X^2 + e1 X + e0 irreducible, phi anisotropic.
  std::optional<std::vector<Vec>> degree_two(const Poly& f) const {
    const Element e1 = f.coeff(1), e0 = f.coeff(0);
    if (e1.is_zero()) return std::nullopt;  // X^2 + c is never irreducible over a perfect field
    const FiniteField& K = F.ff();
    const Element base_c = e0 / square(e1);
    // X = e1 (Y + z) turns f into e1^2 (Y^2 + Y + c), c = base_c + z^2 + z.
    Element best_z = F.zero(), best_c = base_c;
    for (std::uint32_t z = 1; z < K.size(); ++z) {
      const Element ze = Element::finite(F, z);
      const Element c = base_c + square(ze) + ze;
      if (c.ff_value() < best_c.ff_value()) {
        best_c = c;
        best_z = ze;
      }
    }
    const QuadExtResult q = quad_ext_isotropy(phi, ExtensionKind::Separable, best_c, budget);
    if (!q.isotropic || !q.c) return std::nullopt;
    // phi(x u + y c' v) = c' (x^2 + x y + c y^2).
    const Element cp = *q.c;
    const Vec& u = q.witness[0];
    const Vec& v = q.witness[1];
    const Element Y = L.gen() / e1.embed(L) + best_z.embed(L);
    const Element mu = (e1 / sqrt_finite(cp)).embed(L);
    Vec xi;
    for (std::size_t i = 0; i < u.size(); ++i) {
      xi.push_back((Y * u[i].embed(L) + (cp * v[i]).embed(L)) * mu);
    }
    return std::vector<Vec>{xi};
  }

  std::optional<std::vector<Vec>> represent(const Poly& f, int depth) const {
    if (depth > 64) fail(ErrorCode::Internal, "representation recursion too deep");
    if (is_isotropic(phi)) return universal(f);
    if (f.degree() == 1) return std::nullopt;  // residue field is F itself
    const Place place = Place::finite(L, f);
    const QuadraticForm phiK = residue_form(phi, place);
    const auto w = isotropy_ff(phiK, budget);
    if (!w) return std::nullopt;
    if (f.degree() == 2) {
      auto r = degree_two(f);
      if (r) return r;
    }
    // Lift the residue witness: xi' of degree < deg f with f | phi(xi').
    std::vector<Poly> xi;
    for (const auto& e : *w) xi.push_back(lift_from(e, F, f.degree()));
    Poly P = evaluate_poly(phi, xi);
    Poly h = P / f;
    const Element a = h.lead();
    h = h.monic();
    // Strip irreducible factors of h dividing every entry of xi.
    for (bool again = true; again;) {
      again = false;
      for (const auto& [g, m] : factor_univariate(h).factors) {
        const bool all = std::all_of(xi.begin(), xi.end(), [&](const Poly& p) { return (p % g).is_zero(); });
        if (!all) continue;
        for (auto& p : xi) p = p / g;
        h = h / (g * g);
        again = true;
        break;
      }
    }
    // f = phi(xi / sqrt(a)) * prod over factors g of h of 1/g.
    std::vector<Vec> out;
    const Element mu = inv(sqrt_finite(a)).embed(L);
    Vec first;
    for (const auto& p : xi) first.push_back(lift(p) * mu);
    out.push_back(std::move(first));
    if (h.degree() > 0) {
      for (const auto& [g, m] : factor_univariate(h).factors) {
        auto sub = represent(g, depth + 1);
        if (!sub) fail(ErrorCode::Internal, "factor of h without representation");
        // 1/g = g * (1/g)^2: divide one vector by g.
        (*sub)[0] = scaled((*sub)[0], inv(lift(g)));
        for (int i = 0; i < m; ++i) out.insert(out.end(), sub->begin(), sub->end());
      }
    }
    return out;
  }
};

}  // namespace

std::optional<RepresentationCertificate> represent_irreducible_1var(const QuadraticForm& phi, const Poly& f0,
                                                                    const std::string& var,
                                                                    std::uint64_t budget) {
  Field F = common_field(phi.field(), f0.coeff_field());
  if (!F.is_finite()) fail(ErrorCode::UnsupportedBase, "representation needs a finite base field");
  const QuadraticForm phiF = phi.embed(F);
  std::vector<Element> cs;
  for (const auto& c : f0.coeffs()) cs.push_back(c.embed(F));
  const Poly f(F, cs);
  if (f.degree() < 1 || !f.is_monic()) fail(ErrorCode::PreconditionViolated, "f must be monic of positive degree");
  if (!is_irreducible(f)) fail(ErrorCode::PreconditionViolated, "f must be irreducible");
  const FiniteClass cl = finite_class(phiF);
  if (cl.i_d > 0 || phiF.dim() == 0) {
    fail(ErrorCode::PreconditionViolated, "phi must be nondefective and nonzero");
  }
  // Over a finite field a nonzero nondefective form represents 1.
  Representer rep{phiF, F, Field::rational(F, var), budget};
  auto vs = rep.represent(f, 0);
  if (!vs) return std::nullopt;
  RepresentationCertificate cert{phiF, Element::from_poly(rep.L, f), rep.L.one(), std::move(*vs)};
  if (!verify_representation(cert).pass) fail(ErrorCode::Internal, "representation certificate failed to verify");
  return cert;
}

// ------------------------------------------------------ leading coefficients

RepresentationCertificate leading_coeff_reduce(const RepresentationCertificate& cert, std::uint64_t budget) {
  Field L = cert.field();
  if (!L.is_rational()) fail(ErrorCode::MalformedCertificate, "certificate field has no top variable");
  if (!verify_representation(cert).pass) fail(ErrorCode::MalformedCertificate, "certificate does not verify");
  Field F = L.base();
  const QuadraticForm phi = form_over(cert.form, F);
  RepresentationCertificate out{phi, cert.target.num().lead() / cert.target.den().lead(), cert.scalar.restrict_to(F), {}};
  for (const auto& v : cert.vectors) {
    // Clear denominators in the top variable only.
    Poly l = Poly::constant(F.one());
    for (const auto& e : v) l = (l * e.den()) / gcd(l, e.den());
    std::vector<Poly> xi;
    int D = -1;
    for (const auto& e : v) {
      Poly p = (e * Element::from_poly(L, l)).num();
      D = std::max(D, p.degree());
      xi.push_back(std::move(p));
    }
    if (D < 0) fail(ErrorCode::MalformedCertificate, "zero vector in certificate");
    Vec alpha;
    for (const auto& p : xi) alpha.push_back(p.degree() == D ? p.lead() : F.zero());
    if (evaluate(phi, alpha).is_zero()) {
      // Top coefficients cancel (phi isotropic): use any vector with the
      // right value instead.
      const Element lc = evaluate_poly(phi, xi).lead();
      if (!F.is_finite()) fail(ErrorCode::MalformedCertificate, "top-degree vector is isotropic");
      auto a = find_value(phi, lc, budget);
      if (!a) fail(ErrorCode::MalformedCertificate, "leading coefficient not represented");
      alpha = *a;
    }
    out.vectors.push_back(std::move(alpha));
  }
  if (!verify_representation(out).pass) fail(ErrorCode::MalformedCertificate, "reduced certificate does not verify");
  return out;
}

// ---------------------------------------------------------- reducible f

EbfReport ebf_analyze(const QuadraticForm& phi0, const Element& f, int search_bound, std::uint64_t budget) {
  Field L = f.field();
  require_finite_one_variable(L);
  Field F = L.base();
  const QuadraticForm phi = phi0.embed(F);
  if (f.is_zero() || !f.den().is_one()) fail(ErrorCode::PreconditionViolated, "f must be a nonzero polynomial");
  const FiniteClass cl = finite_class(phi);
  if (cl.i_d > 0 || phi.dim() == 0) fail(ErrorCode::PreconditionViolated, "phi must be nondefective and nonzero");
  EbfReport rep;
  const Factorization fac = factor_univariate(f.num());
  rep.lead = fac.lead;
  const ValueSet T = group_closure(represented_set(phi, 1, budget));
  rep.lead_in_group = T.contains(rep.lead);
  rep.notes.push_back("<D*(phi)> over " + F.to_string() + " = " + T.to_string());
  bool all_iso = true;
  Poly g = Poly::constant(F.one());
  for (const auto& [p, m] : fac.factors) {
    FactorReport fr;
    fr.factor = p;
    fr.multiplicity = m;
    for (int i = 0; i < m / 2; ++i) g = g * p;
    if (m % 2 == 1) {
      const Place place = Place::finite(L, p);
      fr.residue_field = place.residue_field();
      fr.residue_witness = isotropy_ff(residue_form(phi, place), budget);
      if (fr.residue_witness) {
        fr.certificate = represent_irreducible_1var(phi, p, L.var(), budget);
      } else {
        all_iso = false;
        rep.notes.push_back("phi is anisotropic over F[X]/(" + p.to_string(L.var()) + ")");
      }
    }
    rep.factors.push_back(std::move(fr));
  }
  const bool iii = rep.lead_in_group && all_iso;
  rep.condition_iii = iii ? Verdict::Holds : Verdict::Fails;
  bool ii = rep.lead_in_group;
  for (const auto& fr : rep.factors) {
    if (fr.multiplicity % 2 == 1 && !fr.certificate) ii = false;
  }
  rep.condition_ii = ii ? Verdict::Holds : Verdict::Fails;
  if (ii) {
    // f = phi(sqrt(a) alpha) * prod f_k * phi(g alpha) with phi(alpha) = 1.
    const Vec alpha = *find_value(phi, F.one(), budget);
    RepresentationCertificate cert{phi, f, L.one(), {}};
    if (!rep.lead.is_one()) cert.vectors.push_back(embed_vector(scaled(alpha, sqrt_finite(rep.lead)), L));
    for (const auto& fr : rep.factors) {
      if (fr.certificate) cert.vectors.insert(cert.vectors.end(), fr.certificate->vectors.begin(), fr.certificate->vectors.end());
    }
    if (g.degree() > 0) cert.vectors.push_back(scaled(embed_vector(alpha, L), Element::from_poly(L, g)));
    if (cert.vectors.empty()) cert.vectors.push_back(embed_vector(alpha, L));
    if (!verify_representation(cert).pass) fail(ErrorCode::Internal, "assembled certificate failed to verify");
    rep.certificate = std::move(cert);
    rep.condition_i = Verdict::Holds;
  } else {
    // (i) implies (iii): an odd factor with anisotropic residue form, or a
    // leading coefficient outside <D*(phi)>, rules (i) out.
    rep.condition_i = Verdict::Fails;
    rep.notes.push_back("(i) fails: any product representation would reduce to an isotropic vector modulo each odd factor");
  }
  rep.bounded_search_bound = search_bound;
  try {
    rep.bounded_search_found = membership_bounded(f, phi, 1, search_bound, budget).has_value();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded) throw;
    rep.notes.push_back("bounded membership search exceeded its budget");
  }
  if (rep.bounded_search_found && rep.condition_i == Verdict::Fails) {
    fail(ErrorCode::Internal, "bounded search contradicts a failed condition (i)");
  }
  return rep;
}

}  // namespace c2qf
