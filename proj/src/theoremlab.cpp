#include "c2qf/theoremlab.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>

#include "c2qf/parse.hpp"
#include "c2qf/tower.hpp"
#include "c2qf/valuegroups.hpp"
#include "enumerate.hpp"

namespace c2qf {

std::optional<bool> decided_value(Verdict v) {
  switch (v) {
    case Verdict::Holds:
      return true;
    case Verdict::Fails:
    case Verdict::Refuted:
      return false;
    default:
      return std::nullopt;
  }
}

const ConditionResult& TheoremReport::condition(const std::string& id) const {
  for (const auto& c : conditions) {
    if (c.id == id) return c;
  }
  fail(ErrorCode::PreconditionViolated, "no condition " + id + " in report " + theorem);
}

void finalize(TheoremReport& r) {
  r.consistent = true;
  r.contradictions.clear();
  r.undecided.clear();
  auto find = [&](const std::string& id) -> const ConditionResult* {
    for (const auto& c : r.conditions) {
      if (c.id == id) return &c;
    }
    return nullptr;
  };
  for (const auto& group : r.equivalences) {
    std::vector<std::string> yes, no;
    for (const auto& id : group) {
      const ConditionResult* c = find(id);
      if (!c) continue;
      if (auto d = decided_value(c->verdict)) (*d ? yes : no).push_back(id);
    }
    if (!yes.empty() && !no.empty()) {
      r.contradictions.push_back("(" + yes.front() + ") decided true but (" + no.front() + ") decided false");
    }
  }
  for (const auto& [p, q] : r.implications) {
    const ConditionResult* a = find(p);
    const ConditionResult* b = find(q);
    if (!a || !b) continue;
    if (decided_value(a->verdict) == true && decided_value(b->verdict) == false) {
      r.contradictions.push_back("(" + p + ") holds but (" + q + ") fails");
    }
  }
  for (const auto& c : r.conditions) {
    if (c.expected) {
      const auto d = decided_value(c.verdict);
      if (d != c.expected) {
        r.contradictions.push_back("(" + c.id + ") expected " + (*c.expected ? "true" : "false") + ", got " +
                                   std::string(to_string(c.verdict)));
      }
    }
    if (c.verdict == Verdict::Undecided) r.undecided.push_back(c.id);
  }
  r.consistent = r.contradictions.empty();
}

namespace {

bool all_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Element& e) { return e.is_zero(); });
}

std::vector<Element> nonzero_elements(Field E) {
  std::vector<Element> out;
  for (std::uint32_t v = 1; v < E.ff().size(); ++v) out.push_back(Element::finite(E, v));
  return out;
}

Field require_pinned(const QuadraticForm& a, const QuadraticForm& b) {
  Field f = common_field(a.field(), b.field());
  if (!f.is_finite() || f.base().valid()) {
    fail(ErrorCode::UnsupportedBase, "base field must be a pinned finite field GF(2^k), got " + f.to_string());
  }
  return f;
}

std::vector<Field> finite_samples(Field F, int max_degree) {
  std::vector<Field> out;
  const int j = F.ff().bits();
  for (int k = j; k <= std::max(j, max_degree); k += j) out.push_back(Field::gf2k(k));
  return out;
}

// D*(phi) over a finite field, memoized: sweeps revisit the same forms.
const ValueSet& dset(const QuadraticForm& phi, std::uint64_t budget) {
  static std::mutex mu;
  static std::map<std::string, ValueSet> cache;
  const std::string key = phi.field().to_string() + "|" + phi.to_string();
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  ValueSet s = represented_set(phi, 1, std::max<std::uint64_t>(budget, kDefaultBudget));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(s)).first->second;
}

ValueSet scaled_set(const ValueSet& s, const Element& a) {
  ValueSet out(s.field());
  for (const auto& x : s.elements()) out.insert(x * a);
  return out;
}

std::string set_summary(const ValueSet& s) {
  if (s.size() + 1 == s.field().ff().size()) return s.field().to_string() + "*";
  return s.to_string();
}

// Coordinates of direct_sum(a, b): planes of a, planes of b, then the
// diagonals in the same order.
Vec join_vectors(const QuadraticForm& a, const Vec& u, const QuadraticForm& b, const Vec& v) {
  const std::size_t ra = 2 * a.planes().size(), rb = 2 * b.planes().size();
  Vec out(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(ra));
  out.insert(out.end(), v.begin(), v.begin() + static_cast<std::ptrdiff_t>(rb));
  out.insert(out.end(), u.begin() + static_cast<std::ptrdiff_t>(ra), u.end());
  out.insert(out.end(), v.begin() + static_cast<std::ptrdiff_t>(rb), v.end());
  return out;
}

// scale(c, phi) takes [a,b] to [ca, b/c]; the vector (x, c y) there has the
// value c phi(x, y).
Vec to_scaled(const QuadraticForm& phi, const Element& c, Vec v) {
  for (int i = 0; i < phi.r(); ++i) v[static_cast<std::size_t>(2 * i + 1)] *= c.embed(v[0].field());
  return v;
}

Vec from_scaled(const QuadraticForm& phi, const Element& c, Vec v) {
  return to_scaled(phi, inv(c), std::move(v));
}

Vec apply_columns(const Columns& m, const Vec& y, Field K, int rows) {
  Vec out = zero_vector(K, rows);
  for (std::size_t j = 0; j < m.size(); ++j) {
    for (int r = 0; r < rows; ++r) {
      out[static_cast<std::size_t>(r)] += m[j][static_cast<std::size_t>(r)].embed(K) * y[j];
    }
  }
  return out;
}

// Least vector (packed lex order) with phi(v) = t over a finite field.
std::optional<Vec> value_vector(const QuadraticForm& phi, const Element& t, std::uint64_t budget) {
  const int n = phi.dim();
  Field f = phi.field();
  const std::uint64_t q = f.ff().size();
  const std::uint64_t total = power_checked(q, n, std::max<std::uint64_t>(budget, kDefaultBudget));
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    Vec v(static_cast<std::size_t>(n));
    std::uint64_t rest = idx;
    for (int i = n - 1; i >= 0; --i) {
      v[static_cast<std::size_t>(i)] = Element::finite(f, static_cast<std::uint32_t>(rest % q));
      rest /= q;
    }
    if (evaluate(phi, v) == t) return v;
  }
  return std::nullopt;
}

// Generic vector (X1, ..., Xn) over F(X1)...(Xn).
Field generic_field(Field F, int n, const std::string& prefix) {
  Field K = F;
  for (int i = 1; i <= n; ++i) K = Field::rational(K, prefix + std::to_string(i));
  return K;
}

Vec generic_vector(Field K, int n, const std::string& prefix, int offset = 0) {
  Vec v;
  for (int i = 1; i <= n; ++i) v.push_back(K.variable(prefix + std::to_string(offset + i)));
  return v;
}

// For nondefective isotropic phi over a finite field: phi(t e + f) = t and
// phi(e + f) = 1 for a hyperbolic pair (e, f).
std::pair<Vec, Vec> hyperbolic_pair(const QuadraticForm& phi) {
  Field F = phi.field();
  const auto z = isotropy_ff(phi);
  if (!z) fail(ErrorCode::Internal, "hyperbolic pair of an anisotropic form");
  const int n = phi.dim();
  for (int i = 0; i < n; ++i) {
    Vec f = unit_vector(F, n, i);
    const Element b = polar(phi, *z, f);
    if (b.is_zero()) continue;
    for (auto& x : f) x = x / b;
    const Element pf = evaluate(phi, f);
    for (int k = 0; k < n; ++k) f[static_cast<std::size_t>(k)] += pf * (*z)[static_cast<std::size_t>(k)];
    return {*z, f};
  }
  fail(ErrorCode::PreconditionViolated, "isotropic vector in the radical: phi is defective");
}

// phi over E[Y]/(g) for phi with coefficients in E.
QuadraticForm residue_of_constant_form(const QuadraticForm& phi, const Place& p) {
  Field L = p.field;
  std::vector<Plane> planes;
  for (const auto& pl : phi.planes()) planes.push_back(Plane{residue(pl.a.embed(L), p), residue(pl.b.embed(L), p)});
  std::vector<Element> diag;
  for (const auto& c : phi.diag()) diag.push_back(residue(c.embed(L), p));
  return QuadraticForm(p.residue_field(), std::move(planes), std::move(diag));
}

Element line_value(const QuadraticForm& psiE, const Element& a, const Vec& v0, const Vec& v1, Field EY) {
  const Element Y = EY.gen();
  Vec u;
  for (std::size_t i = 0; i < v0.size(); ++i) u.push_back(v0[i].embed(EY) + Y * v1[i].embed(EY));
  return a.embed(EY) * evaluate(psiE.embed(EY), u);
}

// Searches lines v0 + Y v1 over E for f = a psi(v0 + Y v1) with an odd
// factor g such that phi stays anisotropic over E[Y]/(g).
//
// Such an f is outside <D*(phi)> over E(Y): in any product of values of phi
// equal to f times a square, some vector reduces to an isotropic vector
// modulo g. The same f refutes a psi(X) in <D*(phi)> over F(X1..Xn): the
// substitution X -> v0 + Y v1 is a chain of places X_i = (linear in X_j)
// whose residue fields are purely transcendental over E, so phi stays
// anisotropic at each step and membership would survive reduction.
std::optional<LineRefutation> line_refute(const QuadraticForm& phiE, const QuadraticForm& psiE, const Element& a,
                                          int trials) {
  if (isotropy_ff(phiE)) return std::nullopt;
  Field E = phiE.field();
  Field EY = Field::rational(E, "Y");
  const int n = psiE.dim();
  const std::uint64_t q = E.ff().size();
  const std::uint64_t N = power_checked(q, n, ~std::uint64_t{0} >> 1);
  auto vec = [&](std::uint64_t idx) {
    Vec v(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
      v[static_cast<std::size_t>(i)] = Element::finite(E, static_cast<std::uint32_t>(idx % q));
      idx /= q;
    }
    return v;
  };
  int tried = 0;
  for (std::uint64_t i1 = 1; i1 < N; ++i1) {
    const Vec v1 = vec(i1);
    for (std::uint64_t i0 = 0; i0 < N; ++i0) {
      if (tried++ >= trials) return std::nullopt;
      const Vec v0 = vec(i0);
      const Element f = line_value(psiE, a, v0, v1, EY);
      if (f.is_zero() || f.num().degree() < 1) continue;
      for (const auto& [g, m] : factor_univariate(f.num()).factors) {
        if (m % 2 == 0) continue;
        const Place p = Place::finite(EY, g);
        const QuadraticForm res = residue_of_constant_form(phiE, p);
        if (isotropy_ff(res)) continue;
        return LineRefutation{phiE, psiE, a, v0, v1, f, g, m, res};
      }
    }
  }
  return std::nullopt;
}

std::string refutation_text(const LineRefutation& r) {
  std::ostringstream os;
  os << "over " << r.f.field().to_string() << ": f = " << r.a.to_string() << "*psi(v0 + Y v1) with v0 = "
     << vector_to_string(r.v0) << ", v1 = " << vector_to_string(r.v1) << " gives f = " << r.f.to_string()
     << "; factor " << r.factor.to_string("Y") << " has multiplicity " << r.multiplicity
     << " and phi is anisotropic over the residue field, so f is outside <D*(phi)>";
  return os.str();
}

struct FiniteSample {
  Field E;
  bool in_class = true;
  std::string reason;
  QuadraticForm phi, psi;
};

// Evidence for "phi over F(psi)" gathered once and shared by the checks.
struct Direction {
  QuadraticForm phi, psi;
  Field F;
  FunctionFieldVerdict i;
  bool phi_isotropic = false;
  std::vector<Element> a_values;  // D*_F(psi)
  std::vector<FiniteSample> samples;
  std::optional<LineRefutation> refutation;
  // a psi(X) in D*(phi)^2 over F(X), one certificate per a.
  std::vector<RepresentationCertificate> generic;
  std::vector<EmbeddingRecord> generic_embeddings;
  bool generic_complete = false;
  // D*(psi) inside c D*(phi) over every extension.
  std::optional<EmbeddingRecord> inclusion;
  std::string inclusion_reason;
};

Direction analyze(const QuadraticForm& phi, const QuadraticForm& psi, bool need_phi_nd, bool need_psi_nd,
                  const SampleOptions& opt) {
  Direction d;
  d.F = require_pinned(phi, psi);
  d.phi = phi.embed(d.F);
  d.psi = psi.embed(d.F);
  d.i = isotropy_over_form_function_field(d.phi, d.psi);
  d.phi_isotropic = is_isotropic(d.phi);
  d.a_values = dset(d.psi, opt.budget).elements();
  for (Field E : finite_samples(d.F, opt.max_degree)) {
    FiniteSample s{E, true, "", finite_embedding(d.phi, E), finite_embedding(d.psi, E)};
    if (need_phi_nd && finite_class(s.phi).i_d > 0) {
      s.in_class = false;
      s.reason = "phi is defective over " + E.to_string();
    }
    if (need_psi_nd && finite_class(s.psi).i_d > 0) {
      s.in_class = false;
      s.reason = "psi is defective over " + E.to_string();
    }
    d.samples.push_back(std::move(s));
  }
  if (opt.rational && !d.a_values.empty()) {
    for (const auto& s : d.samples) {
      if (!s.in_class) continue;
      d.refutation = line_refute(s.phi, s.psi, finite_embedding(d.a_values.front(), s.E), opt.line_trials);
      if (d.refutation) break;
    }
  }
  // Constructions over F(X1..Xn).
  const int n = d.psi.dim();
  Field K = generic_field(d.F, n, "X");
  const Vec X = generic_vector(K, n, "X");
  const Element psiX = evaluate(d.psi.embed(K), X);
  d.generic_complete = !d.a_values.empty();
  for (const auto& a : d.a_values) {
    const Element target = a.embed(K) * psiX;
    if (d.phi_isotropic) {
      const auto [e, f] = hyperbolic_pair(d.phi);
      Vec xi, eta;
      for (std::size_t k = 0; k < e.size(); ++k) {
        xi.push_back(target * e[k].embed(K) + f[k].embed(K));
        eta.push_back((e[k] + f[k]).embed(K));
      }
      d.generic.push_back(RepresentationCertificate{d.phi, target, K.one(), {xi, eta}});
      continue;
    }
    bool found = false;
    if (d.psi.dim() <= d.phi.dim()) {
      for (const auto& c : nonzero_elements(d.F)) {
        const QuadraticForm sigma = scale(a, d.psi), cphi = scale(c, d.phi);
        auto w = dominance_search(sigma, cphi, false);
        if (!w) continue;
        auto eta = value_vector(d.phi, c, opt.budget);
        if (!eta) continue;
        d.generic_embeddings.push_back(EmbeddingRecord{sigma, cphi, w->columns});
        const Vec xi = from_scaled(d.phi, c, apply_columns(w->columns, to_scaled(d.psi, a, X), K, d.phi.dim()));
        d.generic.push_back(RepresentationCertificate{d.phi, target, K.one(), {xi, embed_vector(*eta, K)}});
        found = true;
        break;
      }
    }
    if (!found) d.generic_complete = false;
  }
  if (d.phi_isotropic) {
    d.inclusion_reason = "phi is isotropic and nondefective, so it contains H and represents everything";
  } else if (d.psi.dim() <= d.phi.dim()) {
    for (const auto& c : nonzero_elements(d.F)) {
      const QuadraticForm cphi = scale(c, d.phi);
      if (auto w = dominance_search(d.psi, cphi, false)) {
        d.inclusion = EmbeddingRecord{d.psi, cphi, w->columns};
        d.inclusion_reason = "psi is dominated by " + cphi.to_string() + ", so D*(psi) lies in " + c.to_string() +
                             "*D*(phi) over every extension";
        break;
      }
    }
  }
  return d;
}

bool inclusion_proved(const Direction& d) { return d.phi_isotropic || d.inclusion.has_value(); }

ConditionResult& add(TheoremReport& r, const std::string& id, const std::string& statement) {
  r.conditions.push_back(ConditionResult{});
  r.conditions.back().id = id;
  r.conditions.back().statement = statement;
  return r.conditions.back();
}

std::vector<std::string> sample_names(const Direction& d, bool rational) {
  std::vector<std::string> out;
  for (const auto& s : d.samples) {
    out.push_back(s.E.to_string() + (s.in_class ? "" : " (excluded: " + s.reason + ")"));
    if (rational && s.in_class) out.push_back(s.E.to_string() + "(Y)");
  }
  return out;
}

enum class SetKind { Square, NormGroup, TotalGroup };

// Compares value sets on the finite samples. `equal` asks for equality
// instead of inclusion psi -> phi.
void finite_sample_condition(ConditionResult& c, const Direction& d, SetKind kind, bool equal,
                             const SampleOptions& opt) {
  bool refuted = false;
  for (const auto& s : d.samples) {
    if (!s.in_class) continue;
    const ValueSet& dp = dset(s.phi, opt.budget);
    const ValueSet& ds = dset(s.psi, opt.budget);
    std::vector<std::pair<ValueSet, ValueSet>> cmp;  // (psi side, phi side)
    switch (kind) {
      case SetKind::Square:
        cmp.emplace_back(product_set(ds, ds), product_set(dp, dp));
        break;
      case SetKind::NormGroup:
        cmp.emplace_back(group_closure(product_set(ds, ds)), group_closure(product_set(dp, dp)));
        break;
      case SetKind::TotalGroup:
        if (equal) {
          cmp.emplace_back(group_closure(ds), group_closure(dp));
        } else {
          for (const auto& a : d.a_values) {
            cmp.emplace_back(group_closure(scaled_set(ds, finite_embedding(a, s.E))), group_closure(dp));
          }
        }
        break;
    }
    for (const auto& [x, y] : cmp) {
      const bool ok = equal ? x == y : x.subset_of(y);
      if (ok) {
        c.evidence.push_back(s.E.to_string() + ": " + set_summary(x) + (equal ? " = " : " inside ") + set_summary(y));
      } else {
        refuted = true;
        c.evidence.push_back(s.E.to_string() + ": " + set_summary(x) + (equal ? " != " : " not inside ") +
                             set_summary(y));
      }
    }
  }
  c.verdict = refuted ? Verdict::Refuted : Verdict::Supported;
}

void attach_line_refutation(ConditionResult& c, const LineRefutation& r, bool generic) {
  c.verdict = generic ? Verdict::Fails : Verdict::Refuted;
  c.evidence.push_back(refutation_text(r));
  if (generic) {
    c.evidence.push_back("specializing X -> v0 + Y v1 maps a*psi(X) to f, and phi stays anisotropic at every "
                         "intermediate residue field, so a*psi(X) is outside <D*(phi)> over F(X)");
  }
  c.refutations.push_back(r);
}

std::string describe(const QuadraticForm& phi) { return phi.to_string(); }

}  // namespace

// ------------------------------------------- isotropy over F(psi), (i)-(vii)

TheoremReport check_th44(const QuadraticForm& phi, const QuadraticForm& psi, const SampleOptions& opt) {
  if (psi.dim() < 2) fail(ErrorCode::PreconditionViolated, "dim psi must be at least 2");
  if (phi.dim() < 1) fail(ErrorCode::PreconditionViolated, "phi must be nonzero");
  const Field F = require_pinned(phi, psi);
  if (finite_class(phi.embed(F)).i_d > 0 || finite_class(psi.embed(F)).i_d > 0) {
    fail(ErrorCode::PreconditionViolated, "phi and psi must be nondefective");
  }
  const bool ql = psi.is_quasilinear();
  const Direction d = analyze(phi, psi, ql, false, opt);
  TheoremReport r;
  r.theorem = "th44";
  r.instance = "phi = " + describe(d.phi) + ", psi = " + describe(d.psi) + " over " + F.to_string();
  r.samples = sample_names(d, opt.rational);
  r.equivalences.push_back({"i", "ii", "iii", "iv", "v", "vi", "vii"});
  if (ql) r.notes.push_back("psi is quasilinear: samples with i_d(phi_E) > 0 are excluded");

  auto& c1 = add(r, "i", "phi is isotropic over F(psi)");
  c1.verdict = d.i.isotropic ? Verdict::Holds : Verdict::Fails;
  c1.evidence = d.i.trace;

  const struct {
    const char* id;
    const char* statement;
    SetKind kind;
  } sampled[] = {
      {"ii", "D*_E(psi)^2 inside D*_E(phi)^2 for every E", SetKind::Square},
      {"iv", "<D*_E(psi)^2> inside <D*_E(phi)^2> for every E", SetKind::NormGroup},
      {"vi", "<D*_E(a psi)> inside <D*_E(phi)> for every E and a in D*_F(psi)", SetKind::TotalGroup},
  };
  const struct {
    const char* id;
    const char* statement;
  } generic[] = {
      {"iii", "a psi(X) in D*(phi)^2 over F(X) for every a in D*_F(psi)"},
      {"v", "a psi(X) in <D*(phi)^2> over F(X) for every a in D*_F(psi)"},
      {"vii", "a psi(X) in <D*(phi)> over F(X) for every a in D*_F(psi)"},
  };
  for (int k = 0; k < 3; ++k) {
    {
      auto& c = add(r, generic[k].id, generic[k].statement);
      if (d.refutation) {
        attach_line_refutation(c, *d.refutation, true);
      } else if (d.generic_complete) {
        c.verdict = Verdict::Holds;
        c.representations = d.generic;
        c.embeddings = d.generic_embeddings;
        c.evidence.push_back(d.phi_isotropic ? "universal construction: phi(t e + f) = t for a hyperbolic pair (e, f)"
                                             : "dominance construction: a psi = c phi(M x), c = phi(eta)");
        if (k > 0) c.evidence.push_back("D*(phi)^2 lies inside the groups, so the certificates for (iii) apply");
      } else {
        // Bounded search over F(X1..Xn); absence is never a verdict.
        bool all = !d.a_values.empty();
        Field K = generic_field(F, d.psi.dim(), "X");
        const Element psiX = evaluate(d.psi.embed(K), generic_vector(K, d.psi.dim(), "X"));
        for (const auto& a : d.a_values) {
          try {
            auto cert = membership_bounded(a.embed(K) * psiX, d.phi, 2, opt.membership_bound, opt.budget);
            if (cert) {
              c.representations.push_back(*cert);
            } else {
              all = false;
            }
          } catch (const Error& e) {
            if (e.code() != ErrorCode::BudgetExceeded) throw;
            c.evidence.push_back("bounded membership search exceeded its budget");
            all = false;
          }
          if (!all) break;
        }
        c.verdict = all ? Verdict::Holds : Verdict::Undecided;
        if (!all) c.representations.clear();
      }
    }
    {
      auto& c = add(r, sampled[k].id, sampled[k].statement);
      finite_sample_condition(c, d, sampled[k].kind, false, opt);
      if (c.verdict != Verdict::Refuted && d.refutation) attach_line_refutation(c, *d.refutation, false);
    }
  }
  // Keep the conditions in their natural order.
  std::stable_sort(r.conditions.begin(), r.conditions.end(), [](const ConditionResult& a, const ConditionResult& b) {
    static const std::map<std::string, int> order{{"i", 1}, {"ii", 2}, {"iii", 3}, {"iv", 4},
                                                  {"v", 5}, {"vi", 6}, {"vii", 7}};
    return order.at(a.id) < order.at(b.id);
  });
  finalize(r);
  return r;
}

// ---------------------------------------------------- stable equivalence

TheoremReport check_stb(const QuadraticForm& phi, const QuadraticForm& psi, const SampleOptions& opt) {
  if (phi.dim() < 2 || psi.dim() < 2) fail(ErrorCode::PreconditionViolated, "both forms need dimension at least 2");
  const Field F = require_pinned(phi, psi);
  if (finite_class(phi.embed(F)).i_d > 0 || finite_class(psi.embed(F)).i_d > 0) {
    fail(ErrorCode::PreconditionViolated, "phi and psi must be nondefective");
  }
  const bool ql = phi.is_quasilinear() || psi.is_quasilinear();
  const Direction fw = analyze(phi, psi, ql, ql, opt);
  const Direction bw = analyze(psi, phi, ql, ql, opt);
  TheoremReport r;
  r.theorem = "stb";
  r.instance = "phi = " + describe(fw.phi) + ", psi = " + describe(fw.psi) + " over " + F.to_string();
  r.samples = sample_names(fw, opt.rational);
  r.equivalences.push_back({"a", "b", "c", "d", "e"});

  auto& a = add(r, "a", "phi and psi are stably birationally equivalent");
  a.verdict = fw.i.isotropic && bw.i.isotropic ? Verdict::Holds : Verdict::Fails;
  a.evidence.push_back(std::string("phi over F(psi): ") + (fw.i.isotropic ? "isotropic" : "anisotropic"));
  a.evidence.insert(a.evidence.end(), fw.i.trace.begin(), fw.i.trace.end());
  a.evidence.push_back(std::string("psi over F(phi): ") + (bw.i.isotropic ? "isotropic" : "anisotropic"));
  a.evidence.insert(a.evidence.end(), bw.i.trace.begin(), bw.i.trace.end());

  auto sampled = [&](const std::string& id, const std::string& st, SetKind kind) {
    auto& c = add(r, id, st);
    finite_sample_condition(c, fw, kind, true, opt);
    if (c.verdict == Verdict::Refuted) return;
    if (fw.refutation) {
      attach_line_refutation(c, *fw.refutation, false);
    } else if (bw.refutation) {
      attach_line_refutation(c, *bw.refutation, false);
    }
  };
  sampled("b", "D*_E(psi)^2 = D*_E(phi)^2 for every E", SetKind::Square);
  sampled("c", "<D*_E(psi)^2> = <D*_E(phi)^2> for every E", SetKind::NormGroup);

  auto& dd = add(r, "d", "D*(psi)^2 = D*(phi)^2 over F(Y1..Yn)");
  if (fw.refutation || bw.refutation) {
    attach_line_refutation(dd, fw.refutation ? *fw.refutation : *bw.refutation, true);
  } else if (inclusion_proved(fw) && inclusion_proved(bw)) {
    dd.verdict = Verdict::Holds;
    for (const Direction* x : {&fw, &bw}) {
      dd.evidence.push_back(x->inclusion_reason);
      if (x->inclusion) dd.embeddings.push_back(*x->inclusion);
    }
    dd.evidence.push_back("D*(psi) inside c D*(phi) gives D*(psi)^2 inside c^2 D*(phi)^2 = D*(phi)^2");
  } else {
    dd.verdict = Verdict::Undecided;
  }

  auto& e = add(r, "e", "<D*_E(psi)> = <D*_E(phi)> for every E");
  if (dset(fw.phi, opt.budget).contains(F.one()) && dset(fw.psi, opt.budget).contains(F.one())) {
    finite_sample_condition(e, fw, SetKind::TotalGroup, true, opt);
    if (e.verdict != Verdict::Refuted && (fw.refutation || bw.refutation)) {
      attach_line_refutation(e, fw.refutation ? *fw.refutation : *bw.refutation, false);
    }
  } else {
    e.verdict = Verdict::Undecided;
    e.evidence.push_back("1 is not represented by both forms; (e) is not part of the equivalence");
  }
  finalize(r);
  return r;
}

// --------------------------------------------------------------- X-sums

namespace {

std::optional<Vec> iso_vector(const QuadraticForm& phi) {
  return phi.field().is_finite() ? isotropy_ff(phi) : quasilinear_isotropy_tower(phi);
}

}  // namespace

TheoremReport check_xsum(const QuadraticForm& phi0, const QuadraticForm& phi1, const QuadraticForm& psi0,
                         const QuadraticForm& psi1, const SampleOptions& opt) {
  Field F = require_pinned(phi0, phi1);
  F = common_field(F, require_pinned(psi0, psi1));
  if (F.base().valid()) fail(ErrorCode::UnsupportedBase, "pinned finite base expected");
  const QuadraticForm p0 = phi0.embed(F), p1 = phi1.embed(F), s0 = psi0.embed(F), s1 = psi1.embed(F);
  for (const auto* f : {&p0, &p1, &s0, &s1}) {
    if (f->dim() < 1) fail(ErrorCode::PreconditionViolated, "every part must have dimension at least 1");
    if (finite_class(*f).i_d > 0) fail(ErrorCode::PreconditionViolated, "every part must be nondefective");
  }
  TheoremReport r;
  r.theorem = "xsum";
  r.instance = "phi = " + p0.to_string() + " + X*(" + p1.to_string() + "), psi = " + s0.to_string() + " + X*(" +
               s1.to_string() + ") over " + F.to_string() + "(X)";
  r.equivalences.push_back({"i", "ii", "iii"});

  // F(X)(psi) is F(Y1..Yn) with X = psi0(Y') / psi1(Y''): psi0 + X psi1 is
  // linear in X with coprime coefficients.
  const int n0 = s0.dim(), n1 = s1.dim();
  Field K = generic_field(F, n0 + n1, "Y");
  const Vec Y0 = generic_vector(K, n0, "Y"), Y1 = generic_vector(K, n1, "Y", n0);
  const Element Xv = evaluate(s0.embed(K), Y0) / evaluate(s1.embed(K), Y1);
  const QuadraticForm phiK = direct_sum(p0.embed(K), scale(Xv, p1.embed(K)));
  const QuadraticForm psiK = direct_sum(s0.embed(K), scale(Xv, s1.embed(K)));
  const Vec Y = join_vectors(s0, Y0, s1, to_scaled(s1, Xv, Y1));
  r.notes.push_back("model of F(X)(psi): " + K.to_string() + " with X = " + Xv.to_string());

  auto& c1 = add(r, "i", "phi is isotropic over F(X)(psi)");
  auto& model = c1.isotropic;
  model.push_back(IsotropyRecord{psiK, Y});  // psi has the generic zero in the model
  bool decided = false;
  {
    Field FX = Field::rational(F, "X");
    const QuadraticForm phiX = direct_sum(p0.embed(FX), scale(FX.gen(), p1.embed(FX)));
    for (int part = 0; part < 2 && !decided; ++part) {
      const QuadraticForm& pp = part == 0 ? p0 : p1;
      if (auto z = isotropy_ff(pp)) {
        const Vec zx = embed_vector(*z, FX);
        const Vec v = part == 0 ? join_vectors(p0, zx, p1, zero_vector(FX, p1.dim()))
                                : join_vectors(p0, zero_vector(FX, p0.dim()), p1, to_scaled(p1, FX.gen(), zx));
        c1.verdict = Verdict::Holds;
        c1.isotropic.push_back(IsotropyRecord{phiX, v});
        c1.evidence.push_back(std::string(part == 0 ? "phi0" : "phi1") + " is isotropic over F");
        decided = true;
      }
    }
  }
  if (!decided) {
    for (const auto& c : nonzero_elements(F)) {
      const QuadraticForm c0 = scale(c, p0), cc1 = scale(c, p1);
      // psi0 < c phi0 and psi1 < c phi1: (M0 Y', M1 Y'') is a zero.
      auto a0 = s0.dim() <= p0.dim() ? dominance_search(s0, c0, false) : std::nullopt;
      auto a1 = s1.dim() <= p1.dim() ? dominance_search(s1, cc1, false) : std::nullopt;
      if (a0 && a1) {
        const Vec u0 = from_scaled(p0, c, apply_columns(a0->columns, Y0, K, p0.dim()));
        const Vec u1 = from_scaled(p1, c, apply_columns(a1->columns, Y1, K, p1.dim()));
        const Vec v = join_vectors(p0, u0, p1, to_scaled(p1, Xv, u1));
        c1.isotropic.push_back(IsotropyRecord{phiK, v});
        c1.embeddings.push_back(EmbeddingRecord{s0, c0, a0->columns});
        c1.embeddings.push_back(EmbeddingRecord{s1, cc1, a1->columns});
        c1.evidence.push_back("psi0 < c phi0 and psi1 < c phi1 with c = " + c.to_string());
        decided = true;
        break;
      }
      // psi1 < c phi0 and psi0 < c phi1: (X M0 Y'', M1 Y') is a zero.
      auto b0 = s1.dim() <= p0.dim() ? dominance_search(s1, c0, false) : std::nullopt;
      auto b1 = s0.dim() <= p1.dim() ? dominance_search(s0, cc1, false) : std::nullopt;
      if (b0 && b1) {
        Vec u0 = from_scaled(p0, c, apply_columns(b0->columns, Y1, K, p0.dim()));
        for (auto& x : u0) x = x * Xv;
        const Vec u1 = from_scaled(p1, c, apply_columns(b1->columns, Y0, K, p1.dim()));
        const Vec v = join_vectors(p0, u0, p1, to_scaled(p1, Xv, u1));
        c1.isotropic.push_back(IsotropyRecord{phiK, v});
        c1.embeddings.push_back(EmbeddingRecord{s1, c0, b0->columns});
        c1.embeddings.push_back(EmbeddingRecord{s0, cc1, b1->columns});
        c1.evidence.push_back("psi1 < c phi0 and psi0 < c phi1 with c = " + c.to_string());
        decided = true;
        break;
      }
    }
    if (decided) c1.verdict = Verdict::Holds;
  }
  if (!decided && phiK.is_quasilinear()) {
    if (auto z = quasilinear_isotropy_tower(phiK)) {
      c1.verdict = Verdict::Holds;
      c1.isotropic.push_back(IsotropyRecord{phiK, *z});
      c1.evidence.push_back("quasilinear: square dependency in the model");
    } else {
      c1.verdict = Verdict::Fails;
      c1.anisotropic_leaves.push_back(phiK);
      c1.evidence.push_back("quasilinear: the entries are independent over the squares of the model");
    }
    decided = true;
  }
  if (!decided) {
    try {
      if (auto cert = residue_anisotropy(phiK)) {
        c1.verdict = Verdict::Fails;
        c1.anisotropy.push_back(*cert);
        c1.evidence.push_back("residue certificate of anisotropy over the model");
        decided = true;
      }
    } catch (const Error& e) {
      c1.evidence.push_back(std::string("residue certificate unavailable: ") + e.what());
    }
  }
  if (!decided) {
    try {
      if (auto z = bounded_isotropy_search(phiK, opt.membership_bound, opt.budget)) {
        c1.verdict = Verdict::Holds;
        c1.isotropic.push_back(IsotropyRecord{phiK, *z});
        c1.evidence.push_back("bounded search found an isotropic vector in the model");
        decided = true;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BudgetExceeded) throw;
      c1.evidence.push_back("bounded isotropy search exceeded its budget");
    }
  }
  const Verdict vi = c1.verdict;

  auto& c2 = add(r, "ii", "phi is isotropic over F((X))(psi)");
  if (vi == Verdict::Holds) {
    c2.verdict = Verdict::Holds;
    c2.evidence.push_back("F(X)(psi) embeds in F((X))(psi)");
  } else {
    c2.evidence.push_back("no decision procedure over F((X))(psi)");
  }

  auto& c3 = add(r, "iii", "D*_E(psi0) D*_E(psi1) inside D*_E(phi0) D*_E(phi1) for every E");
  bool refuted = false;
  for (Field E : finite_samples(F, opt.max_degree)) {
    const QuadraticForm e0 = finite_embedding(p0, E), e1 = finite_embedding(p1, E);
    const QuadraticForm f0 = finite_embedding(s0, E), f1 = finite_embedding(s1, E);
    bool in_class = true;
    for (const auto* f : {&e0, &e1, &f0, &f1}) in_class = in_class && finite_class(*f).i_d == 0;
    r.samples.push_back(E.to_string() + (in_class ? "" : " (excluded)"));
    if (!in_class) continue;
    const ValueSet lhs = product_set(dset(f0, opt.budget), dset(f1, opt.budget));
    const ValueSet rhs = product_set(dset(e0, opt.budget), dset(e1, opt.budget));
    if (lhs.subset_of(rhs)) {
      c3.evidence.push_back(E.to_string() + ": " + set_summary(lhs) + " inside " + set_summary(rhs));
    } else {
      refuted = true;
      c3.evidence.push_back(E.to_string() + ": " + set_summary(lhs) + " not inside " + set_summary(rhs));
    }
    if (refuted || !opt.rational || isotropy_ff(e0) || isotropy_ff(e1)) continue;
    // E(Y): a = psi0(w) psi1(v0 + Y v1) (or the mirror) is in the left side;
    // a is in the right side iff phi0 + a phi1 is isotropic.
    r.samples.push_back(E.to_string() + "(Y)");
    Field EY = Field::rational(E, "Y");
    int budget_left = std::min(opt.line_trials, 64);
    for (int side = 0; side < 2 && !refuted && budget_left > 0; ++side) {
      const QuadraticForm& fixed = side == 0 ? f0 : f1;
      const QuadraticForm& moving = side == 0 ? f1 : f0;
      const auto w = value_vector(fixed, E.one(), opt.budget);
      if (!w) continue;
      const int n = moving.dim();
      const std::uint64_t q = E.ff().size();
      const std::uint64_t N = power_checked(q, n, ~std::uint64_t{0} >> 1);
      for (std::uint64_t i1 = 1; i1 < N && !refuted && budget_left > 0; ++i1) {
        for (std::uint64_t i0 = 0; i0 < N && !refuted && budget_left-- > 0; ++i0) {
          Vec v0(static_cast<std::size_t>(n)), v1(static_cast<std::size_t>(n));
          std::uint64_t x0 = i0, x1 = i1;
          for (int k = n - 1; k >= 0; --k) {
            v0[static_cast<std::size_t>(k)] = Element::finite(E, static_cast<std::uint32_t>(x0 % q));
            v1[static_cast<std::size_t>(k)] = Element::finite(E, static_cast<std::uint32_t>(x1 % q));
            x0 /= q;
            x1 /= q;
          }
          const Element a = line_value(moving, E.one(), v0, v1, EY);  // times phi(w) = 1
          if (a.is_zero()) continue;
          const QuadraticForm test = direct_sum(e0.embed(EY), scale(a, e1.embed(EY)));
          std::string why;
          if (test.is_quasilinear()) {
            if (quasilinear_isotropy_tower(test)) continue;
            c3.anisotropic_leaves.push_back(test);
            why = "independent over the squares";
          } else {
            std::optional<CertificateNode> cert;
            try {
              cert = residue_anisotropy(test);
            } catch (const Error&) {
            }
            if (!cert) continue;
            c3.anisotropy.push_back(*cert);
            why = "residue certificate";
          }
          refuted = true;
          c3.evidence.push_back(E.to_string() + "(Y): a = " + a.to_string() + " lies in D*(psi0)D*(psi1) but " +
                                test.to_string() + " is anisotropic (" + why + "), so a is outside D*(phi0)D*(phi1)");
        }
      }
    }
  }
  c3.verdict = refuted ? Verdict::Refuted : Verdict::Supported;
  finalize(r);
  return r;
}

// ------------------------------------------------------ Pfister transfer

TheoremReport check_pfister_transfer(const QuadraticForm& phi, const QuadraticForm& psi, const BilinearPfister& pi) {
  Field F = require_pinned(phi, psi);
  if (pi.field.valid()) F = common_field(F, pi.field);
  for (const auto& a : pi.entries) {
    if (a.is_zero()) fail(ErrorCode::ZeroScale, "Pfister entries must be nonzero");
  }
  if (psi.dim() < 1) fail(ErrorCode::PreconditionViolated, "psi must be nonzero");
  BilinearPfister p{F, {}};
  for (const auto& a : pi.entries) p.entries.push_back(a.embed(F));
  const QuadraticForm ph = phi.embed(F), ps = psi.embed(F);
  const QuadraticForm tph = pfister_multiply(p, ph), tps = pfister_multiply(p, ps);
  TheoremReport r;
  r.theorem = "pfister_transfer";
  r.instance = "phi = " + ph.to_string() + ", psi = " + ps.to_string() + ", pi = " + p.to_string() + " over " +
               F.to_string();
  r.implications.emplace_back("hypothesis", "conclusion");
  if (p.fold() == 0) r.equivalences.push_back({"hypothesis", "conclusion"});
  const FunctionFieldVerdict h = isotropy_over_form_function_field(ph, ps);
  auto& c1 = add(r, "hypothesis", "phi is isotropic over F(psi)");
  c1.verdict = h.isotropic ? Verdict::Holds : Verdict::Fails;
  c1.evidence = h.trace;
  const FunctionFieldVerdict t = isotropy_over_form_function_field(tph, tps);
  auto& c2 = add(r, "conclusion", "pi*phi is isotropic over F(pi*psi)");
  c2.verdict = t.isotropic ? Verdict::Holds : Verdict::Fails;
  c2.evidence = t.trace;
  c2.evidence.insert(c2.evidence.begin(), "pi*phi = " + tph.to_string() + ", pi*psi = " + tps.to_string());
  if (!h.isotropic) r.notes.push_back("hypothesis false: no assertion about the conclusion");
  finalize(r);
  return r;
}

TheoremReport check_transitivity(const QuadraticForm& phi, const QuadraticForm& psi, const QuadraticForm& sigma) {
  Field F = common_field(require_pinned(phi, psi), require_pinned(psi, sigma));
  const QuadraticForm a = phi.embed(F), b = psi.embed(F), c = sigma.embed(F);
  TheoremReport r;
  r.theorem = "transitivity";
  r.instance = "phi = " + a.to_string() + ", psi = " + b.to_string() + ", sigma = " + c.to_string() + " over " +
               F.to_string();
  const auto ab = isotropy_over_form_function_field(a, b);
  const auto bc = isotropy_over_form_function_field(b, c);
  const auto ac = isotropy_over_form_function_field(a, c);
  auto verdict = [](bool x) { return x ? Verdict::Holds : Verdict::Fails; };
  add(r, "phi_psi", "phi is isotropic over F(psi)").verdict = verdict(ab.isotropic);
  add(r, "psi_sigma", "psi is isotropic over F(sigma)").verdict = verdict(bc.isotropic);
  add(r, "premise", "both of the above").verdict = verdict(ab.isotropic && bc.isotropic);
  add(r, "phi_sigma", "phi is isotropic over F(sigma)").verdict = verdict(ac.isotropic);
  if (finite_class(b).i_d == 0) {
    r.implications.emplace_back("premise", "phi_sigma");
  } else {
    r.notes.push_back("psi is defective: no assertion");
  }
  finalize(r);
  return r;
}

// ------------------------------------------------------ counterexamples

std::pair<TheoremReport, TheoremReport> run_counterexamples() {
  const Field F = parse_field("GF(2)(s)(t)");
  const Element one = F.one(), s = F.variable("s"), t = F.variable("t");
  const std::vector<Element> basis{one, s, t, s * t};

  auto independence = [&](TheoremReport& r) {
    auto& c = add(r, "two_independent", "{1, s, t, st} is linearly independent over F^2");
    const int rk = square_span_rank(basis, F);
    c.verdict = rk == 4 ? Verdict::Holds : Verdict::Fails;
    c.expected = true;
    c.evidence.push_back("rank of the 2-basis matrix: " + std::to_string(rk));
  };

  TheoremReport r1;
  r1.theorem = "counterexample1";
  const QuadraticForm phi = QuadraticForm::diagonal(F, {one, s});
  const QuadraticForm psi = QuadraticForm::diagonal(F, {one, s, t});
  const BilinearPfister pi{F, {s}};
  r1.instance = "phi = " + phi.to_string() + ", psi = " + psi.to_string() + ", pi = " + pi.to_string() + " over " +
                F.to_string();
  independence(r1);
  {
    auto& c = add(r1, "transfer_isotropic", "pi*phi is isotropic over F (hence over F(pi*psi))");
    const QuadraticForm pp = pfister_multiply(pi, phi);
    c.expected = true;
    if (auto z = quasilinear_isotropy_tower(pp)) {
      c.verdict = Verdict::Holds;
      c.isotropic.push_back(IsotropyRecord{pp, *z});
      c.evidence.push_back(pp.to_string() + " has the isotropic vector " + vector_to_string(*z));
    } else {
      c.verdict = Verdict::Fails;
    }
  }
  {
    auto& c = add(r1, "phi_over_F(psi)", "phi is isotropic over F(psi)");
    c.expected = false;
    // F(psi) = M(z) with M = GF(2)(s)(x)(y), t = (1 + s x^2)/y^2 and z
    // transcendental; t is transcendental over GF(2)(s), so F embeds in M.
    const Field M = parse_field("GF(2)(s)(x)(y)");
    const Element T = parse_element(M, "(1+s*x^2)/y^2");
    const Element sm = M.variable("s");
    const QuadraticForm psiM = QuadraticForm::diagonal(M, {M.one(), sm, T});
    const Vec gen{M.one(), M.variable("x"), M.variable("y")};
    c.isotropic.push_back(IsotropyRecord{psiM, gen});
    c.evidence.push_back("model of F(psi): " + M.to_string() + " with t = " + T.to_string() +
                         "; psi has the zero " + vector_to_string(gen) + " there");
    const QuadraticForm phiM = QuadraticForm::diagonal(M, {M.one(), sm});
    if (auto z = quasilinear_isotropy_tower(phiM)) {
      c.verdict = Verdict::Holds;
      c.isotropic.push_back(IsotropyRecord{phiM, *z});
    } else {
      c.verdict = Verdict::Fails;
      c.anisotropic_leaves.push_back(phiM);
      c.evidence.push_back("s is not a square in the model, so " + phiM.to_string() + " is anisotropic");
      if (auto cert = residue_anisotropy(phiM)) {
        c.anisotropy.push_back(*cert);
        c.evidence.push_back("residue certificate of anisotropy in the model");
      }
      try {
        const bool none = !bounded_isotropy_search(phiM, 1, 10'000'000).has_value();
        c.evidence.push_back(std::string("bounded search (partial degrees <= 1): ") +
                             (none ? "no isotropic vector" : "found a vector"));
      } catch (const Error& e) {
        c.evidence.push_back(std::string("bounded search skipped: ") + e.what());
      }
    }
  }
  r1.notes.push_back("the converse of the transfer fails: pi*phi is isotropic, phi over F(psi) is not");
  finalize(r1);

  TheoremReport r2;
  r2.theorem = "counterexample2";
  const QuadraticForm phi2 = QuadraticForm::diagonal(F, {one, s});
  const QuadraticForm psi2 = QuadraticForm::diagonal(F, {one, s * t});
  const BilinearPfister pi2{F, {t}};
  r2.instance = "phi' = " + phi2.to_string() + ", psi' = " + psi2.to_string() + ", pi' = " + pi2.to_string() +
                " over " + F.to_string();
  independence(r2);
  const QuadraticForm tp = pfister_multiply(pi2, phi2), ts = pfister_multiply(pi2, psi2);
  {
    auto& c = add(r2, "isometry", "pi'*phi' and pi'*psi' are isometric");
    c.expected = true;
    const IsometryReport iso = isometry_test(tp, ts);
    c.verdict = iso.isometric ? Verdict::Holds : Verdict::Fails;
    c.evidence.push_back(tp.to_string() + " vs " + ts.to_string() + " (" + iso.regime + ")");
    for (const auto& [name, vals] : iso.invariants) {
      c.evidence.push_back(name + ": " + vals.first + " | " + vals.second);
    }
  }
  {
    auto& c = add(r2, "transfer_isotropic", "pi'*phi' is isotropic over F(pi'*psi')");
    c.expected = true;
    const bool iso = isometry_test(tp, ts).isometric;
    c.verdict = iso ? Verdict::Holds : Verdict::Undecided;
    c.evidence.push_back("the forms are isometric and every form is isotropic over its own function field");
  }
  {
    auto& c = add(r2, "similar", "phi' and psi' are similar");
    c.expected = false;
    // c<1,s> = <1,st> needs c and cs in V = span{1, st}; sV meets V in 0.
    const bool v_meets_sv = square_span_rank({one, s * t, s, s * s * t}, F) < 4;
    for (const auto& cand : {one, s * t}) {
      const bool same = same_square_span({cand, cand * s}, psi2.diag(), F);
      c.evidence.push_back("c = " + cand.to_string() + ": span{c, cs} " + (same ? "=" : "!=") + " span{1, st}");
      if (same) c.verdict = Verdict::Holds;
    }
    if (c.verdict != Verdict::Holds) {
      c.verdict = v_meets_sv ? Verdict::Undecided : Verdict::Fails;
      c.evidence.push_back(std::string("span{1, st} and s*span{1, st} = span{s, t} ") +
                           (v_meets_sv ? "intersect" : "intersect only in 0") +
                           ", so no c has both c and cs in span{1, st}");
    }
  }
  {
    auto& c = add(r2, "phi_over_F(psi)", "phi' is isotropic over F(psi')");
    c.expected = false;
    const QuadExtResult q = quad_ext_isotropy(phi2, ExtensionKind::Inseparable, s * t);
    c.verdict = q.isotropic ? Verdict::Holds : Verdict::Fails;
    c.evidence.push_back("F(psi') = F(sqrt(st))(y); " + std::string(q.isotropic ? "c<1,st> < phi'" : "no c with c<1,st> < phi'"));
    if (!q.note.empty()) c.evidence.push_back(q.note);
  }
  r2.notes.push_back("the converse of the transfer fails even with pi'*phi' anisotropic");
  finalize(r2);
  return {r1, r2};
}

// ------------------------------------------------------------ reverify

std::vector<std::string> reverify(const TheoremReport& r) {
  std::vector<std::string> bad;
  for (const auto& c : r.conditions) {
    const std::string tag = r.theorem + "(" + c.id + "): ";
    for (const auto& cert : c.representations) {
      if (!verify_representation(cert).pass) bad.push_back(tag + "representation certificate");
    }
    for (const auto& node : c.anisotropy) {
      if (!verify_certificate(node)) bad.push_back(tag + "anisotropy certificate");
    }
    for (const auto& rec : c.isotropic) {
      if (all_zero(rec.vector) || !evaluate(rec.form, rec.vector).is_zero()) bad.push_back(tag + "isotropic vector");
    }
    for (const auto& e : c.embeddings) {
      if (!verify_embedding(e.sigma, e.phi, e.columns)) bad.push_back(tag + "embedding");
    }
    for (const auto& leaf : c.anisotropic_leaves) {
      if (iso_vector(leaf)) bad.push_back(tag + "anisotropic leaf " + leaf.to_string());
    }
    for (const auto& x : c.refutations) {
      Field EY = x.f.field();
      bool ok = line_value(x.psi, x.a, x.v0, x.v1, EY) == x.f && x.multiplicity % 2 == 1;
      bool listed = false;
      if (ok) {
        for (const auto& [g, m] : factor_univariate(x.f.num()).factors) {
          if (g == x.factor && m == x.multiplicity) listed = true;
        }
      }
      ok = ok && listed && residue_of_constant_form(x.phi, Place::finite(EY, x.factor)) == x.residue &&
           !isotropy_ff(x.residue);
      if (!ok) bad.push_back(tag + "line refutation");
    }
  }
  return bad;
}

// ------------------------------------------------------------- sweeps

std::vector<QuadraticForm> nondefective_forms(Field f, int max_dim) {
  if (!f.is_finite()) fail(ErrorCode::UnsupportedField, "form enumeration needs a finite field");
  const std::uint32_t q = static_cast<std::uint32_t>(f.ff().size());
  std::vector<QuadraticForm> out;
  // Planes as indices a*q + b, nondecreasing.
  std::vector<std::uint32_t> planes;
  std::function<void(std::uint32_t)> rec = [&](std::uint32_t from) {
    const int d = 2 * static_cast<int>(planes.size());
    std::vector<Plane> ps;
    for (auto idx : planes) {
      ps.push_back(Plane{Element::finite(f, idx / q), Element::finite(f, idx % q)});
    }
    if (d >= 1) out.emplace_back(f, ps, std::vector<Element>{});
    if (d + 1 <= max_dim) {
      for (std::uint32_t c = 1; c < q; ++c) out.emplace_back(f, ps, std::vector<Element>{Element::finite(f, c)});
    }
    if (d + 2 > max_dim) return;
    for (std::uint32_t idx = from; idx < q * q; ++idx) {
      planes.push_back(idx);
      rec(idx);
      planes.pop_back();
    }
  };
  rec(0);
  std::stable_sort(out.begin(), out.end(), [](const QuadraticForm& a, const QuadraticForm& b) { return a.dim() < b.dim(); });
  return out;
}

void SweepSummary::add(const TheoremReport& r) {
  ++instances;
  if (r.consistent) ++consistent;
  for (const auto& c : r.conditions) {
    switch (c.verdict) {
      case Verdict::Holds: ++holds; break;
      case Verdict::Fails: ++fails; break;
      case Verdict::Supported: ++supported; break;
      case Verdict::Refuted: ++refuted; break;
      case Verdict::Undecided: ++undecided; break;
    }
  }
  reverify_failures += static_cast<int>(reverify(r).size());
}

std::string SweepSummary::to_string() const {
  std::ostringstream os;
  os << instances << " instances, " << (instances - consistent) << " inconsistent; verdicts: " << holds
     << " holds, " << fails << " fails, " << supported << " supported, " << refuted << " refuted, " << undecided
     << " undecided; " << reverify_failures << " re-verification failures";
  return os.str();
}

}  // namespace c2qf
