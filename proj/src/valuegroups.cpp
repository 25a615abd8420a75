#include "c2qf/valuegroups.hpp"

#include <functional>
#include <unordered_map>

#include "enumerate.hpp"
#include "finite_form.hpp"

namespace c2qf {

ValueSet::ValueSet(Field f) : field_(f) {
  if (!f.is_finite()) fail(ErrorCode::UnsupportedField, "value sets are materialized over finite fields only");
  bits_.assign(f.ff().size(), false);
}

bool ValueSet::contains(const Element& x) const {
  const Element y = x.embed(field_);
  return !y.is_zero() && bits_[y.ff_value()];
}

void ValueSet::insert(const Element& x) {
  const Element y = x.embed(field_);
  if (y.is_zero()) fail(ErrorCode::PreconditionViolated, "0 is not in F*");
  if (!bits_[y.ff_value()]) {
    bits_[y.ff_value()] = true;
    ++count_;
  }
}

std::vector<Element> ValueSet::elements() const {
  std::vector<Element> out;
  for (std::size_t v = 1; v < bits_.size(); ++v) {
    if (bits_[v]) out.push_back(Element::finite(field_, static_cast<std::uint32_t>(v)));
  }
  return out;
}

bool ValueSet::subset_of(const ValueSet& o) const {
  for (std::size_t v = 1; v < bits_.size(); ++v) {
    if (bits_[v] && !o.bits_[v]) return false;
  }
  return true;
}

std::string ValueSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& e : elements()) {
    if (!first) out += ", ";
    first = false;
    out += e.to_string();
  }
  return out + "}";
}

ValueSet all_units(Field f) {
  ValueSet s(f);
  for (std::uint32_t v = 1; v < f.ff().size(); ++v) s.insert(Element::finite(f, v));
  return s;
}

ValueSet nonzero_squares(Field f) {
  ValueSet s(f);
  const FiniteField& F = f.ff();
  for (std::uint32_t v = 1; v < F.size(); ++v) s.insert(Element::finite(f, F.sqr(v)));
  return s;
}

ValueSet product_set(const ValueSet& a, const ValueSet& b) {
  if (a.field() != b.field()) fail(ErrorCode::MixedFields, "value sets over different fields");
  ValueSet out(a.field());
  const FiniteField& F = a.field().ff();
  const auto& x = a.bits();
  const auto& y = b.bits();
  for (std::uint32_t i = 1; i < x.size(); ++i) {
    if (!x[i]) continue;
    for (std::uint32_t j = 1; j < y.size(); ++j) {
      if (y[j]) out.insert(Element::finite(a.field(), F.mul(i, j)));
    }
  }
  return out;
}

ValueSet represented_set(const QuadraticForm& phi, int k, std::uint64_t budget) {
  if (k < 1) fail(ErrorCode::PreconditionViolated, "power must be at least 1");
  const PackedForm P(phi);
  const int n = P.dim();
  const std::uint64_t q = P.F->size();
  const std::uint64_t total = power_checked(q, n, budget);
  ValueSet d(phi.field());
  std::vector<std::uint32_t> v(static_cast<std::size_t>(n), 0);
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    std::uint64_t rest = idx;
    for (int i = n - 1; i >= 0; --i) {
      v[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(rest % q);
      rest /= q;
    }
    const std::uint32_t val = P.eval(v.data());
    if (val) d.insert(Element::finite(phi.field(), val));
  }
  ValueSet out = d;
  for (int i = 1; i < k; ++i) out = product_set(out, d);
  return out;
}

ValueSet group_closure(const ValueSet& s) {
  if (s.empty()) fail(ErrorCode::PreconditionViolated, "group closure of the empty set");
  // In a finite group the multiplicative closure is already a subgroup.
  ValueSet g = s;
  for (;;) {
    ValueSet next = product_set(g, s);
    for (const auto& e : g.elements()) next.insert(e);
    if (next == g) return g;
    g = std::move(next);
  }
}

ValueGroupAudit lemma21_audit(const QuadraticForm& phi, const Element& c0, std::uint64_t budget) {
  Field f = phi.field();
  ValueGroupAudit rep;
  rep.c = c0.embed(f);
  if (rep.c.is_zero()) fail(ErrorCode::ZeroScale, "c must be nonzero");
  rep.d1 = represented_set(phi, 1, budget);
  if (rep.d1.empty()) fail(ErrorCode::PreconditionViolated, "phi represents no nonzero value");
  rep.squares = nonzero_squares(f);
  rep.d2 = product_set(rep.d1, rep.d1);
  rep.ng = group_closure(rep.d2);
  rep.tg = group_closure(rep.d1);
  const QuadraticForm cphi = scale(rep.c, phi);
  const ValueSet cd1 = represented_set(cphi, 1, budget);
  rep.ng_scaled = group_closure(product_set(cd1, cd1));
  rep.tg_scaled = group_closure(cd1);
  rep.part_i = rep.ng == rep.ng_scaled;
  rep.part_ii = rep.squares.subset_of(rep.d2) && rep.d2.subset_of(rep.ng) && rep.ng.subset_of(rep.tg) &&
                rep.tg.subset_of(all_units(f));
  if (!rep.d1.contains(rep.c)) fail(ErrorCode::PreconditionViolated, "c is not represented by phi");
  rep.part_iii = rep.ng == rep.tg_scaled;
  return rep;
}

// ------------------------------------------------------------ membership

std::optional<RepresentationCertificate> membership_bounded(const Element& f, const QuadraticForm& phi0, int k,
                                                            int degree_bound, std::uint64_t budget) {
  if (k < 1) fail(ErrorCode::PreconditionViolated, "power must be at least 1");
  if (f.is_zero()) fail(ErrorCode::PreconditionViolated, "0 is never in D*");
  Field L = common_field(f.field(), phi0.field());
  if (!L.is_rational_tower()) fail(ErrorCode::UnsupportedField, "membership search needs a rational tower");
  const QuadraticForm phi = phi0.embed(L);
  const Element target = f.embed(L);
  const int n = phi.dim();
  if (n == 0) return std::nullopt;
  std::uint64_t spent = 0;
  for (int d = 0; d <= degree_bound; ++d) {
    const std::vector<Element> table = bounded_polynomials(L, d, budget);
    const std::uint64_t V = table.size();
    const std::uint64_t N = power_checked(V, n, budget);
    auto vec_of = [&](std::uint64_t idx) {
      Vec v(static_cast<std::size_t>(n));
      for (int i = n - 1; i >= 0; --i) {
        v[static_cast<std::size_t>(i)] = table[idx % V];
        idx /= V;
      }
      return v;
    };
    auto charge = [&](std::uint64_t c) {
      spent += c;
      if (spent > budget) fail(ErrorCode::BudgetExceeded, "membership search exceeds the budget");
    };
    charge(N);
    std::vector<Element> values;
    values.reserve(N);
    std::unordered_map<Element, std::uint64_t> first;
    for (std::uint64_t idx = 0; idx < N; ++idx) {
      values.push_back(evaluate(phi, vec_of(idx)));
      if (!values.back().is_zero()) first.emplace(values.back(), idx);
    }
    std::vector<std::uint64_t> chosen;
    std::function<bool(const Element&, int)> rec = [&](const Element& rem, int left) -> bool {
      if (left == 1) {
        auto it = first.find(rem);
        if (it == first.end()) return false;
        chosen.push_back(it->second);
        return true;
      }
      charge(N);
      for (std::uint64_t idx = 0; idx < N; ++idx) {
        if (values[idx].is_zero()) continue;
        chosen.push_back(idx);
        if (rec(rem / values[idx], left - 1)) return true;
        chosen.pop_back();
      }
      return false;
    };
    if (rec(target, k)) {
      RepresentationCertificate cert{phi0, target, L.one(), {}};
      for (auto idx : chosen) cert.vectors.push_back(vec_of(idx));
      if (!verify_representation(cert).pass) fail(ErrorCode::Internal, "membership certificate failed to verify");
      return cert;
    }
  }
  return std::nullopt;
}

}  // namespace c2qf
