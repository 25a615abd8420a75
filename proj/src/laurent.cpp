#include <algorithm>
#include <climits>

#include "field_internal.hpp"

namespace c2qf {

namespace {

constexpr int kExactAbs = INT_MAX;

int abs_of(const detail::LaurentRep& l) { return l.exact ? kExactAbs : l.abs; }

}  // namespace

Element make_laurent(const FieldNode* f, int val, std::vector<Element> coeffs, bool exact, int abs) {
  const int P = f->precision;
  std::size_t lead = 0;
  while (lead < coeffs.size() && coeffs[lead].is_zero()) ++lead;
  auto rep = std::make_shared<detail::LaurentRep>();
  rep->exact = exact;
  if (exact) {
    std::size_t end = coeffs.size();
    while (end > lead && coeffs[end - 1].is_zero()) --end;
    if (lead == end) {
      rep->val = 0;
      rep->abs = 0;
    } else {
      rep->val = val + static_cast<int>(lead);
      rep->coeffs.assign(coeffs.begin() + static_cast<std::ptrdiff_t>(lead),
                         coeffs.begin() + static_cast<std::ptrdiff_t>(end));
    }
    return ElementAccess::make_rep(f, std::move(rep));
  }
  const int v = val + static_cast<int>(lead);
  if (lead == coeffs.size() || v >= abs) {
    rep->val = abs;
    rep->abs = abs;
    return ElementAccess::make_rep(f, std::move(rep));
  }
  const int new_abs = std::min(abs, v + P);
  rep->val = v;
  rep->abs = new_abs;
  const Field base = Field(f).base();
  rep->coeffs.reserve(static_cast<std::size_t>(new_abs - v));
  for (int e = v; e < new_abs; ++e) {
    const std::size_t i = static_cast<std::size_t>(e - val);
    rep->coeffs.push_back(i < coeffs.size() ? coeffs[i] : base.zero());
  }
  return ElementAccess::make_rep(f, std::move(rep));
}

Element laurent_add(const Element& a, const Element& b) {
  const auto& x = ElementAccess::lau(a);
  const auto& y = ElementAccess::lau(b);
  const FieldNode* f = ElementAccess::node(a);
  const bool exact = x.exact && y.exact;
  const int abs = std::min(abs_of(x), abs_of(y));
  int lo = INT_MAX, hi = INT_MIN;  // exponent range [lo, hi)
  auto span = [&](const detail::LaurentRep& l) {
    if (!l.coeffs.empty()) {
      lo = std::min(lo, l.val);
      hi = std::max(hi, l.val + static_cast<int>(l.coeffs.size()));
    }
  };
  span(x);
  span(y);
  if (lo == INT_MAX) return make_laurent(f, abs, {}, exact, abs);
  if (!exact) hi = std::min(hi, abs);
  if (hi <= lo) return make_laurent(f, abs, {}, exact, abs);
  const Field base = Field(f).base();
  std::vector<Element> c(static_cast<std::size_t>(hi - lo), base.zero());
  auto acc = [&](const detail::LaurentRep& l) {
    for (std::size_t i = 0; i < l.coeffs.size(); ++i) {
      const int e = l.val + static_cast<int>(i);
      if (e >= hi) break;
      c[static_cast<std::size_t>(e - lo)] += l.coeffs[i];
    }
  };
  acc(x);
  acc(y);
  return make_laurent(f, lo, std::move(c), exact, abs);
}

Element laurent_mul(const Element& a, const Element& b) {
  const auto& x = ElementAccess::lau(a);
  const auto& y = ElementAccess::lau(b);
  const FieldNode* f = ElementAccess::node(a);
  if ((x.exact && x.coeffs.empty()) || (y.exact && y.coeffs.empty())) {
    return make_laurent(f, 0, {}, true, 0);
  }
  const Field base = Field(f).base();
  if (x.exact && y.exact) {
    std::vector<Element> c(x.coeffs.size() + y.coeffs.size() - 1, base.zero());
    for (std::size_t i = 0; i < x.coeffs.size(); ++i) {
      for (std::size_t j = 0; j < y.coeffs.size(); ++j) c[i + j] += x.coeffs[i] * y.coeffs[j];
    }
    return make_laurent(f, x.val + y.val, std::move(c), true, 0);
  }
  // At least one factor is inexact; the valuation is the sum of the known
  // lowest exponents (for O(X^n) that is n itself).
  const int val = x.val + y.val;
  if (x.coeffs.empty() || y.coeffs.empty()) return make_laurent(f, val, {}, false, val);
  const int rx = x.exact ? INT_MAX : static_cast<int>(x.coeffs.size());
  const int ry = y.exact ? INT_MAX : static_cast<int>(y.coeffs.size());
  const int rel = std::min({rx, ry, f->precision});
  std::vector<Element> c(static_cast<std::size_t>(rel), base.zero());
  for (int i = 0; i < rel && i < static_cast<int>(x.coeffs.size()); ++i) {
    for (int j = 0; i + j < rel && j < static_cast<int>(y.coeffs.size()); ++j) {
      c[static_cast<std::size_t>(i + j)] += x.coeffs[static_cast<std::size_t>(i)] *
                                            y.coeffs[static_cast<std::size_t>(j)];
    }
  }
  return make_laurent(f, val, std::move(c), false, val + rel);
}

Element laurent_inv(const Element& a) {
  const auto& x = ElementAccess::lau(a);
  const FieldNode* f = ElementAccess::node(a);
  if (x.coeffs.empty()) {
    if (x.exact) fail(ErrorCode::DivisionByZero, "inverse of zero in " + Field(f).to_string());
    fail(ErrorCode::PrecisionExhausted, "inverse of " + a.to_string() + " (lowest coefficient unknown)");
  }
  if (x.exact && x.coeffs.size() == 1) return make_laurent(f, -x.val, {inv(x.coeffs[0])}, true, 0);
  const int rel = x.exact ? f->precision : static_cast<int>(x.coeffs.size());
  const Field base = Field(f).base();
  const Element c0inv = inv(x.coeffs[0]);
  std::vector<Element> b(static_cast<std::size_t>(rel), base.zero());
  b[0] = c0inv;
  for (int n = 1; n < rel; ++n) {
    Element s = base.zero();
    for (int i = 1; i <= n && i < static_cast<int>(x.coeffs.size()); ++i) {
      s += x.coeffs[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(n - i)];
    }
    b[static_cast<std::size_t>(n)] = s * c0inv;
  }
  return make_laurent(f, -x.val, std::move(b), false, -x.val + rel);
}

std::string laurent_to_string(const Element& a) {
  const auto& x = ElementAccess::lau(a);
  const FieldNode* f = ElementAccess::node(a);
  const std::string& var = f->var;
  std::string out;
  for (std::size_t i = 0; i < x.coeffs.size(); ++i) {
    const Element& c = x.coeffs[i];
    if (c.is_zero()) continue;
    const int e = x.val + static_cast<int>(i);
    if (!out.empty()) out += "+";
    std::string cs = c.to_string();
    if (e == 0) {
      out += cs;
      continue;
    }
    if (!c.is_one()) {
      const bool paren = cs.find('+') != std::string::npos || cs.find('/') != std::string::npos;
      out += (paren ? "(" + cs + ")" : cs) + "*";
    }
    out += var;
    if (e != 1) out += "^" + std::to_string(e);
  }
  if (!x.exact) {
    if (!out.empty()) out += "+";
    out += "O(" + var + "^" + std::to_string(x.abs) + ")";
  }
  if (out.empty()) out = "0";
  return out;
}

}  // namespace c2qf
