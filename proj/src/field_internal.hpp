#pragma once

#include <string>
#include <vector>

#include "c2qf/field.hpp"

namespace c2qf {

struct FieldNode {
  FieldKind kind = FieldKind::Finite;
  FiniteFieldPtr ff;
  const FieldNode* base = nullptr;
  std::string var;
  int precision = 0;
  std::string key;
  bool pinned = false;
};

namespace detail {

struct RationalRep : Rep {
  Poly num;
  Poly den;
};

struct LaurentRep : Rep {
  bool exact = true;
  int val = 0;
  int abs = 0;
  std::vector<Element> coeffs;
};

}  // namespace detail

struct ElementAccess {
  static const FieldNode* node(const Element& e) { return e.f_; }
  static Element make_finite(const FieldNode* f, std::uint32_t v) {
    Element e;
    e.f_ = f;
    e.v_ = v;
    return e;
  }
  static Element make_rep(const FieldNode* f, std::shared_ptr<const detail::Rep> rep) {
    Element e;
    e.f_ = f;
    e.rep_ = std::move(rep);
    return e;
  }
  static const detail::RationalRep& rat(const Element& e) {
    return static_cast<const detail::RationalRep&>(*e.rep_);
  }
  static const detail::LaurentRep& lau(const Element& e) {
    return static_cast<const detail::LaurentRep&>(*e.rep_);
  }
};

// Canonical constructors used across translation units.
Element make_laurent(const FieldNode* f, int val, std::vector<Element> coeffs, bool exact, int abs);
Element laurent_add(const Element& a, const Element& b);
Element laurent_mul(const Element& a, const Element& b);
Element laurent_inv(const Element& a);
std::string laurent_to_string(const Element& a);

}  // namespace c2qf
