#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "c2qf/errors.hpp"
#include "c2qf/finite_field.hpp"

namespace c2qf {

enum class FieldKind { Finite, Rational, Laurent };

struct FieldNode;
class Element;

// Handle to an interned field descriptor. Descriptors are created once and
// never freed, so handles compare by identity and copy for free.
class Field {
 public:
  static constexpr int kDefaultPrecision = 32;

  Field() = default;

  static Field gf2k(int k);
  // A finite field that is not one of the pinned GF(2^k), e.g. a residue
  // field B[X]/(f). `base` is the field it extends; `var` names the class
  // of X when printing.
  static Field finite_extension(Field base, FiniteFieldPtr ff, const std::string& var);
  static Field rational(Field base, const std::string& var);
  static Field laurent(Field base, const std::string& var, int precision = kDefaultPrecision);

  bool valid() const { return node_ != nullptr; }
  FieldKind kind() const;
  bool is_finite() const { return kind() == FieldKind::Finite; }
  bool is_rational() const { return kind() == FieldKind::Rational; }
  bool is_laurent() const { return kind() == FieldKind::Laurent; }

  const FiniteField& ff() const;
  const FiniteFieldPtr& ff_ptr() const;
  // Base of an extension (for finite fields: the field a residue extension
  // was built over, or invalid for pinned GF(2^k)).
  Field base() const;
  const std::string& var() const;
  int precision() const;

  // The finite field at the bottom of the tower.
  Field bottom() const;
  // Number of Rational/Laurent levels above the bottom.
  int height() const;
  // True for towers GF(2^k)(t1)...(tn) without Laurent levels (n >= 0).
  bool is_rational_tower() const;
  // Tower variable names, bottom to top.
  std::vector<std::string> variables() const;
  // True when `sub` is this field or lies below it on the tower.
  bool contains(Field sub) const;

  std::string to_string() const;

  Element zero() const;
  Element one() const;
  // Top tower variable; for finite fields the generator w.
  Element gen() const;
  Element from_int(long long n) const;
  // The variable named `name` of this tower, or w.
  Element variable(const std::string& name) const;

  bool operator==(const Field& o) const { return node_ == o.node_; }
  bool operator!=(const Field& o) const { return node_ != o.node_; }
  const FieldNode* node() const { return node_; }
  explicit Field(const FieldNode* n) : node_(n) {}

 private:
  const FieldNode* node_ = nullptr;
};

class Poly;

namespace detail {
struct Rep {
  virtual ~Rep() = default;
};
struct RationalRep;
struct LaurentRep;
}  // namespace detail

// An element of a field descriptor in canonical form.
class Element {
 public:
  Element() = default;

  static Element finite(Field f, std::uint32_t v);
  // num/den over the base of f; canonicalizes (gcd-reduced, monic den).
  static Element rational(Field f, const Poly& num, const Poly& den);
  static Element from_poly(Field f, const Poly& num);
  // Laurent element. `exact` series are Laurent polynomials; otherwise the
  // value is known modulo X^abs_prec.
  static Element laurent(Field f, int val, std::vector<Element> coeffs, bool exact, int abs_prec);
  static Element laurent_big_o(Field f, int n);

  Field field() const { return Field(f_); }
  bool valid() const { return f_ != nullptr; }

  // Semantic tests. For inexact Laurent zeros these raise PrecisionExhausted.
  bool is_zero() const;
  bool is_one() const;
  bool is_exact_zero() const;

  std::uint32_t ff_value() const { return v_; }
  const Poly& num() const;
  const Poly& den() const;
  bool laurent_exact() const;
  int laurent_val() const;
  int laurent_abs_prec() const;  // absolute precision; ignored when exact
  const std::vector<Element>& laurent_coeffs() const;

  // Coerce into a field containing this element's field.
  Element embed(Field target) const;
  // Inverse of embed: the element as a member of `sub` if it lies there.
  bool lies_in(Field sub) const;
  Element restrict_to(Field sub) const;

  bool operator==(const Element& o) const;
  bool operator!=(const Element& o) const { return !(*this == o); }
  std::size_t hash() const;

  std::string to_string() const;

 private:
  const FieldNode* f_ = nullptr;
  std::uint32_t v_ = 0;
  std::shared_ptr<const detail::Rep> rep_;
  friend struct ElementAccess;
};

Element operator+(const Element& a, const Element& b);
Element operator-(const Element& a, const Element& b);
Element operator*(const Element& a, const Element& b);
Element operator/(const Element& a, const Element& b);
Element operator-(const Element& a);
Element& operator+=(Element& a, const Element& b);
Element& operator*=(Element& a, const Element& b);
Element inv(const Element& a);
Element pow(const Element& a, long long e);
Element square(const Element& a);
// Semantic equality; raises PrecisionExhausted when undecidable.
bool equal(const Element& a, const Element& b);

// Brings a and b into a common field along a tower, or raises MixedFields.
Field common_field(Field a, Field b);

// Univariate polynomial with coefficients in a field, low degree first,
// no trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(Field k) : k_(k) {}
  Poly(Field k, std::vector<Element> coeffs);

  static Poly constant(const Element& c);
  static Poly monomial(const Element& c, int degree);
  static Poly x(Field k);

  Field coeff_field() const { return k_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const;
  bool is_monic() const;
  const std::vector<Element>& coeffs() const { return c_; }
  Element coeff(int i) const;
  const Element& lead() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const { return *this + o; }
  Poly operator*(const Poly& o) const;
  Poly scale(const Element& c) const;
  Poly shift(int k) const;  // multiply by x^k
  Poly pow(int e) const;
  Poly monic() const;
  Poly derivative() const;
  Element eval(const Element& x) const;
  Poly compose(const Poly& inner) const;

  // Quotient and remainder; divisor nonzero.
  void divmod(const Poly& d, Poly& q, Poly& r) const;
  Poly operator/(const Poly& d) const;
  Poly operator%(const Poly& d) const;
  bool divisible_by(const Poly& d) const;

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  // Printed in variable `var` with coefficients in field grammar.
  std::string to_string(const std::string& var) const;

 private:
  void trim();
  Field k_;
  std::vector<Element> c_;
};

Poly gcd(const Poly& a, const Poly& b);  // monic, or zero
// Extended gcd: s*a + t*b = g (monic).
Poly xgcd(const Poly& a, const Poly& b, Poly& s, Poly& t);

}  // namespace c2qf

template <>
struct std::hash<c2qf::Element> {
  std::size_t operator()(const c2qf::Element& e) const noexcept { return e.hash(); }
};
