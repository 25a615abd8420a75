#include <gtest/gtest.h>

#include "c2qf/errors.hpp"
#include "c2qf/parse.hpp"
#include "c2qf/tower.hpp"
#include "gen.hpp"

using namespace c2qf;

namespace {

Element el(Field f, const char* s) { return parse_element(f, s); }

// Every polynomial over GF(2) of exactly degree d, by coefficient bits.
Poly gf2_poly(Field k, std::uint32_t bits) {
  std::vector<Element> c;
  for (std::uint32_t b = bits; b; b >>= 1) c.push_back(Element::finite(k, b & 1));
  return Poly(k, c);
}

// Irreducibility by trial division over GF(2) (independent of the library's
// factorization).
bool irreducible_gf2(std::uint32_t p) {
  auto deg = [](std::uint32_t x) {
    int d = -1;
    while (x) {
      x >>= 1;
      ++d;
    }
    return d;
  };
  const int d = deg(p);
  if (d < 1) return false;
  for (std::uint32_t f = 2; deg(f) <= d / 2; ++f) {
    std::uint32_t a = p;
    while (a && deg(a) >= deg(f)) a ^= f << (deg(a) - deg(f));
    if (a == 0) return false;
  }
  return true;
}

std::uint32_t bits_of(const Poly& p) {
  std::uint32_t b = 0;
  for (int i = 0; i <= p.degree(); ++i) b |= p.coeff(i).ff_value() << i;
  return b;
}

// Equal, or equal to every known coefficient with at least `min_prec`
// absolute precision left.
bool agree(const Element& a, const Element& b, int min_prec = 10) {
  try {
    return equal(a, b);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::PrecisionExhausted) throw;
    return (a - b).laurent_abs_prec() >= min_prec;
  }
}

}  // namespace

TEST(Tower, RationalArithmeticExamples) {
  const Field f = parse_field("GF(2)(t)");
  EXPECT_TRUE((el(f, "1/t") + el(f, "1/t")).is_zero());
  const Element x = inv(el(f, "t^2+t"));
  EXPECT_TRUE(x.num().is_one());
  EXPECT_TRUE(x.den().is_monic());
  EXPECT_EQ(x.den().degree(), 2);
  EXPECT_EQ(x.to_string(), "1/(t^2+t)");
  // Canonical form: gcd-reduced with monic denominator.
  const Element y = el(f, "(t^2+1)/(t+1)");
  EXPECT_EQ(y, el(f, "t+1"));
  EXPECT_TRUE(y.den().is_one());
}

TEST(Tower, TwoBasisExamplesAndRoundTrip) {
  const Field f = parse_field("GF(2)(s)(t)");
  const TwoBasisTable a = two_basis_decompose(el(f, "s+t^2"));
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ(a.at(0), el(f, "t"));
  EXPECT_EQ(a.at(1), el(f, "1"));
  const TwoBasisTable one = two_basis_decompose(f.one());
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one.at(0), f.one());
  const Element x = el(f, "s*t+s^2*t^3");
  EXPECT_EQ(two_basis_reassemble(f, two_basis_decompose(x)), x);

  testgen::Rng rng(21);
  for (const char* fs : {"GF(2)(t)", "GF(4)(t)", "GF(2)(s)(t)", "GF(8)(s)(t)"}) {
    const Field k = parse_field(fs);
    for (int i = 0; i < 1000; ++i) {
      const Element e = testgen::element(k, rng, 3);
      ASSERT_EQ(two_basis_reassemble(k, two_basis_decompose(e)), e) << e.to_string();
    }
  }
}

TEST(Tower, SquareRootExamples) {
  const Field f = parse_field("GF(2)(t)");
  EXPECT_FALSE(sqrt_if_square(el(f, "t")));
  EXPECT_EQ(*sqrt_if_square(el(f, "(t^2+1)/t^4")), el(f, "(t+1)/t^2"));
  testgen::Rng rng(22);
  const Field g = parse_field("GF(4)(s)(t)");
  for (int i = 0; i < 300; ++i) {
    const Element e = testgen::element(g, rng, 2);
    EXPECT_EQ(*sqrt_if_square(square(e)), e);
  }
}

TEST(Tower, ArtinSchreierOverRationalField) {
  const Field f = parse_field("GF(2)(t)");
  EXPECT_EQ(*artin_schreier_solve(f.zero()).root, f.zero());
  const Element y = el(f, "t^2+1/t");
  const auto r = artin_schreier_solve(square(y) + y);
  ASSERT_TRUE(r.root);
  EXPECT_EQ(square(*r.root) + *r.root, square(y) + y);
}

TEST(Tower, ValuationResidueExamples) {
  const Field f = parse_field("GF(2)(t)");
  const Place at_t = Place::top_variable(f);
  const ValuationResidue a = valuation_residue(el(f, "t^3/(t+1)"), at_t);
  EXPECT_EQ(a.valuation, 3);
  ASSERT_TRUE(a.residue);
  EXPECT_TRUE(a.residue->is_zero());
  const ValuationResidue b = valuation_residue(el(f, "(t+1)/t"), at_t);
  EXPECT_EQ(b.valuation, -1);
  EXPECT_FALSE(b.residue);
  try {
    residue(el(f, "(t+1)/t"), at_t);
    ADD_FAILURE() << "expected NegativeValuationResidue";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NegativeValuationResidue);
  }
  const Place at_t1 = Place::finite(f, parse_polynomial(parse_field("GF(2)"), "t", "t+1"));
  const ValuationResidue c = valuation_residue(el(f, "t^2+t+1"), at_t1);
  EXPECT_EQ(c.valuation, 0);
  EXPECT_EQ(*c.residue, parse_field("GF(2)").one());
  EXPECT_EQ(valuation(el(f, "t^3+1"), Place::degree(f)), -3);
}

TEST(Tower, ValuationIsMultiplicativeAndUltrametric) {
  testgen::Rng rng(23);
  const Field f = parse_field("GF(4)(t)");
  const Field k = f.base();
  std::vector<Place> places{Place::top_variable(f), Place::degree(f)};
  for (const Poly& p : enum_irreducibles(k, 2)) places.push_back(Place::finite(f, p));
  const Field lf = parse_field("GF(2)((X):32)");
  places.push_back(Place::laurent(lf));
  for (const auto& p : places) {
    const Field pf = p.field;
    for (int i = 0; i < 500; ++i) {
      const Element x = testgen::nonzero(pf, rng, 3), y = testgen::nonzero(pf, rng, 3);
      ASSERT_EQ(valuation(x * y, p), valuation(x, p) + valuation(y, p)) << p.to_string();
      const Element s = x + y;
      if (!s.is_zero()) ASSERT_GE(valuation(s, p), std::min(valuation(x, p), valuation(y, p)));
    }
  }
}

TEST(Tower, ResidueIsARingMapAtFinitePlaces) {
  testgen::Rng rng(24);
  const Field f = parse_field("GF(2)(t)");
  for (const Poly& p : enum_irreducibles(f.base(), 3)) {
    const Place P = Place::finite(f, p);
    for (int i = 0; i < 300; ++i) {
      const Element x = testgen::element(f, rng, 3), y = testgen::element(f, rng, 3);
      if ((!x.is_zero() && valuation(x, P) < 0) || (!y.is_zero() && valuation(y, P) < 0)) continue;
      ASSERT_EQ(residue(x * y, P), residue(x, P) * residue(y, P));
      ASSERT_EQ(residue(x + y, P), residue(x, P) + residue(y, P));
      ASSERT_EQ(residue(lift_residue(residue(x, P), P), P), residue(x, P));
    }
  }
}

TEST(Tower, FactorizationExhaustiveUpToDegree8) {
  const Field k = parse_field("GF(2)");
  for (std::uint32_t bits = 2; bits < (1u << 9); ++bits) {
    const Poly f = gf2_poly(k, bits);
    const Factorization fac = factor_univariate(f);
    Poly prod = Poly::constant(fac.lead);
    for (const auto& [p, m] : fac.factors) {
      ASSERT_TRUE(p.is_monic());
      ASSERT_TRUE(irreducible_gf2(bits_of(p))) << p.to_string("X");
      prod = prod * p.pow(m);
    }
    ASSERT_EQ(prod, f) << f.to_string("X");
    EXPECT_EQ(is_irreducible(f), irreducible_gf2(bits));
  }
}

TEST(Tower, FactorizationOverGF4ReconstructsInput) {
  testgen::Rng rng(25);
  const Field k = parse_field("GF(4)");
  for (int i = 0; i < 500; ++i) {
    const Poly f = testgen::poly(k, rng, 1 + static_cast<int>(rng() % 7), 0);
    const Factorization fac = factor_univariate(f);
    Poly prod = Poly::constant(fac.lead);
    for (const auto& [p, m] : fac.factors) {
      ASSERT_TRUE(is_irreducible(p));
      prod = prod * p.pow(m);
    }
    ASSERT_EQ(prod, f);
  }
}

TEST(Tower, FactorizationExamples) {
  const Field k = parse_field("GF(2)");
  const Factorization a = factor_univariate(parse_polynomial(k, "X", "X^2+X"));
  ASSERT_EQ(a.factors.size(), 2u);
  EXPECT_EQ(a.factors[0].first.to_string("X"), "X");
  EXPECT_EQ(a.factors[1].first.to_string("X"), "X+1");
  EXPECT_TRUE(is_irreducible(parse_polynomial(k, "X", "X^2+X+1")));
  const Factorization c = factor_univariate(parse_polynomial(k, "X", "X^4+X^2+1"));
  ASSERT_EQ(c.factors.size(), 1u);
  EXPECT_EQ(c.factors[0].first.to_string("X"), "X^2+X+1");
  EXPECT_EQ(c.factors[0].second, 2);
}

TEST(Tower, IrreducibleEnumerationMatchesNecklaceCount) {
  const Field g2 = parse_field("GF(2)");
  const auto d2 = enum_irreducibles(g2, 2);
  ASSERT_EQ(d2.size(), 1u);
  EXPECT_EQ(d2[0].to_string("X"), "X^2+X+1");
  const auto d3 = enum_irreducibles(g2, 3);
  ASSERT_EQ(d3.size(), 2u);
  EXPECT_EQ(enum_irreducibles(parse_field("GF(4)"), 1).size(), 4u);
  for (const char* fs : {"GF(2)", "GF(4)", "GF(8)"}) {
    const Field k = parse_field(fs);
    for (int d = 1; d <= (k.ff().size() == 2 ? 8 : 3); ++d) {
      EXPECT_EQ(enum_irreducibles(k, d).size(), necklace_count(k.ff().size(), d)) << fs << " degree " << d;
    }
  }
}

TEST(Tower, FieldAxiomsOnTowers) {
  testgen::Rng rng(26);
  for (const char* fs : {"GF(2)(t)", "GF(4)(s)(t)", "GF(2)((X):32)", "GF(4)((X):16)"}) {
    const Field f = parse_field(fs);
    for (int i = 0; i < 1000; ++i) {
      const Element a = testgen::element(f, rng), b = testgen::element(f, rng), c = testgen::element(f, rng);
      ASSERT_TRUE(equal((a * b) * c, a * (b * c))) << fs;
      ASSERT_TRUE(equal(a * (b + c), a * b + a * c)) << fs;
      ASSERT_TRUE(equal(square(a + b), square(a) + square(b))) << fs;
      if (!a.is_zero()) ASSERT_TRUE(agree(a * inv(a), f.one())) << fs;
    }
  }
}

TEST(Tower, LaurentPrecisionIsTracked) {
  const Field f = parse_field("GF(2)((X):8)");
  const Element x = f.variable("X");
  const Element big_o = Element::laurent_big_o(f, 3);
  // 1 + O(X^3) cannot be compared with 1 + X^5.
  const Element a = f.one() + big_o;
  EXPECT_THROW(equal(a, f.one() + pow(x, 5)), Error);
  EXPECT_FALSE(equal(a, x + big_o));
  try {
    equal(a, f.one() + pow(x, 4) + big_o);
    ADD_FAILURE() << "expected PrecisionExhausted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PrecisionExhausted);
  }
  // Inverting a unit keeps the relative precision.
  const Element u = inv(f.one() + x);
  EXPECT_EQ(u.laurent_abs_prec(), 8);
  EXPECT_TRUE(agree(u * (f.one() + x), f.one(), 8));
}

TEST(Tower, ResidueFieldRoundTrip) {
  const Field k = parse_field("GF(2)");
  const Poly f = parse_polynomial(k, "X", "X^3+X+1");
  const Field R = residue_extension(k, f, "X");
  EXPECT_EQ(R.ff().size(), 8u);
  EXPECT_EQ(parse_field(R.to_string()), R);
  for (std::uint32_t v = 0; v < 8; ++v) {
    const Element e = Element::finite(R, v);
    EXPECT_EQ(reduce_into(lift_from(e, k, 3), f, R), e);
  }
}
