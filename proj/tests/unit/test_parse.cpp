#include <gtest/gtest.h>

#include "c2qf/errors.hpp"
#include "c2qf/parse.hpp"
#include "gen.hpp"

using namespace c2qf;

namespace {

struct Failure {
  ErrorCode code;
  std::size_t position;
};

template <class Fn>
std::optional<Failure> parse_failure(Fn&& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return Failure{e.code(), e.position()};
  }
  return std::nullopt;
}

const char* const kFamilies[] = {
    "GF(2)", "GF(16)", "GF(2^7)", "GF(2)(t)", "GF(4)(s)(t)", "GF(2)((t):12)", "GF(2)[Y]/(Y^3+Y+1)(t)",
};

}  // namespace

TEST(Parse, Examples) {
  const Field t = parse_field("GF(2)(t)");
  EXPECT_TRUE(t.is_rational());
  EXPECT_EQ(t.base(), parse_field("GF(2)"));
  const QuadraticForm phi = parse_form(t, "[1,1]+<1,t>");
  EXPECT_EQ(phi.r(), 1);
  EXPECT_EQ(phi.s(), 2);
  const Field s = parse_field("GF(2)(s)");
  EXPECT_EQ(parse_form(s, "pf(s)*(<1,s>)"), parse_form(s, "<1,s,s,s^2>"));
  EXPECT_EQ(parse_field("GF(2)(s,t)"), parse_field("GF(2)(s)(t)"));
  EXPECT_EQ(parse_field("GF(2^4)"), parse_field("GF(16)"));
  EXPECT_EQ(parse_element(parse_field("GF(4)"), "w^3"), parse_field("GF(4)").one());
}

TEST(Parse, FieldsPrintAndParseBack) {
  for (const char* fs : kFamilies) {
    const Field f = parse_field(fs);
    EXPECT_EQ(parse_field(f.to_string()), f) << fs;
    EXPECT_EQ(parse_field(f.to_string()).to_string(), f.to_string()) << fs;
  }
}

// print(parse(print(x))) = print(x) on random elements and forms of every
// field family, and parse(print(x)) = x where equality is exact.
TEST(Parse, PrintParseFixedPoint) {
  testgen::Rng rng(71);
  for (const char* fs : kFamilies) {
    const Field f = parse_field(fs);
    const bool exact = !f.is_laurent();
    for (int i = 0; i < 1000; ++i) {
      const Element e = testgen::element(f, rng, 3);
      const std::string es = e.to_string();
      const Element eb = parse_element(f, es);
      ASSERT_EQ(eb.to_string(), es) << fs;
      if (exact) ASSERT_EQ(eb, e) << fs << ": " << es;

      const QuadraticForm phi = testgen::form_up_to(f, rng, 5);
      const std::string ps = phi.to_string();
      const QuadraticForm pb = parse_form(f, ps);
      ASSERT_EQ(pb.to_string(), ps) << fs;
      if (exact) ASSERT_EQ(pb, phi) << fs << ": " << ps;
    }
  }
}

TEST(Parse, PolynomialsRoundTrip) {
  testgen::Rng rng(72);
  for (const char* fs : {"GF(2)", "GF(8)", "GF(2)(t)"}) {
    const Field k = parse_field(fs);
    for (int i = 0; i < 300; ++i) {
      const Poly p = testgen::poly(k, rng, static_cast<int>(rng() % 6));
      const std::string s = p.to_string("X");
      ASSERT_EQ(parse_polynomial(k, "X", s), p) << fs << ": " << s;
    }
  }
}

TEST(Parse, ErrorPositions) {
  const Field t = parse_field("GF(2)(t)");
  auto a = parse_failure([&] { parse_element(t, "t+"); });
  ASSERT_TRUE(a);
  EXPECT_EQ(a->code, ErrorCode::SyntaxError);
  EXPECT_EQ(a->position, 2u);

  auto b = parse_failure([&] { parse_element(t, "t+u"); });
  ASSERT_TRUE(b);
  EXPECT_EQ(b->code, ErrorCode::UnknownVariable);
  EXPECT_EQ(b->position, 2u);

  auto c = parse_failure([&] { parse_form(t, "[1,1"); });
  ASSERT_TRUE(c);
  EXPECT_EQ(c->code, ErrorCode::SyntaxError);
  EXPECT_EQ(c->position, 4u);

  auto d = parse_failure([&] { parse_field("GF(2)(t"); });
  ASSERT_TRUE(d);
  EXPECT_EQ(d->code, ErrorCode::SyntaxError);
  EXPECT_EQ(d->position, 7u);

  auto e = parse_failure([&] { parse_polynomial(parse_field("GF(2)"), "X", "X^2+Y"); });
  ASSERT_TRUE(e);
  EXPECT_EQ(e->code, ErrorCode::UnknownVariable);
  EXPECT_EQ(e->position, 4u);

  auto f = parse_failure([&] { parse_form(t, "<1,t> junk"); });
  ASSERT_TRUE(f);
  EXPECT_EQ(f->code, ErrorCode::SyntaxError);
  EXPECT_EQ(f->position, 6u);
}

TEST(Parse, RejectsBadFields) {
  for (const char* bad : {"GF(3)", "GF(2^0)", "GF(2^40)", "GF(2)[Y]/(Y^2+1)", "GF(2)(t)(t)", "GF(2)((t):0)"}) {
    EXPECT_THROW(parse_field(bad), Error) << bad;
  }
}
