#include <gtest/gtest.h>

#include "c2qf/errors.hpp"
#include "c2qf/isotropy.hpp"
#include "c2qf/parse.hpp"
#include "c2qf/theoremlab.hpp"
#include "gen.hpp"

using namespace c2qf;

namespace {

Element el(Field f, const char* s) { return parse_element(f, s); }
QuadraticForm form(Field f, const char* s) { return parse_form(f, s); }

// Lexicographically least isotropic vector by plain enumeration.
std::optional<Vec> least_zero(const QuadraticForm& phi) {
  std::optional<Vec> found;
  testgen::for_each_vector(phi.field(), phi.dim(), [&](const Vec& v) {
    bool nz = false;
    for (const auto& x : v) nz = nz || !x.is_zero();
    if (nz && evaluate(phi, v).is_zero()) {
      found = v;
      return false;
    }
    return true;
  });
  return found;
}

bool nonzero_vector(const Vec& v) {
  for (const auto& x : v) {
    if (!x.is_zero()) return true;
  }
  return false;
}

}  // namespace

TEST(Isotropy, FiniteFieldExamples) {
  const Field g2 = parse_field("GF(2)");
  const Field g4 = parse_field("GF(4)");
  EXPECT_FALSE(isotropy_ff(form(g2, "[1,1]")));
  const auto w4 = isotropy_ff(form(g4, "[1,1]"));
  ASSERT_TRUE(w4);
  EXPECT_TRUE(evaluate(form(g4, "[1,1]"), *w4).is_zero());
  // (1,1,1) is also isotropic; the least one in the enumeration order is returned.
  const QuadraticForm p = form(g2, "[1,1]+<1>");
  EXPECT_TRUE(evaluate(p, {g2.one(), g2.one(), g2.one()}).is_zero());
  EXPECT_EQ(*isotropy_ff(p), (Vec{g2.zero(), g2.one(), g2.one()}));
  try {
    isotropy_ff(form(parse_field("GF(2^8)"), "[1,1]+[1,1]+[1,1]"), 1000);
    ADD_FAILURE() << "expected a budget error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
  }
}

TEST(Isotropy, LeastWitnessMatchesEnumeration) {
  testgen::Rng rng(41);
  for (const char* fs : {"GF(2)", "GF(4)", "GF(8)"}) {
    const Field f = parse_field(fs);
    for (int i = 0; i < 300; ++i) {
      const QuadraticForm phi = testgen::form_up_to(f, rng, 4);
      ASSERT_EQ(isotropy_ff(phi), least_zero(phi)) << phi.to_string();
    }
  }
}

TEST(Isotropy, ChevalleyDimensionThreeExhaustive) {
  for (const char* fs : {"GF(2)", "GF(4)", "GF(8)"}) {
    const Field f = parse_field(fs);
    const std::uint32_t q = static_cast<std::uint32_t>(f.ff().size());
    for (std::uint32_t a = 0; a < q; ++a) {
      for (std::uint32_t b = 0; b < q; ++b) {
        for (std::uint32_t c = 0; c < q; ++c) {
          const QuadraticForm phi(f, {Plane{Element::finite(f, a), Element::finite(f, b)}},
                                  {Element::finite(f, c)});
          ASSERT_TRUE(least_zero(phi)) << phi.to_string();
          ASSERT_TRUE(is_isotropic(phi)) << phi.to_string();
        }
      }
    }
  }
}

TEST(Isotropy, WittExamples) {
  const Field g2 = parse_field("GF(2)");
  const WittDecomposition a = witt_decompose(form(g2, "[1,1]+[1,1]"));
  EXPECT_EQ(a.i_W, 2);
  EXPECT_EQ(a.i_d, 0);
  EXPECT_EQ(a.anisotropic_part.dim(), 0);
  const WittDecomposition b = witt_decompose(form(g2, "[1,1]+<1>"));
  EXPECT_EQ(b.i_W, 1);
  EXPECT_EQ(b.i_d, 0);
  EXPECT_EQ(b.anisotropic_part, form(g2, "<1>"));
  const Field t = parse_field("GF(2)(t)");
  const WittDecomposition c = witt_decompose(form(t, "<1,t,t^2>"));
  EXPECT_EQ(c.i_W, 0);
  EXPECT_EQ(c.i_d, 1);
  EXPECT_EQ(c.anisotropic_part, form(t, "<1,t>"));
}

TEST(Isotropy, WittConservationAndStability) {
  testgen::Rng rng(42);
  for (const char* fs : {"GF(2)", "GF(4)", "GF(8)", "GF(16)"}) {
    const Field f = parse_field(fs);
    // Adding H must stay within the enumeration budget.
    const int max_dim = f.ff().size() > 8 ? 4 : 5;
    for (int i = 0; i < 200; ++i) {
      const QuadraticForm phi = testgen::form_up_to(f, rng, max_dim);
      const WittDecomposition w = witt_decompose(phi);
      ASSERT_EQ(phi.dim(), 2 * w.i_W + w.i_d + w.anisotropic_part.dim()) << phi.to_string();
      ASSERT_FALSE(least_zero(w.anisotropic_part)) << phi.to_string();
      ASSERT_TRUE(isometry_test(w.reassemble(), phi).isometric) << phi.to_string();
      for (const auto& v : w.witnesses) {
        ASSERT_TRUE(nonzero_vector(v));
        ASSERT_TRUE(evaluate(phi, v).is_zero());
      }
      const WittDecomposition h = witt_decompose(direct_sum(phi, form(f, "H")));
      ASSERT_EQ(h.i_W, w.i_W + 1);
      ASSERT_EQ(h.i_d, w.i_d);
      ASSERT_TRUE(isometry_test(h.anisotropic_part, w.anisotropic_part).isometric);

      const FiniteClass fc = finite_class(phi);
      ASSERT_EQ(fc.dim, phi.dim());
      ASSERT_EQ(fc.i_W, w.i_W) << phi.to_string();
      ASSERT_EQ(fc.i_d, w.i_d) << phi.to_string();
      ASSERT_EQ(fc.an_dim, w.anisotropic_part.dim()) << phi.to_string();
    }
  }
}

TEST(Isotropy, QuasilinearTowerDefect) {
  testgen::Rng rng(43);
  for (const char* fs : {"GF(2)(t)", "GF(2)(s)(t)", "GF(4)(t)"}) {
    const Field f = parse_field(fs);
    for (int i = 0; i < 150; ++i) {
      const QuadraticForm phi = testgen::form(f, rng, 0, 1 + static_cast<int>(rng() % 4));
      const WittDecomposition w = witt_decompose(phi);
      ASSERT_EQ(w.i_W, 0);
      ASSERT_EQ(phi.dim(), w.i_d + w.anisotropic_part.dim());
      ASSERT_FALSE(quasilinear_isotropy_tower(w.anisotropic_part)) << phi.to_string();
      for (const auto& v : w.witnesses) ASSERT_TRUE(evaluate(phi, v).is_zero());
      const auto iso = quasilinear_isotropy_tower(phi);
      ASSERT_EQ(iso.has_value(), w.i_d > 0) << phi.to_string();
      if (iso) {
        ASSERT_TRUE(nonzero_vector(*iso));
        ASSERT_TRUE(evaluate(phi, *iso).is_zero());
      }
    }
  }
}

TEST(Isotropy, QuasilinearExamples) {
  const Field st = parse_field("GF(2)(s)(t)");
  EXPECT_FALSE(quasilinear_isotropy_tower(form(st, "<1,s,t,s*t>")));
  EXPECT_EQ(*quasilinear_isotropy_tower(form(st, "<1,s,s>")), (Vec{st.zero(), st.one(), st.one()}));
  EXPECT_EQ(*quasilinear_isotropy_tower(form(st, "<s^2,1>")), (Vec{st.one(), el(st, "s")}));
}

TEST(Isotropy, ResidueCertificateExamples) {
  const Field x = parse_field("GF(2)(X)");
  const auto c = residue_anisotropy(form(x, "<1,X>"));
  ASSERT_TRUE(c);
  EXPECT_TRUE(verify_certificate(*c));
  const auto d = residue_anisotropy(form(x, "[1,1]+X*([1,1])"));
  ASSERT_TRUE(d);
  EXPECT_TRUE(verify_certificate(*d));
  ASSERT_EQ(d->children.size(), 2u);
  for (const auto& leaf : d->children) EXPECT_EQ(leaf.form.to_string(), "[1,1]");
  EXPECT_FALSE(residue_anisotropy(form(x, "H")));

  // A certificate whose leaf is replaced by an isotropic form is rejected.
  CertificateNode bad = *d;
  bad.children[0].form = form(parse_field("GF(2)"), "H");
  EXPECT_FALSE(verify_certificate(bad));
}

TEST(Isotropy, ResidueCertificatesNeverMeetWitnesses) {
  testgen::Rng rng(44);
  for (const char* fs : {"GF(2)(t)", "GF(4)(t)"}) {
    const Field f = parse_field(fs);
    int certified = 0, found = 0;
    for (int i = 0; i < 150; ++i) {
      const QuadraticForm phi = testgen::form_up_to(f, rng, 3, true);
      const auto cert = residue_anisotropy(phi);
      const auto w = bounded_isotropy_search(phi, 1);
      if (cert) {
        ++certified;
        ASSERT_TRUE(verify_certificate(*cert)) << phi.to_string();
        ASSERT_FALSE(w) << phi.to_string() << " has " << vector_to_string(*w);
      }
      if (w) {
        ++found;
        ASSERT_TRUE(nonzero_vector(*w));
        ASSERT_TRUE(evaluate(phi, *w).is_zero());
      }
    }
    EXPECT_GT(certified, 0);
    EXPECT_GT(found, 0);
  }
}

TEST(Isotropy, BoundedSearchExamples) {
  const Field t = parse_field("GF(2)(t)");
  EXPECT_EQ(*bounded_isotropy_search(form(t, "<1,t,t^2>"), 1), (Vec{el(t, "t"), t.zero(), t.one()}));
  EXPECT_FALSE(bounded_isotropy_search(form(t, "<1,t>"), 4));
  EXPECT_TRUE(residue_anisotropy(form(t, "<1,t>")));
  const Field g2 = parse_field("GF(2)");
  // (1,0) is isotropic too; (0,1) comes first lexicographically.
  EXPECT_EQ(*bounded_isotropy_search(form(g2, "H"), 0), (Vec{g2.zero(), g2.one()}));
}

TEST(Isotropy, QuadraticExtensionExamples) {
  const Field t = parse_field("GF(2)(t)");
  const auto a = quad_ext_isotropy(form(t, "<1,t>"), ExtensionKind::Inseparable, el(t, "t"));
  EXPECT_TRUE(a.isotropic);
  ASSERT_TRUE(a.c);
  EXPECT_EQ(*a.c, t.one());
  const Field g2 = parse_field("GF(2)");
  const auto b = quad_ext_isotropy(form(g2, "[1,1]"), ExtensionKind::Separable, g2.one());
  EXPECT_TRUE(b.isotropic);
  EXPECT_EQ(*b.c, g2.one());
  const Field st = parse_field("GF(2)(s)(t)");
  EXPECT_FALSE(quad_ext_isotropy(form(st, "<1,s>"), ExtensionKind::Inseparable, el(st, "t")).isotropic);
}

TEST(Isotropy, QuadraticExtensionWitnessesEmbed) {
  testgen::Rng rng(45);
  for (const char* fs : {"GF(2)", "GF(4)", "GF(8)"}) {
    const Field f = parse_field(fs);
    for (int i = 0; i < 200; ++i) {
      const QuadraticForm phi = testgen::form_up_to(f, rng, 4, true);
      Element d = testgen::finite(f, rng, true);
      while (f.ff().trace(d.ff_value()) == 0) d = testgen::finite(f, rng, true);
      const auto r = quad_ext_isotropy(phi, ExtensionKind::Separable, d);
      // Over a finite field, F(wp^-1(d)) is GF(q^2); compare with the embedded form.
      const Field big = Field::gf2k(2 * f.ff().bits());
      const bool expect = least_zero(finite_embedding(phi, big)).has_value();
      ASSERT_EQ(r.isotropic, expect) << phi.to_string() << " d = " << d.to_string();
      // No c is reported when phi is already isotropic over F.
      if (r.c) {
        const QuadraticForm target = scale(*r.c, QuadraticForm(f, {Plane{f.one(), d}}, {}));
        ASSERT_TRUE(verify_embedding(target, phi, r.witness)) << phi.to_string();
      }
    }
  }
}

TEST(Isotropy, FiniteEmbeddingIsARingMap) {
  const Field g4 = parse_field("GF(4)");
  const Field g16 = parse_field("GF(16)");
  for (std::uint32_t a = 0; a < 4; ++a) {
    for (std::uint32_t b = 0; b < 4; ++b) {
      const Element x = Element::finite(g4, a), y = Element::finite(g4, b);
      ASSERT_EQ(finite_embedding(x + y, g16), finite_embedding(x, g16) + finite_embedding(y, g16));
      ASSERT_EQ(finite_embedding(x * y, g16), finite_embedding(x, g16) * finite_embedding(y, g16));
    }
  }
}

TEST(Isotropy, FunctionFieldExamples) {
  const Field g2 = parse_field("GF(2)");
  EXPECT_TRUE(isotropy_over_form_function_field(form(g2, "[1,1]"), form(g2, "[1,1]")).isotropic);
  EXPECT_FALSE(isotropy_over_form_function_field(form(g2, "<1>"), form(g2, "[1,1]")).isotropic);
  const auto h = isotropy_over_form_function_field(form(g2, "[1,1]"), form(g2, "H"));
  EXPECT_FALSE(h.isotropic);
  bool mentions = false;
  for (const auto& line : h.trace) mentions = mentions || line.find("purely transcendental") != std::string::npos;
  EXPECT_TRUE(mentions);
}

// Isotropy over F(psi) followed by isotropy over F(sigma) composes, over
// every triple of nondefective forms of dimension <= 4 (psi, sigma of
// dimension >= 2).
TEST(Isotropy, TransitivitySweepOverGF2AndGF4) {
  for (const char* fs : {"GF(2)", "GF(4)"}) {
    const Field f = parse_field(fs);
    std::vector<QuadraticForm> all = nondefective_forms(f, 4);
    std::vector<QuadraticForm> big;
    for (const auto& p : all) {
      if (p.dim() >= 2) big.push_back(p);
    }
    // iso[i][j]: all[i] isotropic over F(big[j]); link[i][j]: big[i] over F(big[j]).
    std::vector<std::vector<char>> iso(all.size(), std::vector<char>(big.size()));
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = 0; j < big.size(); ++j) {
        iso[i][j] = isotropy_over_form_function_field(all[i], big[j]).isotropic;
      }
    }
    std::vector<std::vector<char>> link(big.size(), std::vector<char>(big.size()));
    for (std::size_t i = 0; i < big.size(); ++i) {
      for (std::size_t j = 0; j < big.size(); ++j) {
        link[i][j] = isotropy_over_form_function_field(big[i], big[j]).isotropic;
      }
    }
    long triples = 0;
    for (std::size_t a = 0; a < all.size(); ++a) {
      for (std::size_t b = 0; b < big.size(); ++b) {
        if (!iso[a][b]) continue;
        for (std::size_t c = 0; c < big.size(); ++c) {
          if (!link[b][c]) continue;
          ++triples;
          ASSERT_TRUE(iso[a][c]) << all[a].to_string() << " / " << big[b].to_string() << " / "
                                 << big[c].to_string();
        }
      }
    }
    EXPECT_GT(triples, 0);
  }
  // The report form agrees on a sample.
  const Field g2 = parse_field("GF(2)");
  const TheoremReport r = check_transitivity(form(g2, "[1,1]+<1>"), form(g2, "[1,1]"), form(g2, "[1,1]+[1,1]"));
  EXPECT_TRUE(r.consistent);
  EXPECT_TRUE(reverify(r).empty());
}
