#include <gtest/gtest.h>

#include <algorithm>

#include "c2qf/json_io.hpp"
#include "c2qf/parse.hpp"
#include "c2qf/theoremlab.hpp"
#include "gen.hpp"

using namespace c2qf;

namespace {

QuadraticForm form(Field f, const char* s) { return parse_form(f, s); }

std::optional<bool> value(const TheoremReport& r, const std::string& id) {
  return decided_value(r.condition(id).verdict);
}

void expect_sound(const TheoremReport& r) {
  EXPECT_TRUE(r.consistent) << r.theorem << " " << r.instance;
  const auto failures = reverify(r);
  EXPECT_TRUE(failures.empty()) << r.instance << ": " << (failures.empty() ? "" : failures[0]);
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

TEST(TheoremLab, DecidedValues) {
  EXPECT_EQ(decided_value(Verdict::Holds), true);
  EXPECT_EQ(decided_value(Verdict::Fails), false);
  EXPECT_EQ(decided_value(Verdict::Refuted), false);
  EXPECT_FALSE(decided_value(Verdict::Supported));
  EXPECT_FALSE(decided_value(Verdict::Undecided));
}

TEST(TheoremLab, EquivalenceExamples) {
  const Field g2 = parse_field("GF(2)");
  const TheoremReport same = check_th44(form(g2, "[1,1]"), form(g2, "[1,1]"));
  EXPECT_EQ(same.condition("i").verdict, Verdict::Holds);
  EXPECT_NE(value(same, "ii"), false);
  expect_sound(same);

  const TheoremReport quasi = check_th44(form(g2, "<1>"), form(g2, "[1,1]"));
  EXPECT_EQ(quasi.condition("i").verdict, Verdict::Fails);
  EXPECT_EQ(value(quasi, "iii"), false);
  EXPECT_FALSE(quasi.condition("iii").refutations.empty());
  expect_sound(quasi);

  const TheoremReport sep = check_th44(form(g2, "[1,1]+<1>"), form(g2, "[1,1]"));
  EXPECT_EQ(sep.condition("i").verdict, Verdict::Holds);
  expect_sound(sep);
}

TEST(TheoremLab, StableEquivalenceExamples) {
  const Field g4 = parse_field("GF(4)");
  // [1,1] is split over GF(4) while [1,w] is not.
  const TheoremReport a = check_stb(form(g4, "[1,1]"), form(g4, "[1,w]"));
  EXPECT_EQ(value(a, "a"), false);
  expect_sound(a);
  const TheoremReport b = check_stb(form(g4, "[1,w]"), form(g4, "[w,1]"));
  EXPECT_EQ(value(b, "a"), true);
  expect_sound(b);
  const Field g2 = parse_field("GF(2)");
  const TheoremReport c = check_stb(form(g2, "[1,1]"), form(g2, "H"));
  EXPECT_EQ(c.condition("a").verdict, Verdict::Fails);
  expect_sound(c);
}

TEST(TheoremLab, XSumExamples) {
  const Field g2 = parse_field("GF(2)");
  const QuadraticForm one = form(g2, "<1>");
  const TheoremReport a = check_xsum(one, one, one, one);
  EXPECT_EQ(value(a, "i"), true);
  EXPECT_NE(value(a, "iii"), false);
  expect_sound(a);

  // Over GF(2) alone both product sets are {1}, but <1,X> stays anisotropic
  // over the function field of a form with a nonsingular part, and a
  // rational sample exhibits that.
  const TheoremReport b = check_xsum(one, one, one, form(g2, "[1,1]"));
  EXPECT_EQ(value(b, "i"), false);
  EXPECT_EQ(value(b, "iii"), false);
  expect_sound(b);

  const Field g8 = parse_field("GF(8)");
  const TheoremReport c = check_xsum(form(g8, "<1>"), form(g8, "<1>"), form(g8, "[1,1]"), form(g8, "[1,1]"));
  EXPECT_EQ(value(c, "iii"), false);
  expect_sound(c);
}

TEST(TheoremLab, PfisterTransferExamples) {
  const Field g2 = parse_field("GF(2)");
  const QuadraticForm p = form(g2, "[1,1]");
  const TheoremReport a = check_pfister_transfer(p, p, parse_pfister(g2, "pf(1)"));
  EXPECT_EQ(a.condition("hypothesis").verdict, Verdict::Holds);
  EXPECT_EQ(a.condition("conclusion").verdict, Verdict::Holds);
  expect_sound(a);

  const TheoremReport b = check_pfister_transfer(p, form(g2, "[1,1]+<1>"), BilinearPfister{g2, {}});
  EXPECT_EQ(value(b, "hypothesis"), value(b, "conclusion"));
  expect_sound(b);

  const TheoremReport c = check_pfister_transfer(form(g2, "<1>"), form(g2, "<1>"), parse_pfister(g2, "pf(1)"));
  EXPECT_EQ(value(c, "hypothesis"), false);
  expect_sound(c);
}

TEST(TheoremLab, TransferAndTransitivityOverGF2) {
  const Field g2 = parse_field("GF(2)");
  const auto forms = nondefective_forms(g2, 3);
  const BilinearPfister pi = parse_pfister(g2, "pf(1)");
  for (const auto& phi : forms) {
    for (const auto& psi : forms) {
      if (psi.dim() < 2) continue;
      const TheoremReport r = check_pfister_transfer(phi, psi, pi);
      ASSERT_TRUE(r.consistent) << r.instance;
      if (value(r, "hypothesis") == true) ASSERT_EQ(value(r, "conclusion"), true) << r.instance;
      for (const auto& sigma : forms) {
        if (sigma.dim() < 2) continue;
        const TheoremReport t = check_transitivity(phi, psi, sigma);
        ASSERT_TRUE(t.consistent) << t.instance;
      }
    }
  }
}

TEST(TheoremLab, CounterexamplesReproduce) {
  const auto [one, two] = run_counterexamples();
  expect_sound(one);
  expect_sound(two);
  EXPECT_EQ(one.condition("transfer_isotropic").verdict, Verdict::Holds);
  EXPECT_EQ(one.condition("phi_over_F(psi)").verdict, Verdict::Fails);
  EXPECT_EQ(two.condition("isometry").verdict, Verdict::Holds);
  EXPECT_EQ(two.condition("similar").verdict, Verdict::Fails);
  EXPECT_EQ(two.condition("phi_over_F(psi)").verdict, Verdict::Fails);

  // The isotropic vector of <1,s,s,s^2>.
  const Field st = parse_field("GF(2)(s)(t)");
  bool leaf = false;
  for (const auto& c : one.conditions) {
    for (const auto& rec : c.isotropic) {
      if (rec.form == form(st, "<1,s,s,s^2>")) {
        leaf = true;
        EXPECT_EQ(rec.vector, (Vec{st.zero(), st.one(), st.one(), st.zero()}));
      }
    }
  }
  EXPECT_TRUE(leaf);
}

// On small sweeps every report is consistent, every stored witness
// re-verifies, and Supported never coexists with a refutation record.
TEST(TheoremLab, SmallSweepsAreSound) {
  for (const char* fs : {"GF(2)", "GF(4)"}) {
    const Field f = parse_field(fs);
    const auto forms = nondefective_forms(f, fs[3] == '2' ? 3 : 2);
    SweepSummary sum;
    for (const auto& phi : forms) {
      for (const auto& psi : forms) {
        if (psi.dim() < 2) continue;
        const TheoremReport r = check_th44(phi, psi);
        sum.add(r);
        ASSERT_TRUE(r.consistent) << r.instance;
        ASSERT_TRUE(reverify(r).empty()) << r.instance;
        for (const auto& c : r.conditions) {
          if (c.verdict == Verdict::Supported) ASSERT_TRUE(c.refutations.empty()) << r.instance << " " << c.id;
          if (!decided_value(c.verdict)) ASSERT_TRUE(contains(r.undecided, c.id) || c.verdict == Verdict::Supported);
        }
        if (phi.dim() < 2) continue;
        const TheoremReport s = check_stb(phi, psi);
        sum.add(s);
        ASSERT_TRUE(s.consistent) << s.instance;
        ASSERT_TRUE(reverify(s).empty()) << s.instance;
      }
    }
    EXPECT_EQ(sum.consistent, sum.instances);
    EXPECT_EQ(sum.reverify_failures, 0);
  }
}

// More extension samples never turn a refutation into support.
TEST(TheoremLab, RefutationsPersistUnderMoreSamples) {
  const Field g2 = parse_field("GF(2)");
  const auto forms = nondefective_forms(g2, 3);
  SampleOptions small;
  small.max_degree = 2;
  SampleOptions large;
  large.max_degree = 4;
  for (const auto& phi : forms) {
    for (const auto& psi : forms) {
      if (psi.dim() < 2) continue;
      const TheoremReport a = check_th44(phi, psi, small);
      const TheoremReport b = check_th44(phi, psi, large);
      ASSERT_LE(a.samples.size(), b.samples.size());
      for (const auto& s : a.samples) ASSERT_TRUE(contains(b.samples, s)) << s;
      for (const auto& c : a.conditions) {
        if (c.verdict == Verdict::Refuted) ASSERT_NE(b.condition(c.id).verdict, Verdict::Supported) << a.instance;
        if (decided_value(c.verdict)) ASSERT_EQ(decided_value(b.condition(c.id).verdict), decided_value(c.verdict));
      }
    }
  }
}

TEST(TheoremLab, JsonRoundTripAndReverify) {
  const Field g2 = parse_field("GF(2)");
  const Field g4 = parse_field("GF(4)");
  std::vector<TheoremReport> reports{
      check_th44(form(g2, "<1>"), form(g2, "[1,1]")),
      check_th44(form(g2, "[1,1]+<1>"), form(g2, "[1,1]")),
      check_stb(form(g4, "[1,1]"), form(g4, "[1,w]")),
      check_xsum(form(g2, "<1>"), form(g2, "<1>"), form(g2, "<1>"), form(g2, "[1,1]")),
      check_pfister_transfer(form(g2, "[1,1]"), form(g2, "[1,1]"), parse_pfister(g2, "pf(1)")),
      check_transitivity(form(g2, "[1,1]+<1>"), form(g2, "[1,1]"), form(g2, "[1,1]+[1,1]")),
  };
  const auto ce = run_counterexamples();
  reports.push_back(ce.first);
  reports.push_back(ce.second);
  for (const auto& r : reports) {
    const Json j = report_to_json(r);
    const TheoremReport back = report_from_json(Json::parse(j.dump()));
    EXPECT_EQ(report_to_json(back), j) << r.instance;
    EXPECT_TRUE(reverify(back).empty()) << r.instance;
    EXPECT_EQ(back.consistent, r.consistent);
  }
}

TEST(TheoremLab, CertificateJsonRoundTrip) {
  const Field x = parse_field("GF(2)(X)");
  const RepresentationCertificate c{form(x, "[1,1]"), parse_element(x, "X^2+X+1"), x.one(),
                                    {{parse_element(x, "X"), x.one()}}};
  const RepresentationCertificate back = certificate_from_json(Json::parse(certificate_to_json(c).dump()));
  EXPECT_EQ(back.form, c.form);
  EXPECT_EQ(back.target, c.target);
  EXPECT_EQ(back.vectors, c.vectors);
  EXPECT_TRUE(verify_representation(back).pass);

  const auto node = residue_anisotropy(form(x, "[1,1]+X*([1,1])"));
  ASSERT_TRUE(node);
  const CertificateNode nb = anisotropy_from_json(Json::parse(anisotropy_to_json(*node).dump()));
  EXPECT_EQ(anisotropy_to_json(nb), anisotropy_to_json(*node));
  EXPECT_TRUE(verify_certificate(nb));
}
