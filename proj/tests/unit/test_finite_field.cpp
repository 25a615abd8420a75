#include <gtest/gtest.h>

#include "c2qf/finite_field.hpp"
#include "c2qf/parse.hpp"
#include "c2qf/tower.hpp"
#include "gen.hpp"

using namespace c2qf;

namespace {

const std::uint32_t kPinned[17] = {0,     0x3,   0x7,   0xB,   0x13,   0x25,   0x43,   0x83,  0x11D,
                                   0x211, 0x409, 0x805, 0x1053, 0x201B, 0x4443, 0x8003, 0x1100B};

int deg(std::uint64_t p) {
  int d = -1;
  while (p) {
    p >>= 1;
    ++d;
  }
  return d;
}

std::uint64_t polymod(std::uint64_t a, std::uint64_t m) {
  const int dm = deg(m);
  while (a && deg(a) >= dm) a ^= m << (deg(a) - dm);
  return a;
}

// Trial division by every polynomial of degree 1..deg/2.
bool irreducible_oracle(std::uint64_t m) {
  const int d = deg(m);
  for (std::uint64_t f = 2; deg(f) <= d / 2; ++f) {
    if (polymod(m, f) == 0) return false;
  }
  return true;
}

// Carry-less product reduced by the modulus.
std::uint32_t mul_oracle(std::uint32_t a, std::uint32_t b, std::uint32_t m) {
  std::uint64_t p = 0;
  for (int i = 0; i < 32; ++i) {
    if (b >> i & 1) p ^= std::uint64_t{a} << i;
  }
  return static_cast<std::uint32_t>(polymod(p, m));
}

}  // namespace

TEST(FiniteField, PinnedModuliAreTheDocumentedIrreducibles) {
  for (int k = 1; k <= 16; ++k) {
    EXPECT_EQ(FiniteField::pinned_modulus(k), kPinned[k]) << "k = " << k;
    EXPECT_EQ(deg(kPinned[k]), k);
    EXPECT_TRUE(irreducible_oracle(kPinned[k])) << "k = " << k;
  }
}

TEST(FiniteField, MultiplicationMatchesCarrylessOracle) {
  testgen::Rng rng(11);
  for (int k = 1; k <= 16; ++k) {
    const auto F = FiniteField::gf2k(k);
    const std::uint32_t m = kPinned[k];
    if (k <= 5) {
      for (std::uint32_t a = 0; a < F->size(); ++a) {
        for (std::uint32_t b = 0; b < F->size(); ++b) ASSERT_EQ(F->mul(a, b), mul_oracle(a, b, m));
      }
      continue;
    }
    for (int i = 0; i < 1000; ++i) {
      const auto a = static_cast<std::uint32_t>(rng() & F->mask());
      const auto b = static_cast<std::uint32_t>(rng() & F->mask());
      ASSERT_EQ(F->mul(a, b), mul_oracle(a, b, m)) << "k = " << k;
    }
  }
}

TEST(FiniteField, InverseSqrtTraceProperties) {
  testgen::Rng rng(12);
  for (int k = 1; k <= 16; ++k) {
    const auto F = FiniteField::gf2k(k);
    for (int i = 0; i < 300; ++i) {
      const auto a = static_cast<std::uint32_t>(rng() & F->mask());
      const auto b = static_cast<std::uint32_t>(rng() & F->mask());
      EXPECT_EQ(F->sqr(F->sqrt(a)), a);
      // Trace oracle: sum of the Frobenius conjugates.
      std::uint32_t t = 0, c = a;
      for (int j = 0; j < k; ++j) {
        t ^= c;
        c = F->sqr(c);
      }
      ASSERT_TRUE(t == 0 || t == 1);
      EXPECT_EQ(F->trace(a), static_cast<int>(t));
      EXPECT_EQ(F->trace(a ^ b), F->trace(a) ^ F->trace(b));
      if (a) EXPECT_EQ(F->mul(a, F->inv(a)), 1u);
    }
  }
}

TEST(FiniteField, ArtinSchreierLeastRootAgainstExhaustion) {
  for (int k = 1; k <= 8; ++k) {
    const auto F = FiniteField::gf2k(k);
    for (std::uint32_t c = 0; c < F->size(); ++c) {
      std::optional<std::uint32_t> least;
      for (std::uint32_t y = 0; y < F->size() && !least; ++y) {
        if ((F->sqr(y) ^ y) == c) least = y;
      }
      EXPECT_EQ(F->artin_schreier(c), least) << "k = " << k << ", c = " << c;
      EXPECT_EQ(least.has_value(), F->trace(c) == 0);
    }
  }
}

TEST(FiniteField, SpecExamples) {
  const Field g4 = parse_field("GF(4)");
  const Element w = parse_element(g4, "w");
  EXPECT_EQ(w * w * w, g4.one());
  EXPECT_EQ(*sqrt_if_square(w), w * w);
  EXPECT_FALSE(artin_schreier_solve(parse_field("GF(2)").one()).root);
  EXPECT_EQ(*artin_schreier_solve(g4.one()).root, w);
  EXPECT_EQ(*artin_schreier_solve(g4.zero()).root, g4.zero());
}

TEST(FiniteField, FieldAxiomsOnSamples) {
  testgen::Rng rng(13);
  for (int k : {1, 2, 3, 8, 16}) {
    const Field f = Field::gf2k(k);
    for (int i = 0; i < 1000; ++i) {
      const Element a = testgen::finite(f, rng), b = testgen::finite(f, rng), c = testgen::finite(f, rng);
      ASSERT_EQ((a * b) * c, a * (b * c));
      ASSERT_EQ(a * (b + c), a * b + a * c);
      ASSERT_EQ(square(a + b), square(a) + square(b));
      if (!a.is_zero()) ASSERT_EQ(a * inv(a), f.one());
    }
  }
}
