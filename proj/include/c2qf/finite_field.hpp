#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace c2qf {

// Arithmetic in a finite field of characteristic 2.
//
// Elements are packed into a uint32. For GF(2^k) the packing is the
// coefficient vector of the residue class of x modulo the pinned modulus.
// For an extension B[X]/(f) of a smaller field B (used for residue fields),
// element digit i (an element of B) occupies bits [i*b, (i+1)*b) where
// b = B.bits(). In both cases addition is XOR, so the packed bits are
// coordinates with respect to a GF(2)-basis.
class FiniteField {
 public:
  static constexpr int kMaxPinnedDegree = 16;
  static constexpr int kMaxBits = 30;

  // GF(2^k) with the pinned modulus for k. Instances are shared.
  static std::shared_ptr<const FiniteField> gf2k(int k);

  // base[X]/(modulus). modulus is monic, low-to-high packed base elements,
  // and must be irreducible over base (not checked here).
  static std::shared_ptr<const FiniteField> extension(
      std::shared_ptr<const FiniteField> base, std::vector<std::uint32_t> modulus);

  // The pinned modulus of GF(2^k), bit i = coefficient of x^i.
  static std::uint32_t pinned_modulus(int k);

  int bits() const { return bits_; }
  std::uint64_t size() const { return std::uint64_t{1} << bits_; }
  std::uint32_t mask() const { return static_cast<std::uint32_t>(size() - 1); }

  bool is_prime_field() const { return bits_ == 1; }
  bool is_extension() const { return base_ != nullptr; }
  const std::shared_ptr<const FiniteField>& base() const { return base_; }
  // Modulus of an extension as base digits (low to high, monic).
  const std::vector<std::uint32_t>& ext_modulus() const { return ext_modulus_; }
  int ext_degree() const { return ext_degree_; }
  std::uint32_t gf2_modulus() const { return gf2_modulus_; }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sqr(std::uint32_t a) const { return mul(a, a); }
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
  std::uint32_t sqrt(std::uint32_t a) const;
  // Absolute trace to GF(2).
  int trace(std::uint32_t a) const;
  // Least root (numerically) of y^2 + y = c, if any.
  std::optional<std::uint32_t> artin_schreier(std::uint32_t c) const;
  // Least root of a*y^2 + b*y + c = 0, if any. Requires (a, b) != (0, 0).
  std::optional<std::uint32_t> least_root(std::uint32_t a, std::uint32_t b,
                                          std::uint32_t c) const;

  // The distinguished generator: x for GF(2^k), the class of X for
  // extensions.
  std::uint32_t generator() const;
  // A generator of the multiplicative group.
  std::uint32_t primitive() const { return primitive_; }

  std::uint32_t digit(std::uint32_t a, int i) const;
  std::uint32_t from_digits(const std::vector<std::uint32_t>& digits) const;
  int base_bits() const { return base_ ? base_->bits() : 1; }

  // Short description, e.g. "GF(2^3)" or "GF(2)[X]/(X^2+X+1)".
  std::string describe(const std::string& var = "X") const;
  std::string element_string(std::uint32_t a, const std::string& var) const;

  FiniteField(const FiniteField&) = delete;
  FiniteField& operator=(const FiniteField&) = delete;
  FiniteField() = default;

 private:
  std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b) const;
  void build_tables();

  int bits_ = 1;
  std::uint32_t gf2_modulus_ = 0;
  std::shared_ptr<const FiniteField> base_;
  std::vector<std::uint32_t> ext_modulus_;
  int ext_degree_ = 1;
  std::uint32_t primitive_ = 1;
  std::uint32_t trace_mask_ = 0;
  bool tables_ = false;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> sqrt_;
  std::vector<std::uint32_t> as_root_;  // 0xffffffff when absent
};

using FiniteFieldPtr = std::shared_ptr<const FiniteField>;

}  // namespace c2qf
