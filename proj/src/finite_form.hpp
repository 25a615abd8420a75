#pragma once

#include <cstdint>
#include <vector>

#include "c2qf/form.hpp"

namespace c2qf {

// A form over a finite field with packed coefficients, for the exhaustive
// searches. Coordinates follow QuadraticForm: plane pairs, then diagonal.
struct PackedForm {
  const FiniteField* F = nullptr;
  Field field;
  std::vector<std::uint32_t> a, b, c;
  int r = 0, s = 0;

  explicit PackedForm(const QuadraticForm& phi);
  int dim() const { return 2 * r + s; }

  std::uint32_t eval(const std::uint32_t* v) const {
    std::uint32_t acc = 0;
    for (int i = 0; i < r; ++i) {
      const std::uint32_t x = v[2 * i], y = v[2 * i + 1];
      acc ^= F->mul(a[i], F->sqr(x)) ^ F->mul(x, y) ^ F->mul(b[i], F->sqr(y));
    }
    for (int j = 0; j < s; ++j) acc ^= F->mul(c[j], F->sqr(v[2 * r + j]));
    return acc;
  }

  std::uint32_t polar(const std::uint32_t* u, const std::uint32_t* v) const {
    std::uint32_t acc = 0;
    for (int i = 0; i < r; ++i) acc ^= F->mul(u[2 * i], v[2 * i + 1]) ^ F->mul(u[2 * i + 1], v[2 * i]);
    return acc;
  }

  Vec unpack(const std::vector<std::uint32_t>& v) const;
};

std::vector<std::uint32_t> pack_vector(const Vec& v, Field f);

}  // namespace c2qf
