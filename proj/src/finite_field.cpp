#include "c2qf/finite_field.hpp"

#include <array>
#include <bit>
#include <mutex>

#include "c2qf/errors.hpp"

namespace c2qf {

namespace {

// Primitive polynomials over GF(2), one per degree. Index = degree.
constexpr std::array<std::uint32_t, 17> kPinned = {
    0x0,   0x3,    0x7,    0xB,    0x13,   0x25,   0x43,   0x83,  0x11D,
    0x211, 0x409, 0x805, 0x1053, 0x201B, 0x4443, 0x8003, 0x1100B,
};

std::uint32_t clmul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t modulus, int k) {
  std::uint32_t r = 0;
  const std::uint32_t top = std::uint32_t{1} << k;
  while (b) {
    if (b & 1) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a & top) a ^= modulus;
  }
  return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

constexpr std::uint32_t kNone = 0xffffffffu;

}  // namespace

std::uint32_t FiniteField::pinned_modulus(int k) {
  if (k < 1 || k > kMaxPinnedDegree) {
    fail(ErrorCode::UnsupportedField, "GF(2^" + std::to_string(k) + ") is not supported");
  }
  return kPinned[static_cast<std::size_t>(k)];
}

FiniteFieldPtr FiniteField::gf2k(int k) {
  static std::mutex mu;
  static std::array<FiniteFieldPtr, kMaxPinnedDegree + 1> cache;
  const std::uint32_t modulus = pinned_modulus(k);
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[static_cast<std::size_t>(k)];
  if (!slot) {
    auto f = std::make_shared<FiniteField>();
    f->bits_ = k;
    f->gf2_modulus_ = modulus;
    f->build_tables();
    slot = f;
  }
  return slot;
}

FiniteFieldPtr FiniteField::extension(FiniteFieldPtr base, std::vector<std::uint32_t> modulus) {
  if (modulus.size() < 2 || modulus.back() != 1) {
    fail(ErrorCode::PreconditionViolated, "extension modulus must be monic of degree >= 1");
  }
  const int d = static_cast<int>(modulus.size()) - 1;
  if (d == 1) {
    // Degree one: the residue field is the base itself.
    return base;
  }
  if (base->bits() * d > kMaxBits) {
    fail(ErrorCode::UnsupportedField, "residue field of size 2^" +
                                          std::to_string(base->bits() * d) + " is too large");
  }
  auto f = std::make_shared<FiniteField>();
  f->bits_ = base->bits() * d;
  f->base_ = std::move(base);
  f->ext_modulus_ = std::move(modulus);
  f->ext_degree_ = d;
  f->build_tables();
  return f;
}

std::uint32_t FiniteField::digit(std::uint32_t a, int i) const {
  const int b = base_bits();
  return (a >> (i * b)) & ((std::uint32_t{1} << b) - 1);
}

std::uint32_t FiniteField::from_digits(const std::vector<std::uint32_t>& digits) const {
  const int b = base_bits();
  std::uint32_t a = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) a |= digits[i] << (static_cast<int>(i) * b);
  return a;
}

std::uint32_t FiniteField::slow_mul(std::uint32_t a, std::uint32_t b) const {
  if (!base_) return clmul_mod(a, b, gf2_modulus_, bits_);
  const FiniteField& B = *base_;
  const int d = ext_degree_;
  std::vector<std::uint32_t> prod(static_cast<std::size_t>(2 * d - 1), 0);
  for (int i = 0; i < d; ++i) {
    const std::uint32_t ai = digit(a, i);
    if (!ai) continue;
    for (int j = 0; j < d; ++j) {
      const std::uint32_t bj = digit(b, j);
      if (bj) prod[static_cast<std::size_t>(i + j)] ^= B.mul(ai, bj);
    }
  }
  for (int i = 2 * d - 2; i >= d; --i) {
    const std::uint32_t c = prod[static_cast<std::size_t>(i)];
    if (!c) continue;
    for (int j = 0; j < d; ++j) {
      prod[static_cast<std::size_t>(i - d + j)] ^= B.mul(c, ext_modulus_[static_cast<std::size_t>(j)]);
    }
    prod[static_cast<std::size_t>(i)] = 0;
  }
  prod.resize(static_cast<std::size_t>(d));
  return from_digits(prod);
}

void FiniteField::build_tables() {
  const std::uint64_t n = size();
  const std::uint64_t order = n - 1;
  // Primitive element: least element whose order is 2^bits - 1.
  if (bits_ == 1) {
    primitive_ = 1;
  } else {
    const auto factors = prime_factors(order);
    for (std::uint32_t g = 2; g < n; ++g) {
      bool ok = true;
      for (auto p : factors) {
        std::uint32_t r = 1, base = g;
        std::uint64_t e = order / p;
        while (e) {
          if (e & 1) r = slow_mul(r, base);
          base = slow_mul(base, base);
          e >>= 1;
        }
        if (r == 1) {
          ok = false;
          break;
        }
      }
      if (ok) {
        primitive_ = g;
        break;
      }
    }
  }
  if (bits_ <= 16) {
    exp_.assign(2 * order + 2, 0);
    log_.assign(n, 0);
    std::uint32_t x = 1;
    for (std::uint64_t i = 0; i < order; ++i) {
      exp_[i] = x;
      log_[x] = static_cast<std::uint32_t>(i);
      x = slow_mul(x, primitive_);
    }
    for (std::uint64_t i = order; i < exp_.size(); ++i) exp_[i] = exp_[i - order];
    tables_ = true;
    sqrt_.assign(n, 0);
    as_root_.assign(n, kNone);
    for (std::uint64_t y = 0; y < n; ++y) {
      const auto yy = static_cast<std::uint32_t>(y);
      const std::uint32_t s = mul(yy, yy);
      sqrt_[s] = yy;
      const std::uint32_t c = s ^ yy;
      if (as_root_[c] == kNone) as_root_[c] = yy;
    }
  }
  trace_mask_ = 0;
  for (int i = 0; i < bits_; ++i) {
    const std::uint32_t e = std::uint32_t{1} << i;
    std::uint32_t t = 0, x = e;
    for (int j = 0; j < bits_; ++j) {
      t ^= x;
      x = slow_mul(x, x);
    }
    // t lies in GF(2), so it is 0 or 1.
    if (t == 1) trace_mask_ |= e;
  }
}

std::uint32_t FiniteField::mul(std::uint32_t a, std::uint32_t b) const {
  if (a == 0 || b == 0) return 0;
  if (tables_) return exp_[log_[a] + log_[b]];
  return slow_mul(a, b);
}

std::uint32_t FiniteField::inv(std::uint32_t a) const {
  if (a == 0) fail(ErrorCode::DivisionByZero, "inverse of zero in " + describe());
  if (tables_) return exp_[(size() - 1 - log_[a]) % (size() - 1)];
  return pow(a, size() - 2);
}

std::uint32_t FiniteField::pow(std::uint32_t a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  if (tables_) {
    const std::uint64_t order = size() - 1;
    return exp_[(static_cast<std::uint64_t>(log_[a]) * (e % order)) % order];
  }
  std::uint32_t r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint32_t FiniteField::sqrt(std::uint32_t a) const {
  if (tables_) return sqrt_[a];
  for (int i = 0; i + 1 < bits_; ++i) a = mul(a, a);
  return a;
}

int FiniteField::trace(std::uint32_t a) const { return std::popcount(a & trace_mask_) & 1; }

std::optional<std::uint32_t> FiniteField::artin_schreier(std::uint32_t c) const {
  if (trace(c) != 0) return std::nullopt;
  if (tables_) return as_root_[c];
  // Solve the GF(2)-linear system y^2 + y = c by elimination on packed bits.
  const int n = bits_;
  std::vector<std::uint64_t> rows;  // bit n = right-hand side
  std::vector<std::uint32_t> cols(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const std::uint32_t e = std::uint32_t{1} << i;
    cols[static_cast<std::size_t>(i)] = mul(e, e) ^ e;
  }
  for (int r = 0; r < n; ++r) {
    std::uint64_t row = 0;
    for (int i = 0; i < n; ++i) {
      if ((cols[static_cast<std::size_t>(i)] >> r) & 1) row |= std::uint64_t{1} << i;
    }
    if ((c >> r) & 1) row |= std::uint64_t{1} << n;
    rows.push_back(row);
  }
  std::vector<int> pivot_col;
  std::size_t rank = 0;
  for (int col = 0; col < n && rank < rows.size(); ++col) {
    std::size_t p = rank;
    while (p < rows.size() && !((rows[p] >> col) & 1)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && ((rows[r] >> col) & 1)) rows[r] ^= rows[rank];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  std::uint32_t y = 0;
  for (std::size_t r = 0; r < rank; ++r) {
    if ((rows[r] >> n) & 1) y |= std::uint32_t{1} << pivot_col[r];
  }
  // The kernel is {0, 1}; return the smaller root.
  return std::min(y, y ^ 1u);
}

std::optional<std::uint32_t> FiniteField::least_root(std::uint32_t a, std::uint32_t b,
                                                     std::uint32_t c) const {
  if (a == 0 && b == 0) fail(ErrorCode::PreconditionViolated, "least_root of a constant");
  if (a == 0) return div(c, b);
  if (b == 0) return sqrt(div(c, a));
  // a y^2 + b y + c = 0; y = (b/a) z gives z^2 + z = a c / b^2.
  const std::uint32_t ba = div(b, a);
  const auto z = artin_schreier(div(mul(a, c), mul(b, b)));
  if (!z) return std::nullopt;
  const std::uint32_t y1 = mul(ba, *z);
  const std::uint32_t y2 = mul(ba, *z ^ 1u);
  return std::min(y1, y2);
}

std::uint32_t FiniteField::generator() const {
  if (bits_ == 1) return 1;
  if (!base_) return 2;
  return std::uint32_t{1} << base_->bits();
}

std::string FiniteField::describe(const std::string& var) const {
  if (!base_) return bits_ == 1 ? "GF(2)" : "GF(2^" + std::to_string(bits_) + ")";
  std::string out = base_->describe("w") + "[" + var + "]/(";
  bool first = true;
  for (int i = ext_degree_; i >= 0; --i) {
    const std::uint32_t c = ext_modulus_[static_cast<std::size_t>(i)];
    if (!c) continue;
    if (!first) out += "+";
    first = false;
    std::string cs = base_->element_string(c, "w");
    const bool compound = cs.find('+') != std::string::npos;
    if (i == 0) {
      out += cs;
      continue;
    }
    if (c != 1) out += (compound ? "(" + cs + ")" : cs) + "*";
    out += var;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out + ")";
}

std::string FiniteField::element_string(std::uint32_t a, const std::string& var) const {
  if (a == 0) return "0";
  std::string out;
  if (!base_) {
    for (int i = bits_ - 1; i >= 0; --i) {
      if (!((a >> i) & 1)) continue;
      if (!out.empty()) out += "+";
      if (i == 0) out += "1";
      else if (i == 1) out += var;
      else out += var + "^" + std::to_string(i);
    }
    return out;
  }
  for (int i = ext_degree_ - 1; i >= 0; --i) {
    const std::uint32_t c = digit(a, i);
    if (!c) continue;
    if (!out.empty()) out += "+";
    std::string cs = base_->element_string(c, "w");
    if (i == 0) {
      out += cs;
      continue;
    }
    if (c != 1) out += (cs.find('+') != std::string::npos ? "(" + cs + ")" : cs) + "*";
    out += var;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

}  // namespace c2qf
