#include "enumerate.hpp"

namespace c2qf {

std::uint64_t power_checked(std::uint64_t q, int n, std::uint64_t budget) {
  std::uint64_t t = 1;
  for (int i = 0; i < n; ++i) {
    if (t > budget / q) fail(ErrorCode::BudgetExceeded, "search space exceeds the budget");
    t *= q;
  }
  return t;
}

std::vector<Element> bounded_polynomials(Field f, int d, std::uint64_t budget) {
  const Field k = f.bottom();
  const std::vector<std::string> vars = f.variables();
  const int h = static_cast<int>(vars.size());
  const std::uint64_t q = k.ff().size();
  const auto base = static_cast<std::uint64_t>(d + 1);
  std::vector<Element> mono;
  const std::uint64_t mcount = power_checked(base, h, budget);
  for (std::uint64_t m = 0; m < mcount; ++m) {
    Element e = f.one();
    std::uint64_t rest = m;
    for (int i = 0; i < h; ++i) {
      e = e * pow(f.variable(vars[static_cast<std::size_t>(i)]), static_cast<long long>(rest % base));
      rest /= base;
    }
    mono.push_back(e);
  }
  const std::uint64_t values = power_checked(q, static_cast<int>(mono.size()), budget);
  std::vector<Element> table;
  table.reserve(values);
  for (std::uint64_t idx = 0; idx < values; ++idx) {
    Element e = f.zero();
    std::uint64_t rest = idx;
    for (const auto& m : mono) {
      const auto digit = static_cast<std::uint32_t>(rest % q);
      rest /= q;
      if (digit) e = e + Element::finite(k, digit).embed(f) * m;
    }
    table.push_back(e);
  }
  return table;
}

}  // namespace c2qf
