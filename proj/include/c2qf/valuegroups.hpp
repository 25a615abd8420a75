#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "c2qf/certify.hpp"
#include "c2qf/form.hpp"

namespace c2qf {

// A subset of F* for a finite field F, as a membership table indexed by
// packed value.
class ValueSet {
 public:
  ValueSet() = default;
  explicit ValueSet(Field f);

  Field field() const { return field_; }
  bool contains(const Element& x) const;
  void insert(const Element& x);
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  // Elements sorted by packed value.
  std::vector<Element> elements() const;
  bool subset_of(const ValueSet& o) const;
  bool operator==(const ValueSet& o) const { return field_ == o.field_ && bits_ == o.bits_; }
  std::string to_string() const;

  const std::vector<bool>& bits() const { return bits_; }

 private:
  Field field_;
  std::vector<bool> bits_;
  std::size_t count_ = 0;
};

ValueSet all_units(Field f);
ValueSet nonzero_squares(Field f);
// {a b : a in A, b in B}
ValueSet product_set(const ValueSet& a, const ValueSet& b);

// D*(phi)^k by exhaustion.
ValueSet represented_set(const QuadraticForm& phi, int k = 1, std::uint64_t budget = kDefaultBudget);
// The subgroup of F* generated by S.
ValueSet group_closure(const ValueSet& s);

struct ValueGroupAudit {
  Element c;
  ValueSet squares, d1, d2, ng, tg;  // F*^2, D*, D*^2, <D*^2>, <D*>
  ValueSet ng_scaled, tg_scaled;     // <D*(c phi)^2>, <D*(c phi)>
  bool part_i = false;               // <D*^2>(phi) = <D*^2>(c phi)
  bool part_ii = false;              // F*^2 in D*^2 in <D*^2> in <D*> in F*
  bool part_iii = false;             // <D*^2>(phi) = <D*>(c phi); c in D*(phi)
};

ValueGroupAudit lemma21_audit(const QuadraticForm& phi, const Element& c, std::uint64_t budget = kDefaultBudget);

// Searches f = prod_{i<=k} phi(xi_i) with polynomial entries (every partial
// degree at most degree_bound), by increasing degree then lexicographically.
std::optional<RepresentationCertificate> membership_bounded(const Element& f, const QuadraticForm& phi, int k,
                                                            int degree_bound,
                                                            std::uint64_t budget = kDefaultBudget);

}  // namespace c2qf
