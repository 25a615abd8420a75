#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "c2qf/form.hpp"
#include "c2qf/tower.hpp"

namespace c2qf {

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

// Lexicographically least isotropic vector (coordinates compared by packed
// value, first coordinate most significant), or nothing when anisotropic.
// Finite fields only; BudgetExceeded when |F|^dim exceeds the budget.
std::optional<Vec> isotropy_ff(const QuadraticForm& phi, std::uint64_t budget = kDefaultBudget);

struct WittDecomposition {
  int i_W = 0;
  int i_d = 0;
  QuadraticForm anisotropic_part;
  // Isotropic vectors consumed, in the coordinates of the input form.
  std::vector<Vec> witnesses;

  int i_t() const { return i_W + i_d; }
  // i_W x H + anisotropic part + i_d x <0>.
  QuadraticForm reassemble() const;
};

// Finite fields: full decomposition. Quasilinear forms over rational towers:
// defect only (i_W = 0). Unsupported otherwise.
WittDecomposition witt_decompose(const QuadraticForm& phi, std::uint64_t budget = kDefaultBudget);

// Isometry class of a form over a finite field, computed from invariants:
// anisotropic part is empty, <1>, or [1,d] with d of trace 1.
struct FiniteClass {
  int dim = 0;
  int i_W = 0;
  int i_d = 0;
  int an_dim = 0;
  bool operator==(const FiniteClass&) const = default;
  std::string to_string() const;
};

FiniteClass finite_class(const QuadraticForm& phi);
// The Arf invariant (absolute trace of sum a_i b_i) of the planes.
int arf_invariant(const QuadraticForm& phi);

// Finite fields and quasilinear forms over rational towers.
bool is_isotropic(const QuadraticForm& phi);

// Exact decision for quasilinear forms over rational towers (and finite
// fields) via square-class linear algebra.
std::optional<Vec> quasilinear_isotropy_tower(const QuadraticForm& phi);

// ----------------------------------------------------- residue certificates

struct CertificateNode {
  // Internal node: the split phi = phi0 + pi*phi1 at `place`; children are
  // the residue forms of phi0 and phi1.
  std::optional<Place> place;
  QuadraticForm form;
  std::vector<CertificateNode> children;
  // Leaf: exhaustively checked over a finite field.
  bool exhausted = false;

  bool is_leaf() const { return !place.has_value(); }
};

// A certificate of anisotropy, or nothing (inconclusive). When `places` is
// empty the top variable and the irreducible factors of the coefficients
// are tried in turn.
std::optional<CertificateNode> residue_anisotropy(const QuadraticForm& phi,
                                                  const std::vector<Place>& places = {});
// Recomputes every split and re-exhausts every leaf.
bool verify_certificate(const CertificateNode& node);

// -------------------------------------------------- quadratic extensions

enum class ExtensionKind { Inseparable, Separable };

struct QuadExtResult {
  bool isotropic = false;
  std::optional<Element> c;
  // Inseparable: columns embedding c<1,d>. Separable: columns embedding c[1,d].
  Columns witness;
  std::string note;
};

// Isotropy of phi over F(sqrt d) or F(wp^-1(d)).
QuadExtResult quad_ext_isotropy(const QuadraticForm& phi, ExtensionKind kind, const Element& d,
                                std::uint64_t budget = kDefaultBudget);

struct FunctionFieldVerdict {
  bool isotropic = false;
  std::vector<std::string> trace;
};

// Isotropy of phi over the function field F(psi); F finite.
FunctionFieldVerdict isotropy_over_form_function_field(const QuadraticForm& phi, const QuadraticForm& psi);

// Searches vectors whose entries are polynomials in the tower variables with
// every partial degree at most `degree_bound`, by increasing degree and then
// lexicographically. Every returned witness is verified.
std::optional<Vec> bounded_isotropy_search(const QuadraticForm& phi, int degree_bound,
                                           std::uint64_t budget = kDefaultBudget);

// Embedding of GF(2^j) into GF(2^k), j | k, sending the generator to the
// least root of its pinned modulus.
Element finite_embedding(const Element& x, Field target);
QuadraticForm finite_embedding(const QuadraticForm& phi, Field target);

}  // namespace c2qf
