#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "c2qf/field.hpp"

namespace c2qf {

using Vec = std::vector<Element>;

// The binary block [a,b], i.e. a x^2 + x y + b y^2.
struct Plane {
  Element a;
  Element b;
};

enum class FormClass { Zero, Nonsingular, Semisingular, Quasilinear };

std::string_view to_string(FormClass c);

struct FormType {
  int r = 0;  // number of planes
  int s = 0;  // number of diagonal entries
  FormClass cls = FormClass::Zero;
};

// [a1,b1] + ... + [ar,br] + <c1,...,cs>. Coordinates of a vector are
// (x1, y1, ..., xr, yr, z1, ..., zs). No block is ever simplified away:
// <0> and H = [0,0] are stored as given.
class QuadraticForm {
 public:
  QuadraticForm() = default;
  explicit QuadraticForm(Field f) : field_(f) {}
  QuadraticForm(Field f, std::vector<Plane> planes, std::vector<Element> diagonal);

  static QuadraticForm plane(const Element& a, const Element& b);
  static QuadraticForm diagonal(Field f, std::vector<Element> c);
  static QuadraticForm hyperbolic(Field f);

  Field field() const { return field_; }
  const std::vector<Plane>& planes() const { return planes_; }
  const std::vector<Element>& diag() const { return diag_; }
  int dim() const { return static_cast<int>(2 * planes_.size() + diag_.size()); }
  int r() const { return static_cast<int>(planes_.size()); }
  int s() const { return static_cast<int>(diag_.size()); }
  bool is_quasilinear() const { return planes_.empty(); }

  // The same form over a field containing this one.
  QuadraticForm embed(Field target) const;
  // Quasilinear part <c1,...,cs>.
  QuadraticForm ql() const { return diagonal(field_, diag_); }

  std::string to_string() const;
  bool operator==(const QuadraticForm& o) const;
  bool operator!=(const QuadraticForm& o) const { return !(*this == o); }

 private:
  Field field_;
  std::vector<Plane> planes_;
  std::vector<Element> diag_;
};

// <<a1,...,an>>_b; n = 0 is the unit form.
struct BilinearPfister {
  Field field;
  std::vector<Element> entries;

  int fold() const { return static_cast<int>(entries.size()); }
  // Subset products in the order S = 0, 1, ..., 2^n - 1, bit i <-> a_{i+1}.
  std::vector<Element> subset_products() const;
  std::string to_string() const;
};

Element evaluate(const QuadraticForm& phi, const Vec& v);
// b(u,v) = phi(u+v) + phi(u) + phi(v).
Element polar(const QuadraticForm& phi, const Vec& u, const Vec& v);

QuadraticForm direct_sum(const QuadraticForm& a, const QuadraticForm& b);
// c*[a,b] = [c a, b/c] and c*<d> = <c d>; c must be nonzero.
QuadraticForm scale(const Element& c, const QuadraticForm& phi);
QuadraticForm pfister_multiply(const BilinearPfister& pi, const QuadraticForm& phi);

FormType type_of(const QuadraticForm& phi);

Vec zero_vector(Field f, int n);
Vec unit_vector(Field f, int n, int i);
Vec embed_vector(const Vec& v, Field target);
std::string vector_to_string(const Vec& v);

// Form grammar: [a,b] | <c1,...> | H | form + form | c*(form) |
// pf(a1,...,an)*(form) | (form).
QuadraticForm parse_form(Field field, std::string_view text);
BilinearPfister parse_pfister(Field field, std::string_view text);
// Parses "(e1, e2, ...)" into a vector over `field`.
Vec parse_vector(Field field, std::string_view text);

// ---------------------------------------------------------- finite fields

// A k x m matrix given by its columns (each a vector of length dim phi).
using Columns = std::vector<Vec>;

struct EmbeddingWitness {
  Columns columns;
  // Subform mode: phi restricted to a complement of the image.
  std::optional<QuadraticForm> complement;
};

// Columns M with phi(M x) = sigma(x) as polynomials, M injective. In subform
// mode the image must also have an orthogonal complement. Finite fields
// only; |F|^dim(phi) must not exceed `budget`.
std::optional<EmbeddingWitness> dominance_search(const QuadraticForm& sigma, const QuadraticForm& phi,
                                                 bool subform, std::uint64_t budget = 1u << 24);
// Checks phi(M x) = sigma(x) as polynomials via values and polar values on
// unit vectors, plus injectivity.
bool verify_embedding(const QuadraticForm& sigma, const QuadraticForm& phi, const Columns& m);

// Diagonal-and-planes normal form of phi restricted to span(basis);
// `out_basis` receives the adapted basis (plane pairs first).
QuadraticForm restrict_form(const QuadraticForm& phi, const std::vector<Vec>& basis,
                            std::vector<Vec>* out_basis = nullptr);

struct IsometryReport {
  bool isometric = false;
  std::string regime;
  // invariant name -> (value for phi, value for psi)
  std::vector<std::pair<std::string, std::pair<std::string, std::string>>> invariants;
};

// Finite fields: compares dimension, radical dimension, Witt index, defect
// and the anisotropic part. Quasilinear forms over rational towers: compares
// dimension and the span over the subfield of squares.
IsometryReport isometry_test(const QuadraticForm& phi, const QuadraticForm& psi);

}  // namespace c2qf
