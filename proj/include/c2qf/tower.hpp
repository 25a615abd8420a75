#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "c2qf/field.hpp"

namespace c2qf {

// ------------------------------------------------------------ square classes

// Monomial in the tower variables with exponents in {0,1}: bit i is the
// i-th variable counted from the bottom of the tower.
using SquareMonomial = std::uint32_t;

// x = sum over m of m * c_m^2, keyed by monomial; zero coefficients omitted.
using TwoBasisTable = std::map<SquareMonomial, Element>;

TwoBasisTable two_basis_decompose(const Element& x);
Element two_basis_reassemble(Field field, const TwoBasisTable& table);
std::string monomial_string(Field field, SquareMonomial m);
Element monomial_element(Field field, SquareMonomial m);

std::optional<Element> sqrt_if_square(const Element& x);
inline bool is_square(const Element& x) { return sqrt_if_square(x).has_value(); }

struct ArtinSchreierResult {
  std::optional<Element> root;
  // True when absence of a root is proven; false when only the bounded
  // search came up empty.
  bool decided = true;
};

// Root of y^2 + y = x. Over finite fields the least root is returned.
ArtinSchreierResult artin_schreier_solve(const Element& x, int degree_bound = 8);

// ---------------------------------------------------------------- places

enum class PlaceKind { Finite, Degree, Laurent };

struct Place {
  PlaceKind kind = PlaceKind::Finite;
  Field field;  // the field the place lives on
  Poly poly;    // monic irreducible in the top variable (Finite places)

  static Place finite(Field field, const Poly& p);
  static Place degree(Field field);
  static Place laurent(Field field);
  // Default: the top variable itself (X-adic place).
  static Place top_variable(Field field);

  std::string to_string() const;
  // The residue field; Unsupported for the degree place.
  Field residue_field() const;
};

// Valuation of x != 0 at p.
int valuation(const Element& x, const Place& p);

struct ValuationResidue {
  int valuation = 0;
  std::optional<Element> residue;  // present when valuation >= 0
};

ValuationResidue valuation_residue(const Element& x, const Place& p);
// Residue of x with v_p(x) >= 0. NegativeValuationResidue otherwise.
Element residue(const Element& x, const Place& p);
// Lift of a residue-field element to the field of p (least-degree lift).
Element lift_residue(const Element& r, const Place& p);
// Uniformizer of the place.
Element uniformizer(const Place& p);

// ---------------------------------------------------------- factorization

struct Factorization {
  Element lead;
  std::vector<std::pair<Poly, int>> factors;  // monic irreducible, multiplicity
};

// f over a finite field; deterministic order: degree, then coefficients
// compared from the top down by packed value.
Factorization factor_univariate(const Poly& f);
bool is_irreducible(const Poly& f);
std::vector<Poly> enum_irreducibles(Field finite_field, int degree);
// Number of monic irreducibles of the given degree over GF(q).
std::uint64_t necklace_count(std::uint64_t q, int degree);
// Total order used for deterministic factor lists.
bool poly_less(const Poly& a, const Poly& b);

// Residue field F[X]/(f) for a finite field F and monic irreducible f.
Field residue_extension(Field finite_field, const Poly& f, const std::string& var);
// Image of g in F[X]/(f) as an element of `ext` (from residue_extension).
Element reduce_into(const Poly& g, const Poly& f, Field ext);
// Least-degree lift of an element of F[X]/(f) back to F[X].
Poly lift_from(const Element& e, Field base_field, int degree);

// ------------------------------------------------------------ linear algebra

// Matrices are row-major vectors of rows over a common field.
using Matrix = std::vector<std::vector<Element>>;

// Basis of {x : M x = 0}. Column count `cols` is needed when M has no rows.
std::vector<std::vector<Element>> kernel(const Matrix& m, std::size_t cols, Field k);
int rank(const Matrix& m, Field k);

// Root-coefficient matrix of (c_1..c_s): rows are 2-basis monomials, row m
// column i holds the coefficient of m in the decomposition of c_i.
Matrix square_span_matrix(const std::vector<Element>& c, Field k);
// Dimension of the span of c_1..c_s over the subfield of squares.
int square_span_rank(const std::vector<Element>& c, Field k);
// A nonzero x with sum c_i x_i^2 = 0, normalized (first free column,
// denominators cleared), or nothing when the c_i are independent.
std::optional<std::vector<Element>> square_dependency(const std::vector<Element>& c, Field k);
// A nonzero d with d*v_i polynomial at every tower level for all i.
Element common_denominator(const std::vector<Element>& v, Field k);
// True when span_{K^2}(a) == span_{K^2}(b).
bool same_square_span(const std::vector<Element>& a, const std::vector<Element>& b, Field k);

}  // namespace c2qf
