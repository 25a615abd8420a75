#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "c2qf/form.hpp"
#include "c2qf/isotropy.hpp"

namespace c2qf {

// scalar * prod_i form(vectors[i]) = target. The vectors live over the
// field of `target`; the form may be defined over a subfield.
struct RepresentationCertificate {
  QuadraticForm form;
  Element target;
  Element scalar;
  std::vector<Vec> vectors;

  int power() const { return static_cast<int>(vectors.size()); }
  Field field() const { return target.field(); }
};

struct RepresentationCheck {
  bool pass = false;
  // target / (scalar * product), when the product is nonzero.
  std::optional<Element> residual;
};

RepresentationCheck verify_representation(const RepresentationCertificate& cert);

// Polynomial evaluation of phi at a vector of polynomials over phi's field.
Poly evaluate_poly(const QuadraticForm& phi, const std::vector<Poly>& v);

struct ResidueWitness {
  Poly modulus;       // the irreducible f
  Field residue_field;
  Vec witness;        // nonzero, phi(witness) = 0 over F[X]/(f)
};

// From a certificate for a*f with f irreducible (single variable over a
// finite field): clear denominators, strip common factors of f, reduce the
// vector whose value f divides. CertificateInvalid when the certificate does
// not verify or no such vector remains.
ResidueWitness certificate_to_isotropy_witness(const RepresentationCertificate& cert);

// f monic irreducible over the finite field of phi, phi nondefective with
// 1 represented. Returns a certificate with scalar 1 and at most deg f
// vectors over F(var), or nothing when phi is anisotropic over F[X]/(f).
std::optional<RepresentationCertificate> represent_irreducible_1var(const QuadraticForm& phi, const Poly& f,
                                                                    const std::string& var = "X",
                                                                    std::uint64_t budget = kDefaultBudget);

// Base-field certificate from a polynomial-entry certificate: the vectors
// of top-degree coefficients. The result has the same power and certifies
// the leading coefficient of the target (in the top variable).
RepresentationCertificate leading_coeff_reduce(const RepresentationCertificate& cert,
                                               std::uint64_t budget = kDefaultBudget);

enum class Verdict { Holds, Fails, Supported, Refuted, Undecided };
std::string_view to_string(Verdict v);

struct FactorReport {
  Poly factor;
  int multiplicity = 0;
  // Odd multiplicity only:
  std::optional<Vec> residue_witness;  // over F[X]/(factor)
  Field residue_field;
  std::optional<RepresentationCertificate> certificate;
};

struct EbfReport {
  Element lead;  // a
  std::vector<FactorReport> factors;
  bool lead_in_group = false;
  Verdict condition_i = Verdict::Undecided;
  Verdict condition_ii = Verdict::Undecided;
  Verdict condition_iii = Verdict::Undecided;
  std::optional<RepresentationCertificate> certificate;  // for f when (i) holds
  bool bounded_search_found = false;
  int bounded_search_bound = 0;
  std::vector<std::string> notes;
};

// f = a f_1 ... f_r g^2 in F[X], F finite, phi nondefective with 1
// represented: decides the three equivalent conditions, with certificates
// for every positive answer.
EbfReport ebf_analyze(const QuadraticForm& phi, const Element& f, int search_bound = 1,
                      std::uint64_t budget = kDefaultBudget);

}  // namespace c2qf
