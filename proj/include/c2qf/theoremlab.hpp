#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "c2qf/certify.hpp"
#include "c2qf/form.hpp"
#include "c2qf/isotropy.hpp"

namespace c2qf {

// phi(vector) = 0 with vector nonzero.
struct IsotropyRecord {
  QuadraticForm form;
  Vec vector;
};

// phi(M x) = sigma(x) for all x, M injective.
struct EmbeddingRecord {
  QuadraticForm sigma;
  QuadraticForm phi;
  Columns columns;
};

// An element f in E[Y] whose irreducible factor g has odd multiplicity,
// while phi stays anisotropic over E[Y]/(g). Such an f lies outside
// <D*(phi)> over E(Y).
struct LineRefutation {
  QuadraticForm phi;      // over E
  QuadraticForm psi;      // over E
  Element a;              // a in D*(psi), over E
  Vec v0, v1;             // f = a psi(v0 + Y v1)
  Element f;              // over E(Y)
  Poly factor;
  int multiplicity = 0;
  QuadraticForm residue;  // phi over E[Y]/(factor), anisotropic
};

struct ConditionResult {
  std::string id;
  std::string statement;
  Verdict verdict = Verdict::Undecided;
  // Set for reproduction checks: the decided outcome the instance must have.
  std::optional<bool> expected;
  std::vector<std::string> evidence;

  std::vector<RepresentationCertificate> representations;
  std::vector<CertificateNode> anisotropy;
  std::vector<IsotropyRecord> isotropic;
  std::vector<EmbeddingRecord> embeddings;
  std::vector<LineRefutation> refutations;
  // Forms over finite fields claimed anisotropic.
  std::vector<QuadraticForm> anisotropic_leaves;
};

// Holds -> true, Fails / Refuted -> false, otherwise nothing.
std::optional<bool> decided_value(Verdict v);

struct TheoremReport {
  std::string theorem;
  std::string instance;
  std::vector<std::string> samples;
  std::vector<ConditionResult> conditions;
  // Groups of condition ids the theorem declares equivalent, and one-way
  // implications (premise, conclusion).
  std::vector<std::vector<std::string>> equivalences;
  std::vector<std::pair<std::string, std::string>> implications;
  bool consistent = true;
  std::vector<std::string> contradictions;
  std::vector<std::string> undecided;
  std::vector<std::string> notes;

  const ConditionResult& condition(const std::string& id) const;
};

// Recomputes `consistent`, `contradictions` and `undecided`.
void finalize(TheoremReport& report);

// Re-checks every witness and certificate stored in the report by direct
// evaluation. Returns the descriptions of the failures.
std::vector<std::string> reverify(const TheoremReport& report);

struct SampleOptions {
  // Extensions GF(2^k) of the base, k <= max_degree and a multiple of the
  // base degree.
  int max_degree = 4;
  // Also sample E(Y) for each finite E.
  bool rational = true;
  // Lines v0 + Y v1 tried per rational sample.
  int line_trials = 256;
  // Degree bound of the membership fallback.
  int membership_bound = 4;
  std::uint64_t budget = 2'000'000;
};

// The seven equivalent conditions (i)-(vii) for phi becoming isotropic
// over F(psi). phi, psi nondefective over a pinned finite field, dim psi >= 2.
TheoremReport check_th44(const QuadraticForm& phi, const QuadraticForm& psi, const SampleOptions& opt = {});

// Stable birational equivalence, conditions (a)-(e); both of dimension >= 2.
TheoremReport check_stb(const QuadraticForm& phi, const QuadraticForm& psi, const SampleOptions& opt = {});

// X-sums phi0 + X phi1 and psi0 + X psi1, conditions (i)-(iii); all four
// nondefective of dimension >= 1 over a pinned finite field.
TheoremReport check_xsum(const QuadraticForm& phi0, const QuadraticForm& phi1, const QuadraticForm& psi0,
                         const QuadraticForm& psi1, const SampleOptions& opt = {});

// If phi is isotropic over F(psi) then pi (x) phi is isotropic over
// F(pi (x) psi). Finite base.
TheoremReport check_pfister_transfer(const QuadraticForm& phi, const QuadraticForm& psi, const BilinearPfister& pi);

// phi over F(psi) and psi over F(sigma) isotropic, psi nondefective, imply
// phi over F(sigma) isotropic. Finite base.
TheoremReport check_transitivity(const QuadraticForm& phi, const QuadraticForm& psi, const QuadraticForm& sigma);

// The two instances over GF(2)(s)(t) with a = s, b = t.
std::pair<TheoremReport, TheoremReport> run_counterexamples();

// Every nondefective form over f of dimension <= max_dim, in a canonical
// syntactic shape: planes sorted by packed entries, then at most one
// diagonal entry.
std::vector<QuadraticForm> nondefective_forms(Field f, int max_dim);

struct SweepSummary {
  int instances = 0;
  int consistent = 0;
  int holds = 0, fails = 0, supported = 0, refuted = 0, undecided = 0;
  int reverify_failures = 0;
  void add(const TheoremReport& r);
  std::string to_string() const;
};

}  // namespace c2qf
