#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "c2qf/certify.hpp"
#include "c2qf/errors.hpp"
#include "c2qf/isotropy.hpp"
#include "c2qf/json_io.hpp"
#include "c2qf/parse.hpp"
#include "c2qf/theoremlab.hpp"
#include "c2qf/tower.hpp"
#include "c2qf/valuegroups.hpp"

using namespace c2qf;

namespace {

// Exit codes.
constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kNegative = 2;   // refuted, inconsistent, or failed verification
constexpr int kUndecided = 3;  // nothing decided
constexpr int kResource = 4;   // budget exhausted or unsupported input

struct Globals {
  bool json = false;
  int bound = 4;
  int samples = 4;
  std::uint64_t budget = kDefaultBudget;
};

Globals g;

void emit(const char* schema, const Json& payload, const std::string& text) {
  if (g.json) {
    std::cout << with_schema(schema, payload).dump() << "\n";
  } else {
    std::cout << text;
  }
}

std::string vec_text(const Vec& v) { return vector_to_string(v); }

Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (const auto& e : v) a.push_back(e.to_string());
  return a;
}

// Bounded isotropy search at increasing bounds; stops at the first budget
// overrun and reports the last bound completed.
std::optional<Vec> bounded_search(const QuadraticForm& phi, int& completed) {
  completed = -1;
  for (int d = 0; d <= g.bound; ++d) {
    try {
      auto w = bounded_isotropy_search(phi, d, g.budget);
      completed = d;
      if (w) return w;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BudgetExceeded) throw;
      break;
    }
  }
  return std::nullopt;
}

// ------------------------------------------------------------ subcommands

int cmd_field(const std::string& text) {
  const Field f = parse_field(text);
  Json j{{"field", f.to_string()}, {"height", f.height()}, {"variables", f.variables()}};
  std::ostringstream os;
  os << "field " << f.to_string() << "\n";
  Field b = f;
  while (!b.is_finite()) b = b.base();
  j["finite_base"] = b.to_string();
  j["base_size"] = b.ff().size();
  os << "finite base " << b.to_string() << " of size " << b.ff().size() << "\n";
  if (!b.ff().is_extension()) {
    std::ostringstream hex;
    hex << "0x" << std::hex << std::uppercase << FiniteField::pinned_modulus(b.ff().bits());
    j["modulus"] = hex.str();
    os << "modulus " << hex.str() << "\n";
  }
  if (!f.variables().empty()) {
    os << "variables";
    for (const auto& v : f.variables()) os << " " << v;
    os << "\n";
  }
  emit("c2qf.field/1", j, os.str());
  return kOk;
}

int cmd_form(const std::string& field, const std::string& text) {
  const Field f = parse_field(field);
  const QuadraticForm phi = parse_form(f, text);
  const FormType t = type_of(phi);
  Json j{{"field", f.to_string()}, {"form", phi.to_string()}, {"dim", phi.dim()},
         {"type", Json::array({t.r, t.s})}, {"class", std::string(to_string(t.cls))}};
  std::ostringstream os;
  os << phi.to_string() << " over " << f.to_string() << "\ndim " << phi.dim() << ", type (" << t.r << "," << t.s
     << "), " << to_string(t.cls) << "\n";
  if (f.is_finite()) {
    const FiniteClass c = finite_class(phi);
    j["class_invariants"] = Json{{"i_W", c.i_W}, {"i_d", c.i_d}, {"anisotropic_dim", c.an_dim}};
    if (t.r > 0) j["arf"] = arf_invariant(phi);
    os << "isometry class " << c.to_string() << "\n";
  }
  emit("c2qf.form/1", j, os.str());
  return kOk;
}

int cmd_witt(const std::string& field, const std::string& text) {
  const Field f = parse_field(field);
  const QuadraticForm phi = parse_form(f, text);
  const WittDecomposition w = witt_decompose(phi, g.budget);
  Json ws = Json::array();
  for (const auto& v : w.witnesses) ws.push_back(vec_json(v));
  Json j{{"field", f.to_string()}, {"form", phi.to_string()},           {"i_W", w.i_W},
         {"i_d", w.i_d},           {"anisotropic_part", w.anisotropic_part.to_string()}, {"witnesses", ws}};
  std::ostringstream os;
  os << "i_W=" << w.i_W << ", i_d=" << w.i_d << "\nanisotropic part " << w.anisotropic_part.to_string() << "\n";
  for (const auto& v : w.witnesses) os << "witness " << vec_text(v) << "\n";
  emit("c2qf.witt/1", j, os.str());
  return kOk;
}

int cmd_isotropy(const std::string& field, const std::string& text, const std::string& over) {
  const Field f = parse_field(field);
  const QuadraticForm phi = parse_form(f, text);
  Json j{{"field", f.to_string()}, {"form", phi.to_string()}};
  std::ostringstream os;
  if (!over.empty()) {
    const QuadraticForm psi = parse_form(f, over);
    const FunctionFieldVerdict v = isotropy_over_form_function_field(phi, psi);
    j["over"] = psi.to_string();
    j["verdict"] = v.isotropic ? "isotropic" : "anisotropic";
    j["trace"] = v.trace;
    os << phi.to_string() << " is " << (v.isotropic ? "isotropic" : "anisotropic") << " over F(" << psi.to_string()
       << ")\n";
    for (const auto& t : v.trace) os << "  " << t << "\n";
    emit("c2qf.isotropy/1", j, os.str());
    return kOk;
  }
  std::optional<Vec> w;
  std::optional<CertificateNode> cert;
  bool decided = true;
  std::string method;
  if (f.is_finite()) {
    w = isotropy_ff(phi, g.budget);
    method = "exhaustive";
  } else if (phi.is_quasilinear() && f.is_rational_tower()) {
    w = quasilinear_isotropy_tower(phi);
    method = "square classes";
  } else {
    int completed = -1;
    w = bounded_search(phi, completed);
    method = "bounded search";
    j["bound_completed"] = completed;
    if (!w) {
      cert = residue_anisotropy(phi);
      if (cert) method = "residue certificate";
      decided = cert.has_value();
    }
  }
  j["method"] = method;
  if (w) {
    j["verdict"] = "isotropic";
    j["vector"] = vec_json(*w);
    os << "isotropic: " << vec_text(*w) << " (" << method << ")\n";
  } else if (decided) {
    j["verdict"] = "anisotropic";
    if (cert) j["certificate"] = with_schema(kAnisotropySchema, anisotropy_to_json(*cert));
    os << "anisotropic (" << method << ")\n";
  } else {
    j["verdict"] = "inconclusive";
    os << "inconclusive: no isotropic vector within the bound and no residue certificate\n";
  }
  emit("c2qf.isotropy/1", j, os.str());
  return decided ? kOk : kUndecided;
}

int cmd_dstar(const std::string& field, const std::string& text, int power) {
  const Field f = parse_field(field);
  const QuadraticForm phi = parse_form(f, text);
  const ValueSet d = represented_set(phi, power, g.budget);
  const ValueSet t = d.empty() ? d : group_closure(d);
  Json j{{"field", f.to_string()}, {"form", phi.to_string()}, {"power", power},
         {"values", value_set_to_json(d)}, {"group", d.empty() ? Json::array() : value_set_to_json(t)}};
  std::ostringstream os;
  os << "D*^" << power << " = " << d.to_string() << "\n";
  if (!d.empty()) os << "generated group = " << t.to_string() << "\n";
  emit(kValueSetSchema, j, os.str());
  return kOk;
}

int cmd_represent(const std::string& field, const std::string& form, const std::string& target,
                  const std::string& var) {
  const Field f = parse_field(field);
  const QuadraticForm phi = parse_form(f, form);
  const Field L = Field::rational(f, var);
  const Element t = Element::from_poly(L, parse_polynomial(f, var, target));
  const EbfReport rep = ebf_analyze(phi, t, 1, g.budget);
  if (rep.certificate) {
    std::ostringstream os;
    os << to_string(Verdict::Holds) << ": " << t.to_string() << " = product of " << rep.certificate->power()
       << " values of " << phi.to_string() << "\n";
    for (const auto& v : rep.certificate->vectors) os << "  " << vec_text(v) << "\n";
    emit(kCertificateSchema, certificate_to_json(*rep.certificate), os.str());
    return kOk;
  }
  Json j{{"field", L.to_string()}, {"form", phi.to_string()}, {"target", t.to_string()},
         {"verdict", std::string(to_string(rep.condition_i))}, {"notes", rep.notes}};
  std::ostringstream os;
  os << "not representable: " << t.to_string() << " is outside <D*(" << phi.to_string() << ")>\n";
  for (const auto& n : rep.notes) os << "  " << n << "\n";
  emit("c2qf.represent/1", j, os.str());
  return rep.condition_i == Verdict::Fails ? kNegative : kUndecided;
}

int cmd_verify(const std::string& path) {
  std::string text;
  if (path.empty() || path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::MalformedCertificate, "cannot read " + path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  // One document, or one per line as written by `check --json`.
  std::vector<Json> docs;
  try {
    docs.push_back(Json::parse(text));
  } catch (const nlohmann::json::exception&) {
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        docs.push_back(Json::parse(line));
      } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::MalformedCertificate, e.what());
      }
    }
  }
  bool pass = true;
  int checked = 0;
  Json results = Json::array();
  std::ostringstream os;
  for (const auto& doc : docs) {
    if (!doc.is_object() || !doc.contains("schema") || !doc["schema"].is_string()) {
      fail(ErrorCode::MalformedCertificate, "missing schema");
    }
    const std::string schema = doc["schema"].get<std::string>();
    if (schema == kSweepSchema) continue;
    bool ok = false;
    std::vector<std::string> problems;
    if (schema == kCertificateSchema) {
      const RepresentationCheck c = verify_representation(certificate_from_json(doc));
      ok = c.pass;
      if (!ok && c.residual) problems.push_back("target / product = " + c.residual->to_string());
    } else if (schema == kAnisotropySchema) {
      ok = verify_certificate(anisotropy_from_json(doc));
    } else if (schema == kReportSchema) {
      problems = reverify(report_from_json(doc));
      ok = problems.empty();
    } else {
      fail(ErrorCode::MalformedCertificate, "cannot verify documents of schema " + schema);
    }
    ++checked;
    pass = pass && ok;
    results.push_back(Json{{"verified", schema}, {"pass", ok}, {"problems", problems}});
    os << (ok ? "PASS" : "FAIL") << " (" << schema << ")\n";
    for (const auto& p : problems) os << "  " << p << "\n";
  }
  if (checked == 0) fail(ErrorCode::MalformedCertificate, "no verifiable document in the input");
  emit("c2qf.verification/1", Json{{"pass", pass}, {"documents", results}}, os.str());
  return pass ? kOk : kNegative;
}

void print_report(const TheoremReport& r) {
  if (g.json) {
    std::cout << with_schema(kReportSchema, report_to_json(r)).dump() << "\n";
    return;
  }
  std::cout << r.theorem << ": " << r.instance << "\n";
  for (const auto& c : r.conditions) {
    std::cout << "  (" << c.id << ") " << to_string(c.verdict) << ": " << c.statement << "\n";
    for (const auto& e : c.evidence) std::cout << "      " << e << "\n";
  }
  for (const auto& n : r.notes) std::cout << "  note: " << n << "\n";
  for (const auto& c : r.contradictions) std::cout << "  CONTRADICTION: " << c << "\n";
  std::cout << "  consistent: " << (r.consistent ? "yes" : "no") << "\n";
}

int report_status(const SweepSummary& s) {
  if (s.consistent != s.instances || s.reverify_failures > 0) return kNegative;
  if (s.holds + s.fails + s.supported + s.refuted == 0) return kUndecided;
  return kOk;
}

int finish(const SweepSummary& s) {
  emit(kSweepSchema, summary_to_json(s), "summary: " + s.to_string() + "\n");
  return report_status(s);
}

struct CheckArgs {
  std::string theorem, field = "GF(2)", phi, psi, phi0, phi1, psi0, psi1, sigma, pi;
  bool sweep = false;
  int max_dim = 4;
};

int cmd_check(const CheckArgs& a) {
  const Field f = parse_field(a.field);
  SampleOptions opt;
  opt.max_degree = g.samples;
  opt.membership_bound = g.bound;
  opt.budget = std::min<std::uint64_t>(g.budget, opt.budget);
  SweepSummary s;
  auto run = [&](const TheoremReport& r) {
    print_report(r);
    s.add(r);
  };
  auto need = [](const std::string& v, const char* name) {
    if (v.empty()) fail(ErrorCode::PreconditionViolated, std::string("check needs --") + name);
  };
  if (a.sweep) {
    if (a.theorem != "th44" && a.theorem != "stb" && a.theorem != "pfister") {
      fail(ErrorCode::Unsupported, "sweeps are available for th44, stb and pfister");
    }
    const auto forms = nondefective_forms(f, a.max_dim);
    const BilinearPfister pi = a.pi.empty() ? BilinearPfister{f, {}} : parse_pfister(f, a.pi);
    for (const auto& phi : forms) {
      for (const auto& psi : forms) {
        if (psi.dim() < 2) continue;
        if (a.theorem == "th44") run(check_th44(phi, psi, opt));
        if (a.theorem == "stb" && phi.dim() >= 2) run(check_stb(phi, psi, opt));
        if (a.theorem == "pfister") run(check_pfister_transfer(phi, psi, pi));
      }
    }
    return finish(s);
  }
  if (a.theorem == "th44" || a.theorem == "stb") {
    need(a.phi, "phi");
    need(a.psi, "psi");
    const QuadraticForm phi = parse_form(f, a.phi), psi = parse_form(f, a.psi);
    run(a.theorem == "th44" ? check_th44(phi, psi, opt) : check_stb(phi, psi, opt));
  } else if (a.theorem == "xsum") {
    need(a.phi0, "phi0");
    need(a.phi1, "phi1");
    need(a.psi0, "psi0");
    need(a.psi1, "psi1");
    run(check_xsum(parse_form(f, a.phi0), parse_form(f, a.phi1), parse_form(f, a.psi0), parse_form(f, a.psi1), opt));
  } else if (a.theorem == "pfister") {
    need(a.phi, "phi");
    need(a.psi, "psi");
    need(a.pi, "pi");
    run(check_pfister_transfer(parse_form(f, a.phi), parse_form(f, a.psi), parse_pfister(f, a.pi)));
  } else if (a.theorem == "transitivity") {
    need(a.phi, "phi");
    need(a.psi, "psi");
    need(a.sigma, "sigma");
    run(check_transitivity(parse_form(f, a.phi), parse_form(f, a.psi), parse_form(f, a.sigma)));
  } else {
    fail(ErrorCode::PreconditionViolated, "unknown theorem '" + a.theorem + "'");
  }
  return finish(s);
}

int cmd_counterexamples() {
  const auto [a, b] = run_counterexamples();
  SweepSummary s;
  bool reproduced = true;
  for (const auto* r : {&a, &b}) {
    print_report(*r);
    s.add(*r);
    for (const auto& c : r->conditions) {
      if (c.expected && decided_value(c.verdict) != c.expected) reproduced = false;
    }
  }
  const int status = finish(s);
  return status == kOk && !reproduced ? kNegative : status;
}

int exit_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::BudgetExceeded:
    case ErrorCode::PrecisionExhausted:
    case ErrorCode::Unsupported:
    case ErrorCode::UnsupportedBase:
    case ErrorCode::UnsupportedField:
      return kResource;
    case ErrorCode::CertificateInvalid:
      return kNegative;
    default:
      return kUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quadratic forms over fields of characteristic 2"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", g.json, "Emit JSON documents instead of text");
  app.add_option("--bound", g.bound, "Degree bound for bounded searches")->check(CLI::NonNegativeNumber);
  app.add_option("--samples", g.samples, "Largest k of the GF(2^k) samples")->check(CLI::Range(1, 16));
  app.add_option("--budget", g.budget, "Work budget for exhaustive searches")->check(CLI::PositiveNumber);

  std::string field = "GF(2)", text, over, form, target, var = "X", path;
  int power = 1;
  int status = kOk;
  std::function<int()> action;

  auto* c_field = app.add_subcommand("field", "Describe a field");
  c_field->add_option("field", text, "Field expression")->required();
  c_field->callback([&] { action = [&] { return cmd_field(text); }; });

  auto add_form_cmd = [&](const char* name, const char* help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("form", text, "Form expression")->required();
    c->add_option("--field", field, "Field expression");
    return c;
  };
  add_form_cmd("form", "Parse a form and print its type")->callback([&] {
    action = [&] { return cmd_form(field, text); };
  });
  add_form_cmd("witt", "Witt decomposition")->callback([&] { action = [&] { return cmd_witt(field, text); }; });
  auto* c_iso = add_form_cmd("isotropy", "Decide or search for isotropy");
  c_iso->add_option("--over", over, "Decide isotropy over the function field of this form instead");
  c_iso->callback([&] { action = [&] { return cmd_isotropy(field, text, over); }; });
  auto* c_dstar = add_form_cmd("dstar", "Represented values and the group they generate (finite fields)");
  c_dstar->add_option("--power", power, "k in D*(phi)^k")->check(CLI::PositiveNumber);
  c_dstar->callback([&] { action = [&] { return cmd_dstar(field, text, power); }; });

  auto* c_rep = app.add_subcommand("represent", "Certificate for a polynomial as a product of values");
  c_rep->add_option("--form", form, "Form over the finite field")->required();
  c_rep->add_option("--field", field, "Finite field");
  c_rep->add_option("--target", target, "Polynomial in the variable")->required();
  c_rep->add_option("--var", var, "Variable name");
  c_rep->callback([&] { action = [&] { return cmd_represent(field, form, target, var); }; });

  auto* c_ver = app.add_subcommand("verify", "Verify a certificate or report document");
  c_ver->add_option("file", path, "JSON file; stdin when omitted or '-'");
  c_ver->callback([&] { action = [&] { return cmd_verify(path); }; });

  CheckArgs ca;
  auto* c_check = app.add_subcommand("check", "Check a theorem instance or sweep");
  c_check->add_option("theorem", ca.theorem, "th44 | stb | xsum | pfister | transitivity")->required();
  c_check->add_option("--field", ca.field, "Finite base field");
  c_check->add_option("--phi", ca.phi);
  c_check->add_option("--psi", ca.psi);
  c_check->add_option("--phi0", ca.phi0);
  c_check->add_option("--phi1", ca.phi1);
  c_check->add_option("--psi0", ca.psi0);
  c_check->add_option("--psi1", ca.psi1);
  c_check->add_option("--sigma", ca.sigma);
  c_check->add_option("--pi", ca.pi, "Bilinear Pfister form, e.g. pf(1,w)");
  c_check->add_flag("--sweep", ca.sweep, "All nondefective pairs up to --max-dim");
  c_check->add_option("--max-dim", ca.max_dim, "Largest dimension in a sweep")->check(CLI::Range(1, 4));
  c_check->callback([&] { action = [&] { return cmd_check(ca); }; });

  app.add_subcommand("counterexamples", "Reproduce the two counterexamples over GF(2)(s)(t)")->callback([&] {
    action = [] { return cmd_counterexamples(); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  try {
    status = action();
  } catch (const ParseError& e) {
    Json j{{"error", std::string(to_string(e.code()))}, {"message", e.what()}, {"position", e.position()},
           {"expected", e.expected()}};
    std::cerr << (g.json ? with_schema("c2qf.error/1", j).dump() : std::string("error: ") + e.what()) << "\n";
    return kUsage;
  } catch (const Error& e) {
    Json j{{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
    std::cerr << (g.json ? with_schema("c2qf.error/1", j).dump()
                         : "error [" + std::string(to_string(e.code())) + "]: " + e.what())
              << "\n";
    return exit_for(e);
  }
  return status;
}
