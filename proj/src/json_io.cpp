#include "c2qf/json_io.hpp"

#include <algorithm>

#include "c2qf/errors.hpp"
#include "c2qf/parse.hpp"
#include "c2qf/tower.hpp"

namespace c2qf {

namespace {

[[noreturn]] void malformed(const std::string& what) { fail(ErrorCode::MalformedCertificate, what); }

const Json& at(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing key '") + key + "'");
  return j.at(key);
}

std::string str(const Json& j, const char* key) {
  const Json& v = at(j, key);
  if (!v.is_string()) malformed(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (const auto& e : v) a.push_back(e.to_string());
  return a;
}

Vec vec_from(Field f, const Json& a) {
  if (!a.is_array()) malformed("a vector must be an array of element strings");
  Vec v;
  for (const auto& e : a) {
    if (!e.is_string()) malformed("vector entries must be strings");
    v.push_back(parse_element(f, e.get<std::string>()));
  }
  return v;
}

Json strings(const std::vector<std::string>& v) { return Json(v); }

std::vector<std::string> strings_from(const Json& a) {
  if (!a.is_array()) malformed("expected an array of strings");
  std::vector<std::string> out;
  for (const auto& e : a) out.push_back(e.get<std::string>());
  return out;
}

Json form_json(const QuadraticForm& phi) { return Json{{"field", phi.field().to_string()}, {"form", phi.to_string()}}; }

QuadraticForm form_from(const Json& j) { return parse_form(parse_field(str(j, "field")), str(j, "form")); }

Place place_from(Field f, const std::string& s) {
  if (f.is_laurent()) return Place::laurent(f);
  if (s.rfind("1/", 0) == 0) return Place::degree(f);
  return Place::finite(f, parse_polynomial(f.base(), f.var(), s));
}

Verdict verdict_from(const std::string& s) {
  for (Verdict v : {Verdict::Holds, Verdict::Fails, Verdict::Supported, Verdict::Refuted, Verdict::Undecided}) {
    if (to_string(v) == s) return v;
  }
  malformed("unknown verdict '" + s + "'");
}

Json refutation_json(const LineRefutation& l) {
  return Json{{"field", l.phi.field().to_string()},
              {"phi", l.phi.to_string()},
              {"psi", l.psi.to_string()},
              {"a", l.a.to_string()},
              {"v0", vec_json(l.v0)},
              {"v1", vec_json(l.v1)},
              {"line_field", l.f.field().to_string()},
              {"f", l.f.to_string()},
              {"factor", l.factor.to_string(l.f.field().var())},
              {"multiplicity", l.multiplicity},
              {"residue_field", l.residue.field().to_string()},
              {"residue", l.residue.to_string()}};
}

LineRefutation refutation_from(const Json& j) {
  LineRefutation l;
  const Field E = parse_field(str(j, "field"));
  const Field EY = parse_field(str(j, "line_field"));
  const Field R = parse_field(str(j, "residue_field"));
  l.phi = parse_form(E, str(j, "phi"));
  l.psi = parse_form(E, str(j, "psi"));
  l.a = parse_element(E, str(j, "a"));
  l.v0 = vec_from(E, at(j, "v0"));
  l.v1 = vec_from(E, at(j, "v1"));
  l.f = parse_element(EY, str(j, "f"));
  l.factor = parse_polynomial(E, EY.var(), str(j, "factor"));
  l.multiplicity = at(j, "multiplicity").get<int>();
  l.residue = parse_form(R, str(j, "residue"));
  return l;
}

Json condition_json(const ConditionResult& c) {
  Json j{{"id", c.id}, {"statement", c.statement}, {"verdict", std::string(to_string(c.verdict))}};
  j["expected"] = c.expected ? Json(*c.expected) : Json(nullptr);
  j["evidence"] = strings(c.evidence);
  Json reps = Json::array();
  for (const auto& r : c.representations) reps.push_back(certificate_to_json(r));
  j["representations"] = reps;
  Json an = Json::array();
  for (const auto& n : c.anisotropy) an.push_back(anisotropy_to_json(n));
  j["anisotropy"] = an;
  Json iso = Json::array();
  for (const auto& r : c.isotropic) {
    Json e = form_json(r.form);
    e["vector"] = vec_json(r.vector);
    iso.push_back(e);
  }
  j["isotropic"] = iso;
  Json emb = Json::array();
  for (const auto& e : c.embeddings) {
    Json cols = Json::array();
    for (const auto& col : e.columns) cols.push_back(vec_json(col));
    emb.push_back(Json{{"field", e.phi.field().to_string()},
                       {"sigma", e.sigma.to_string()},
                       {"phi", e.phi.to_string()},
                       {"columns", cols}});
  }
  j["embeddings"] = emb;
  Json refs = Json::array();
  for (const auto& l : c.refutations) refs.push_back(refutation_json(l));
  j["refutations"] = refs;
  Json leaves = Json::array();
  for (const auto& f : c.anisotropic_leaves) leaves.push_back(form_json(f));
  j["anisotropic_leaves"] = leaves;
  return j;
}

ConditionResult condition_from(const Json& j) {
  ConditionResult c;
  c.id = str(j, "id");
  c.statement = str(j, "statement");
  c.verdict = verdict_from(str(j, "verdict"));
  if (!at(j, "expected").is_null()) c.expected = at(j, "expected").get<bool>();
  c.evidence = strings_from(at(j, "evidence"));
  for (const auto& r : at(j, "representations")) c.representations.push_back(certificate_from_json(r));
  for (const auto& n : at(j, "anisotropy")) c.anisotropy.push_back(anisotropy_from_json(n));
  for (const auto& r : at(j, "isotropic")) {
    const QuadraticForm phi = form_from(r);
    c.isotropic.push_back(IsotropyRecord{phi, vec_from(phi.field(), at(r, "vector"))});
  }
  for (const auto& e : at(j, "embeddings")) {
    const Field f = parse_field(str(e, "field"));
    EmbeddingRecord rec{parse_form(f, str(e, "sigma")), parse_form(f, str(e, "phi")), {}};
    for (const auto& col : at(e, "columns")) rec.columns.push_back(vec_from(f, col));
    c.embeddings.push_back(std::move(rec));
  }
  for (const auto& l : at(j, "refutations")) c.refutations.push_back(refutation_from(l));
  for (const auto& f : at(j, "anisotropic_leaves")) c.anisotropic_leaves.push_back(form_from(f));
  return c;
}

}  // namespace

Json with_schema(const char* schema, const Json& payload) {
  Json j{{"schema", schema}};
  for (auto it = payload.begin(); it != payload.end(); ++it) {
    if (it.key() != "schema") j[it.key()] = it.value();
  }
  return j;
}

void expect_schema(const Json& j, const char* schema) {
  if (!j.is_object() || !j.contains("schema") || j["schema"] != schema) {
    malformed(std::string("expected a document with schema ") + schema);
  }
}

Json certificate_to_json(const RepresentationCertificate& cert) {
  const Field L = cert.field();
  Json j{{"field", L.to_string()}};
  if (cert.form.field() != L) j["form_field"] = cert.form.field().to_string();
  j["form"] = cert.form.to_string();
  j["target"] = cert.target.to_string();
  j["scalar"] = cert.scalar.to_string();
  j["power"] = cert.power();
  Json vs = Json::array();
  for (const auto& v : cert.vectors) vs.push_back(vec_json(v));
  j["vectors"] = vs;
  return j;
}

RepresentationCertificate certificate_from_json(const Json& j) {
  try {
    const Field L = parse_field(str(j, "field"));
    const Field K = j.contains("form_field") ? parse_field(str(j, "form_field")) : L;
    RepresentationCertificate cert{parse_form(K, str(j, "form")), parse_element(L, str(j, "target")),
                                   parse_element(L, str(j, "scalar")), {}};
    for (const auto& v : at(j, "vectors")) cert.vectors.push_back(vec_from(L, v));
    const Json& p = at(j, "power");
    if (!p.is_number_integer() || p.get<int>() != cert.power()) malformed("power does not match the vector count");
    for (const auto& v : cert.vectors) {
      if (static_cast<int>(v.size()) != cert.form.dim()) malformed("vector length differs from dim of the form");
    }
    return cert;
  } catch (const nlohmann::json::exception& e) {
    malformed(e.what());
  }
}

Json anisotropy_to_json(const CertificateNode& node) {
  if (node.is_leaf()) {
    return Json{{"leaf_field", node.form.field().to_string()}, {"form", node.form.to_string()}, {"exhausted", node.exhausted}};
  }
  Json children = Json::array();
  for (const auto& c : node.children) children.push_back(anisotropy_to_json(c));
  return Json{{"field", node.form.field().to_string()},
              {"form", node.form.to_string()},
              {"place", node.place->to_string()},
              {"unit_scaling", uniformizer(*node.place).to_string()},
              {"children", children}};
}

CertificateNode anisotropy_from_json(const Json& j) {
  try {
    CertificateNode node;
    if (j.contains("leaf_field")) {
      node.form = parse_form(parse_field(str(j, "leaf_field")), str(j, "form"));
      node.exhausted = at(j, "exhausted").get<bool>();
      return node;
    }
    const Field f = parse_field(str(j, "field"));
    node.form = parse_form(f, str(j, "form"));
    node.place = place_from(f, str(j, "place"));
    if (parse_element(f, str(j, "unit_scaling")) != uniformizer(*node.place)) {
      malformed("unit_scaling is not the uniformizer of the place");
    }
    for (const auto& c : at(j, "children")) node.children.push_back(anisotropy_from_json(c));
    return node;
  } catch (const nlohmann::json::exception& e) {
    malformed(e.what());
  }
}

Json report_to_json(const TheoremReport& r) {
  Json j{{"theorem", r.theorem}, {"instance", r.instance}, {"samples", strings(r.samples)}};
  Json conds = Json::array();
  for (const auto& c : r.conditions) conds.push_back(condition_json(c));
  j["conditions"] = conds;
  j["equivalences"] = r.equivalences;
  Json imp = Json::array();
  for (const auto& [a, b] : r.implications) imp.push_back(Json::array({a, b}));
  j["implications"] = imp;
  j["consistent"] = r.consistent;
  j["contradictions"] = strings(r.contradictions);
  j["undecided"] = strings(r.undecided);
  j["notes"] = strings(r.notes);
  return j;
}

TheoremReport report_from_json(const Json& j) {
  try {
    TheoremReport r;
    r.theorem = str(j, "theorem");
    r.instance = str(j, "instance");
    r.samples = strings_from(at(j, "samples"));
    for (const auto& c : at(j, "conditions")) r.conditions.push_back(condition_from(c));
    for (const auto& g : at(j, "equivalences")) r.equivalences.push_back(strings_from(g));
    for (const auto& p : at(j, "implications")) {
      if (!p.is_array() || p.size() != 2) malformed("an implication is a pair of condition ids");
      r.implications.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
    }
    r.consistent = at(j, "consistent").get<bool>();
    r.contradictions = strings_from(at(j, "contradictions"));
    r.undecided = strings_from(at(j, "undecided"));
    r.notes = strings_from(at(j, "notes"));
    return r;
  } catch (const nlohmann::json::exception& e) {
    malformed(e.what());
  }
}

Json summary_to_json(const SweepSummary& s) {
  return Json{{"instances", s.instances},
              {"consistent", s.consistent},
              {"holds", s.holds},
              {"fails", s.fails},
              {"supported", s.supported},
              {"refuted", s.refuted},
              {"undecided", s.undecided},
              {"reverify_failures", s.reverify_failures}};
}

Json value_set_to_json(const ValueSet& s) {
  std::vector<std::string> v;
  for (const auto& e : s.elements()) v.push_back(e.to_string());
  std::sort(v.begin(), v.end());
  return Json(v);
}

}  // namespace c2qf
