#pragma once

#include <string>

#include "json.hpp"

#include "c2qf/certify.hpp"
#include "c2qf/form.hpp"
#include "c2qf/isotropy.hpp"
#include "c2qf/theoremlab.hpp"
#include "c2qf/valuegroups.hpp"

namespace c2qf {

using Json = nlohmann::ordered_json;

// Top-level documents carry one of these in their "schema" field.
inline constexpr const char* kCertificateSchema = "c2qf.certificate/1";
inline constexpr const char* kAnisotropySchema = "c2qf.anisotropy/1";
inline constexpr const char* kReportSchema = "c2qf.report/1";
inline constexpr const char* kSweepSchema = "c2qf.sweep/1";
inline constexpr const char* kValueSetSchema = "c2qf.valueset/1";

// {field, form, target, scalar, power, vectors}. `form_field` is added when
// the form lives over a proper subfield.
Json certificate_to_json(const RepresentationCertificate& cert);
RepresentationCertificate certificate_from_json(const Json& j);

// Internal node {field, form, place, unit_scaling, children}; leaf
// {leaf_field, form, exhausted: true}.
Json anisotropy_to_json(const CertificateNode& node);
CertificateNode anisotropy_from_json(const Json& j);

Json report_to_json(const TheoremReport& report);
TheoremReport report_from_json(const Json& j);

Json summary_to_json(const SweepSummary& s);

// Sorted array of element strings.
Json value_set_to_json(const ValueSet& s);

// Wraps a payload with a schema tag; the payload's keys follow "schema".
Json with_schema(const char* schema, const Json& payload);
// MalformedCertificate unless j["schema"] == schema.
void expect_schema(const Json& j, const char* schema);

}  // namespace c2qf
