#pragma once

#include <iosfwd>
#include <json.hpp>
#include <string>

#include "pmod/mappings.hpp"

namespace pmod {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "pmod/1";

/// Numbers as JSON numbers; +-inf and nan as the strings "inf", "-inf", "nan".
Json num(double v);
double from_num(const Json& j);

Json to_json(const Vec& x);
Json to_json(const CriterionReport& r);
Json to_json(const ModulusCertificate& c);
Json to_json(const VerificationReport& r);
Json to_json(const ProbeTable& t);
Json to_json(const DistortionTable& t);

/// {"schema", "command", ...body, "meta"?}. The meta block carries a UTC
/// timestamp and is the only nondeterministic part of a report.
Json envelope(const std::string& command, const Json& body, bool with_meta);

/// Curve families: export {"schema", "label", "n", "curves": [[[x..]..]..]};
/// import also accepts a bare array of vertex lists.
Json family_to_json(const CurveFamily& family);
CurveFamily family_from_json(const Json& j);

/// CSV projections.
void write_evidence_csv(const CriterionReport& r, std::ostream& out);
void write_probe_csv(const ProbeTable& t, std::ostream& out);

}  // namespace pmod
