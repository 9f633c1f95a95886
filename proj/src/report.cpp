#include "pmod/report.hpp"

#include <chrono>
#include <cmath>
#include <fmt/format.h>
#include <ostream>

namespace pmod {

Json num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double from_num(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    if (s == "nan") return std::nan("");
  }
  throw DomainError("json: expected a number");
}

Json to_json(const Vec& x) {
  Json a = Json::array();
  for (int i = 0; i < x.size(); ++i) a.push_back(num(x[i]));
  return a;
}

Json to_json(const CriterionReport& r) {
  Json ev = Json::array();
  for (const auto& [eps, v] : r.evidence) ev.push_back({num(eps), num(v)});
  return {{"criterion", to_string(r.criterion)},
          {"verdict", to_string(r.verdict)},
          {"statistic", num(r.slope)},
          {"evidence", ev},
          {"extrapolation_note", r.extrapolation_note}};
}

Json to_json(const ModulusCertificate& c) {
  return {{"converged", c.converged},
          {"iterations", c.iterations},
          {"max_violation", num(c.max_violation)},
          {"admissible_value", num(c.admissible_value)},
          {"dual_lower_bound", num(c.dual_lower_bound)},
          {"min_line_integral", num(c.min_line_integral)},
          {"relative_gap", num(c.relative_gap)},
          {"note", c.note}};
}

Json to_json(const VerificationReport& r) {
  return {{"verdict", to_string(r.verdict)},
          {"lhs", num(r.lhs)},
          {"rhs", num(r.rhs)},
          {"margin", num(r.margin)},
          {"tolerance", num(r.tolerance)},
          {"quadrature_error", num(r.quadrature_error)},
          {"eta_integral", num(r.eta_integral)},
          {"solver_certificate", to_json(r.certificate)},
          {"note", r.note}};
}

Json to_json(const ProbeTable& t) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < t.labels.size(); ++i) {
    Json osc = Json::array();
    for (double v : t.oscillation[i]) osc.push_back(num(v));
    rows.push_back({{"map", t.labels[i]}, {"oscillation", osc}});
  }
  Json d = Json::array(), sup = Json::array();
  for (double v : t.deltas) d.push_back(num(v));
  for (double v : t.column_sup) sup.push_back(num(v));
  return {{"deltas", d},        {"rows", rows},
          {"column_sup", sup},  {"index_growth", num(t.index_growth)},
          {"decay_slope", num(t.decay_slope)}, {"verdict", t.verdict}};
}

Json to_json(const DistortionTable& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"dist", num(r.dist)},
                    {"distortion", num(r.distortion)},
                    {"bound_shape", num(r.shape)},
                    {"fitted_C", num(r.fitted_C)}});
  return {{"rows", rows}, {"fitted_C", num(t.fitted_C)}, {"spread", num(t.spread)}};
}

Json envelope(const std::string& command, const Json& body, bool with_meta) {
  Json j = {{"schema", kSchema}, {"command", command}};
  for (const auto& [k, v] : body.items()) j[k] = v;
  if (with_meta) {
    const auto now = std::chrono::system_clock::now();
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch());
    const std::time_t t = secs.count();
    std::tm tm{};
    gmtime_r(&t, &tm);
    j["meta"] = {{"timestamp", fmt::format("{:04}-{:02}-{:02}T{:02}:{:02}:{:02}Z",
                                           tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday,
                                           tm.tm_hour, tm.tm_min, tm.tm_sec)}};
  }
  return j;
}

Json family_to_json(const CurveFamily& family) {
  Json curves = Json::array();
  for (const Polyline& c : family.curves) {
    Json verts = Json::array();
    for (const Vec& v : c.vertices) verts.push_back(to_json(v));
    curves.push_back(verts);
  }
  return {{"schema", kSchema}, {"label", family.label}, {"n", family.dim()},
          {"curves", curves}};
}

CurveFamily family_from_json(const Json& j) {
  CurveFamily fam;
  const Json* curves = &j;
  if (j.is_object()) {
    if (!j.contains("curves")) throw DomainError("curve family: missing 'curves'");
    curves = &j.at("curves");
    if (j.contains("label") && j.at("label").is_string()) fam.label = j.at("label").get<std::string>();
  }
  if (!curves->is_array()) throw DomainError("curve family: expected an array of curves");
  int n = -1;
  for (const Json& c : *curves) {
    if (!c.is_array() || c.size() < 2)
      throw DomainError("curve family: every curve needs >= 2 vertices");
    Polyline poly;
    for (const Json& v : c) {
      if (!v.is_array() || v.empty()) throw DomainError("curve family: vertex must be an array");
      Vec x(static_cast<int>(v.size()));
      for (std::size_t i = 0; i < v.size(); ++i) x[static_cast<int>(i)] = from_num(v[i]);
      if (!x.allFinite()) throw DomainError("curve family: non-finite coordinate");
      if (n < 0) n = static_cast<int>(x.size());
      if (x.size() != n) throw DomainError("curve family: inconsistent dimensions");
      poly.vertices.push_back(std::move(x));
    }
    fam.curves.push_back(std::move(poly));
  }
  return fam;
}

void write_evidence_csv(const CriterionReport& r, std::ostream& out) {
  out << "eps,value\n";
  for (const auto& [eps, v] : r.evidence) out << fmt::format("{},{}\n", eps, v);
}

void write_probe_csv(const ProbeTable& t, std::ostream& out) {
  out << "map_id,delta,oscillation\n";
  for (std::size_t i = 0; i < t.labels.size(); ++i)
    for (std::size_t j = 0; j < t.deltas.size(); ++j)
      out << fmt::format("\"{}\",{},{}\n", t.labels[i], t.deltas[j], t.oscillation[i][j]);
}

}  // namespace pmod
