#include "pmod/registry.hpp"

#include <cmath>
#include <fmt/format.h>
#include <fstream>

namespace pmod {

namespace {

std::string normalize_minus(std::string s) {
  const std::string uminus = "\xE2\x88\x92";  // U+2212
  for (std::size_t pos; (pos = s.find(uminus)) != std::string::npos;)
    s.replace(pos, uminus.size(), "-");
  return s;
}

double to_number(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size())
    throw DomainError(fmt::format("{}: '{}' is not a number", what, s));
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

SpecString SpecString::parse(const std::string& raw) {
  const std::string text = normalize_minus(raw);
  SpecString s;
  const std::size_t colon = text.find(':');
  s.name = text.substr(0, colon);
  if (s.name.empty()) throw DomainError("spec: empty name");
  if (colon == std::string::npos) return s;
  for (const std::string& kv : split(text.substr(colon + 1), ',')) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw DomainError(fmt::format("spec '{}': expected key=value, got '{}'", raw, kv));
    s.params[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return s;
}

double SpecString::number(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end())
    throw DomainError(fmt::format("spec '{}': missing parameter '{}'", name, key));
  return to_number(it->second, name + ":" + key);
}

double SpecString::number(const std::string& key, double fallback) const {
  return params.count(key) ? number(key) : fallback;
}

int SpecString::integer(const std::string& key) const {
  const double v = number(key);
  if (v != std::floor(v) || std::abs(v) > 1e9)
    throw DomainError(fmt::format("spec '{}': parameter '{}' must be an integer", name, key));
  return static_cast<int>(v);
}

ScalarField parse_field(const std::string& text, int n) {
  require_dim(n, "parse_field");
  const SpecString s = SpecString::parse(text);
  auto only = [&](std::initializer_list<const char*> keys) {
    for (const auto& [k, v] : s.params) {
      bool ok = false;
      for (const char* key : keys) ok = ok || k == key;
      if (!ok) throw DomainError(fmt::format("field '{}': unknown parameter '{}'", s.name, k));
    }
  };
  if (s.name == "constant") {
    only({"c"});
    const double c = s.number("c", 1.0);
    if (!(c >= 0.0)) throw DomainError("field constant: need c >= 0");
    return ScalarField::constant(c);
  }
  if (s.name == "radialpow") {
    only({"alpha"});
    const double a = s.number("alpha");
    return ScalarField::radial([a](double r) { return ext_pow(r, a); },
                               fmt::format("|x|^{}", a));
  }
  if (s.name == "logrecip") {
    only({});
    return ScalarField::radial(
        [](double r) { return r == 0.0 ? kInf : std::max(0.0, -std::log(r)); },
        "log(1/|x|)", {}, 1.0);
  }
  if (s.name == "logpow") {
    only({"k"});
    const double k = s.number("k");
    return ScalarField::radial(
        [k](double r) {
          return r == 0.0 ? (k > 0 ? kInf : k == 0 ? 1.0 : 0.0)
                          : ext_pow(std::max(0.0, -std::log(r)), k);
        },
        fmt::format("log(1/|x|)^{}", k), {}, 1.0);
  }
  if (s.name == "coordsq") {
    only({"i"});
    const int i = s.integer("i");
    if (i < 1 || i > n) throw DomainError("field coordsq: index out of range");
    return ScalarField::closed_form(fmt::format("x{}^2", i),
                                    [i](const Vec& x) { return x[i - 1] * x[i - 1]; });
  }
  if (s.name == "normsq") {
    only({});
    return ScalarField::radial([](double r) { return r * r; }, "|x|^2");
  }
  if (s.name == "grid") {
    only({"file"});
    const auto it = s.params.find("file");
    if (it == s.params.end()) throw DomainError("field grid: missing file=");
    std::ifstream in(it->second, std::ios::binary);
    if (!in) throw DomainError(fmt::format("field grid: cannot open '{}'", it->second));
    DensityGrid g = read_density(in);
    if (g.dim() != n) throw DomainError("field grid: dimension differs from --n");
    return ScalarField::grid(static_cast<GridSamples>(g));
  }
  throw DomainError(fmt::format("unknown field '{}'", s.name));
}

MappingSpec parse_map(const std::string& raw, int n) {
  require_dim(n, "parse_map");
  const std::string text = normalize_minus(raw);
  if (text.rfind("compose:", 0) == 0) {
    std::vector<MappingSpec> parts;
    for (const std::string& part : split(text.substr(8), ','))
      parts.push_back(parse_map(part, n));
    return MappingSpec::composition(std::move(parts));
  }
  const SpecString s = SpecString::parse(text);
  auto expect = [&](std::size_t count) {
    if (s.params.size() != count)
      throw DomainError(fmt::format("map '{}': wrong number of parameters", s.name));
  };
  if (s.name == "identity") { expect(0); return MappingSpec::identity(n); }
  if (s.name == "g1") { expect(0); return MappingSpec::g1(n); }
  if (s.name == "g2") { expect(1); return MappingSpec::g2(n, s.integer("m")); }
  if (s.name == "exp") {
    expect(1);
    if (n != 2) throw DomainError("map exp: planar map, needs n = 2");
    return MappingSpec::exp_m(s.number("m"));
  }
  if (s.name == "radialpow") { expect(1); return MappingSpec::radial_power(n, s.number("alpha")); }
  throw DomainError(fmt::format("unknown map '{}'", s.name));
}

std::vector<MappingSpec> parse_map_family(const std::string& raw, int n) {
  const std::string text = normalize_minus(raw);
  const std::size_t dots = text.find("..");
  if (dots == std::string::npos) return {parse_map(text, n)};
  if (text.find("..", dots + 2) != std::string::npos)
    throw DomainError("map family: only one range is allowed");
  const std::size_t eq = text.rfind('=', dots);
  if (eq == std::string::npos) throw DomainError("map family: malformed range");
  std::size_t end = text.find(',', dots);
  if (end == std::string::npos) end = text.size();
  const std::string lo_s = text.substr(eq + 1, dots - eq - 1);
  const std::string hi_s = text.substr(dots + 2, end - dots - 2);
  const double lo = to_number(lo_s, "range start"), hi = to_number(hi_s, "range end");
  if (lo != std::floor(lo) || hi != std::floor(hi) || hi < lo || hi - lo > 10000)
    throw DomainError(fmt::format("map family: malformed range '{}..{}'", lo_s, hi_s));
  std::vector<MappingSpec> out;
  for (long v = static_cast<long>(lo); v <= static_cast<long>(hi); ++v)
    out.push_back(parse_map(text.substr(0, eq + 1) + std::to_string(v) + text.substr(end), n));
  return out;
}

Vec parse_point(const std::string& text, int n) {
  require_dim(n, "parse_point");
  const std::vector<double> c = parse_list(text);
  if (c.size() == 1 && c[0] == 0.0) return Vec::Zero(n);
  if (static_cast<int>(c.size()) != n)
    throw DomainError(fmt::format("point '{}': expected {} coordinates", text, n));
  return Eigen::Map<const Vec>(c.data(), n);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  for (const std::string& s : split(normalize_minus(text), ','))
    out.push_back(to_number(s, "list"));
  return out;
}

PsiFamily make_eta(const std::string& name, const SphericalRing& ring, double p,
                   const ScalarField& q) {
  const int n = ring.dim();
  PsiFamily eta = PsiFamily::constant(1.0, ring.r1, ring.r2);
  if (name == "const") {
    eta = PsiFamily::constant(1.0, ring.r1, ring.r2);
  } else if (name == "loglog") {
    if (!(ring.r2 < 1.0)) throw DomainError("eta loglog: needs r2 < 1");
    eta = PsiFamily::loglog(n, p);
  } else if (name == "qmean") {
    eta = PsiFamily::qmean(n, p, radial_mean(q, ring.center), ring.r1, ring.r2);
  } else {
    throw DomainError(fmt::format("unknown eta '{}'", name));
  }
  const PsiIntegral I = psi_integral(eta, ring.r1, ring.r2);
  if (!I.admissible())
    throw DomainError(fmt::format("eta '{}': integral over the ring is 0 or infinite", name));
  return eta.scaled(1.0 / I.value);
}

}  // namespace pmod
