// pmod: command-line front end for the p-modulus toolkit.
#include <CLI11.hpp>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "pmod/acceptance.hpp"
#include "pmod/bounds.hpp"
#include "pmod/registry.hpp"

using namespace pmod;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

struct Common {
  bool no_meta = false;
  std::string out;
  std::string csv;
};

void emit(const Common& common, const std::string& command, const Json& body) {
  const std::string text = envelope(command, body, !common.no_meta).dump(2) + "\n";
  if (common.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(common.out);
    if (!f) throw DomainError(fmt::format("cannot write '{}'", common.out));
    f << text;
  }
}

template <class Writer>
void emit_csv(const Common& common, Writer&& write) {
  if (common.csv.empty()) return;
  std::ofstream f(common.csv);
  if (!f) throw DomainError(fmt::format("cannot write '{}'", common.csv));
  write(f);
}

int fail(const std::string& kind, const std::string& message, int code) {
  const Json j = {{"schema", kSchema}, {"error", {{"kind", kind}, {"message", message}}}};
  std::cout << j.dump(2) << "\n";
  return code;
}

// ---- modulus ---------------------------------------------------------------

struct ModulusArgs {
  int n = 2;
  double p = 0.0;
  double r1 = 1.0, r2 = 2.0;
  int resolution = 128;
  int curves = 512;
  std::string mode = "radial";
  std::uint64_t seed = 0;
  std::string in;
  std::string density_out;
};

SamplingMode parse_mode(const std::string& m) {
  if (m == "radial") return SamplingMode::radial;
  if (m == "random" || m == "random_joining") return SamplingMode::random_joining;
  throw DomainError(fmt::format("unknown sampling mode '{}'", m));
}

void write_density_file(const std::string& path, const DensityGrid& rho) {
  if (path.empty()) return;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DomainError(fmt::format("cannot write '{}'", path));
  write_density(rho, f);
}

Json solve_json(const ModulusResult& m) {
  return {{"value", num(m.value)}, {"certificate", to_json(m.certificate)}};
}

void cmd_modulus_ring(const ModulusArgs& a, const Common& c) {
  const SphericalRing ring(Vec::Zero(a.n), a.r1, a.r2);
  const double oracle = ring_modulus_oracle(a.r1, a.r2, a.n, a.p);
  const CurveFamily fam = sample_ring_family(ring, a.curves, parse_mode(a.mode), a.seed);
  const ModulusResult m = discrete_modulus(fam, a.p, grid_for_family(fam, a.resolution));
  write_density_file(a.density_out, m.rho);
  emit(c, "modulus ring",
       {{"n", a.n}, {"p", a.p}, {"r1", a.r1}, {"r2", a.r2},
        {"resolution", a.resolution}, {"curves", a.curves}, {"mode", a.mode},
        {"seed", a.seed}, {"oracle", num(oracle)}, {"discrete", solve_json(m)},
        {"relative_error", num((m.value - oracle) / oracle)}});
}

void cmd_modulus_family(const ModulusArgs& a, const Common& c) {
  std::ifstream f(a.in);
  if (!f) throw DomainError(fmt::format("cannot open '{}'", a.in));
  Json j;
  try {
    j = Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw DomainError(fmt::format("'{}' is not valid JSON: {}", a.in, e.what()));
  }
  const CurveFamily fam = family_from_json(j);
  Json body = {{"p", a.p}, {"curves", fam.size()}, {"resolution", a.resolution}};
  if (fam.empty()) {
    if (!(a.p > 1.0)) throw DomainError("modulus: need p > 1");
    body["discrete"] = {{"value", 0.0}, {"certificate", {{"note", "empty family"}}}};
  } else {
    const ModulusResult m = discrete_modulus(fam, a.p, grid_for_family(fam, a.resolution));
    write_density_file(a.density_out, m.rho);
    body["n"] = fam.dim();
    body["discrete"] = solve_json(m);
  }
  emit(c, "modulus family", body);
}

// ---- criteria --------------------------------------------------------------

struct CriteriaArgs {
  std::string field = "constant:c=1";
  int n = 2;
  std::string x0 = "0";
  double p = 1.5;
  double s = 0.0;
  double eps0 = 0.0;
  int count = 20;
};

double default_eps0(const ScalarField& q, const Vec& x0) {
  return std::min(0.5, 0.5 * q.boundary_distance(x0));
}

void cmd_criteria(const std::string& which, const CriteriaArgs& a, const Common& c) {
  const ScalarField q = parse_field(a.field, a.n);
  const Vec x0 = parse_point(a.x0, a.n);
  const double eps0 = a.eps0 > 0.0 ? a.eps0 : default_eps0(q, x0);
  CriterionReport rep;
  Json extra = Json::object();
  if (which == "fmo") {
    rep = fmo_estimate(q, x0, geometric_grid(eps0, a.count));
  } else if (which == "loglog") {
    rep = criterion_loglog_growth(q, x0, geometric_grid(std::min(eps0, 0.5), a.count));
  } else if (which == "divergence") {
    rep = criterion_divergence(q, x0, eps0, a.count);
  } else if (which == "ls") {
    if (!(a.s > 0.0)) throw DomainError("criteria ls: --s is required");
    const double radius = std::min(1.0, q.boundary_distance(x0));
    rep = criterion_theorem3(q, a.s, a.n, a.p, x0, radius, std::min(eps0, radius));
    extra["threshold"] = num(theorem3_threshold(a.n, a.p));
  } else if (which == "th4") {
    rep = criterion_theorem4(q, x0, a.p, eps0, a.count);
  } else if (which == "cor") {
    rep = criterion_corollary(q, x0, a.p, eps0, a.count);
  }
  Json body = {{"field", a.field}, {"n", a.n}, {"x0", to_json(x0)}, {"p", a.p},
               {"eps0", num(eps0)}, {"report", to_json(rep)}};
  for (const auto& [k, v] : extra.items()) body[k] = v;
  emit_csv(c, [&](std::ostream& o) { write_evidence_csv(rep, o); });
  emit(c, "criteria " + which, body);
}

// ---- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::string map = "identity";
  int n = 2;
  std::string x0 = "0";
  double r1 = 1.0, r2 = 2.0;
  double p = 0.0;
  std::string field = "constant:c=1";
  std::string eta = "const";
  VerifyOptions opts;
  std::string mode = "radial";
};

void cmd_verify(VerifyArgs a, const Common& c) {
  const MappingSpec f = parse_map(a.map, a.n);
  const ScalarField q = parse_field(a.field, a.n);
  const SphericalRing ring(parse_point(a.x0, a.n), a.r1, a.r2);
  const PsiFamily eta = make_eta(a.eta, ring, a.p, q);
  a.opts.mode = parse_mode(a.mode);
  const VerificationReport r = verify_ring_pQ(f, ring, a.p, q, eta, a.opts);
  emit(c, "verify",
       {{"map", f.label()}, {"field", a.field}, {"eta", a.eta}, {"n", a.n},
        {"x0", to_json(ring.center)}, {"r1", a.r1}, {"r2", a.r2}, {"p", a.p},
        {"curves", a.opts.k_curves}, {"resolution", a.opts.resolution},
        {"report", to_json(r)}});
}

// ---- probe -----------------------------------------------------------------

struct ProbeArgs {
  std::string family = "identity";
  int n = 2;
  std::string b = "0";
  std::string deltas = "0.5,0.25,0.125,0.0625";
  std::string metric = "euclidean";
};

void cmd_probe(const ProbeArgs& a, const Common& c) {
  const std::vector<MappingSpec> fam = parse_map_family(a.family, a.n);
  Metric metric;
  if (a.metric == "euclidean") metric = Metric::euclidean;
  else if (a.metric == "chordal") metric = Metric::chordal;
  else throw DomainError(fmt::format("unknown metric '{}'", a.metric));
  const ProbeTable t = equicontinuity_probe(fam, parse_point(a.b, a.n), parse_list(a.deltas), metric);
  emit_csv(c, [&](std::ostream& o) { write_probe_csv(t, o); });
  emit(c, "probe", {{"family", a.family}, {"metric", a.metric}, {"table", to_json(t)}});
}

// ---- bounds ----------------------------------------------------------------

struct BoundsArgs {
  std::string fn;
  std::vector<std::string> set;
  std::string sweep;
  std::string field;
};

struct Sweep {
  std::string name;
  std::vector<double> values;
};

// name=lo:hi:count[:log|lin]
Sweep parse_sweep(const std::string& text) {
  const std::size_t eq = text.find('=');
  if (eq == std::string::npos) throw DomainError("--sweep: expected name=lo:hi:count[:log]");
  Sweep s;
  s.name = text.substr(0, eq);
  std::vector<std::string> parts;
  std::stringstream ss(text.substr(eq + 1));
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() < 3 || parts.size() > 4) throw DomainError("--sweep: expected lo:hi:count[:log]");
  const std::vector<double> lohi = parse_list(parts[0] + "," + parts[1] + "," + parts[2]);
  const double lo = lohi[0], hi = lohi[1];
  const int count = static_cast<int>(lohi[2]);
  const bool log = parts.size() == 4 && parts[3] == "log";
  if (parts.size() == 4 && parts[3] != "log" && parts[3] != "lin")
    throw DomainError("--sweep: spacing must be log or lin");
  if (count < 1 || lohi[2] != count) throw DomainError("--sweep: count must be a positive integer");
  if (log && !(lo > 0.0 && hi > 0.0)) throw DomainError("--sweep: log spacing needs positive ends");
  for (int i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    s.values.push_back(log ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t);
  }
  return s;
}

using Params = std::map<std::string, double>;

struct BoundFn {
  Params defaults;
  std::function<double(const Params&, const BoundsArgs&)> eval;
};

double get(const Params& p, const char* k) { return p.at(k); }
int get_n(const Params& p) {
  const double n = p.at("n");
  if (n != std::floor(n)) throw DomainError("bounds: n must be an integer");
  return static_cast<int>(n);
}

const std::map<std::string, BoundFn>& bound_table() {
  static const std::map<std::string, BoundFn> table = {
      {"cap_lower_volume",
       {{{"m_C", 1.0}, {"n", 3}, {"p", 1.5}},
        [](const Params& p, const BoundsArgs&) {
          return cap_lower_volume(get(p, "m_C"), get_n(p), get(p, "p"));
        }}},
      {"cap_lower_diameter",
       {{{"d_C", 1.0}, {"m_A", 1.0}, {"n", 2}, {"p", 1.5}, {"c1", 1.0}},
        [](const Params& p, const BoundsArgs&) {
          return cap_lower_diameter(get(p, "d_C"), get(p, "m_A"), get_n(p), get(p, "p"),
                                    get(p, "c1"));
        }}},
      {"modulus_lower_ring",
       {{{"a", 1.0}, {"b", 2.0}, {"n", 2}, {"p", 1.5}, {"b_np", 1.0}},
        [](const Params& p, const BoundsArgs&) {
          return modulus_lower_ring(get(p, "a"), get(p, "b"), get_n(p), get(p, "p"),
                                    get(p, "b_np"));
        }}},
      {"cap_upper_criterion",
       {{{"phi", 1.0}, {"I", 1.0}, {"p", 1.5}},
        [](const Params& p, const BoundsArgs&) {
          return cap_upper_criterion(get(p, "phi"), get(p, "I"), get(p, "p"));
        }}},
      {"cap_upper_tildeI",
       {{{"tildeI", 1.0}, {"n", 2}, {"p", 1.5}},
        [](const Params& p, const BoundsArgs&) {
          return cap_upper_tildeI(get(p, "tildeI"), get_n(p), get(p, "p"));
        }}},
      {"distortion_general",
       {{{"r", 1.0}, {"K", 1.0}, {"I", 2.0}, {"n", 2}, {"p", 1.5}, {"q", 1.0}, {"c1", 1.0}},
        [](const Params& p, const BoundsArgs&) {
          return distortion_bound_general(get(p, "r"), get(p, "K"), get(p, "I"), get_n(p),
                                          get(p, "p"), get(p, "q"), get(p, "c1"));
        }}},
      {"fmo",
       {{{"dist", 0.1}, {"C", 1.0}, {"n", 2}, {"p", 1.5}},
        [](const Params& p, const BoundsArgs&) {
          return distortion_bound_fmo(get(p, "dist"), get(p, "C"), get_n(p), get(p, "p"));
        }}},
      {"divergent",
       {{{"dist", 0.1}, {"delta0", 0.5}, {"C", 1.0}, {"n", 2}},
        [](const Params& p, const BoundsArgs& a) {
          // F from the field when given, otherwise from the F parameter.
          double F;
          const int n = get_n(p);
          if (!a.field.empty()) {
            const ScalarField q = parse_field(a.field, n);
            const auto qm = radial_mean(q, Vec::Zero(n));
            const double d = get(p, "dist"), d0 = get(p, "delta0");
            if (!(d > 0.0 && d < d0)) throw DomainError("divergent: need 0 < dist < delta0");
            F = integrate([&](double t) { return 1.0 / (t * std::pow(qm(t), 1.0 / (n - 1.0))); },
                          d, d0, QuadOptions{1e-10, 0.0, 4096, 16})
                    .value;
          } else {
            if (!p.count("F")) throw DomainError("divergent: give --field or --set F=...");
            F = get(p, "F");
          }
          return distortion_bound_divergent(get(p, "dist"), get(p, "delta0"), F, get(p, "C"), n);
        }}},
      {"ring_oracle",
       {{{"r1", 1.0}, {"r2", 2.0}, {"n", 2}, {"p", 2.0}},
        [](const Params& p, const BoundsArgs&) {
          return ring_modulus_oracle(get(p, "r1"), get(p, "r2"), get_n(p), get(p, "p"));
        }}},
  };
  return table;
}

void cmd_bounds(const BoundsArgs& a, const Common& c) {
  const auto& table = bound_table();
  const auto it = table.find(a.fn);
  if (it == table.end()) {
    std::string names;
    for (const auto& [k, v] : table) names += (names.empty() ? "" : ", ") + k;
    throw DomainError(fmt::format("unknown bound '{}'; known: {}", a.fn, names));
  }
  Params params = it->second.defaults;
  const auto known = [&](const std::string& k) {
    if (params.count(k) || (a.fn == "divergent" && k == "F")) return;
    std::string names;
    for (const auto& [name, v] : it->second.defaults) names += (names.empty() ? "" : ", ") + name;
    throw DomainError(fmt::format("{}: unknown parameter '{}'; known: {}", a.fn, k, names));
  };
  for (const std::string& kv : a.set) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos) throw DomainError("--set: expected name=value");
    known(kv.substr(0, eq));
    params[kv.substr(0, eq)] = parse_list(kv.substr(eq + 1)).at(0);
  }
  Sweep sweep;
  if (!a.sweep.empty()) {
    sweep = parse_sweep(a.sweep);
    known(sweep.name);
  } else {
    sweep.name = params.begin()->first;
    sweep.values = {params.begin()->second};
  }
  Json rows = Json::array();
  std::vector<std::pair<double, double>> csv;
  for (double v : sweep.values) {
    params[sweep.name] = v;
    const double y = it->second.eval(params, a);
    rows.push_back({{sweep.name, num(v)}, {"value", num(y)}});
    csv.emplace_back(v, y);
  }
  Json fixed = Json::object();
  for (const auto& [k, v] : params)
    if (k != sweep.name) fixed[k] = num(v);
  emit_csv(c, [&](std::ostream& o) {
    o << sweep.name << ",value\n";
    for (const auto& [x, y] : csv) o << fmt::format("{},{}\n", x, y);
  });
  Json body = {{"bound", a.fn}, {"parameters", fixed}, {"sweep", sweep.name}, {"rows", rows}};
  if (!a.field.empty()) body["field"] = a.field;
  emit(c, "bounds", body);
}

// ---- reproduce -------------------------------------------------------------

void cmd_reproduce(std::uint64_t seed, const Common& c) {
  const std::vector<AcceptanceResult> results = run_acceptance(seed);
  int passed = 0;
  for (const auto& r : results) {
    passed += r.passed;
    std::cerr << fmt::format("{:>2}  {}  {:<32} {}\n", r.id, r.passed ? "PASS" : "FAIL",
                             r.title, r.detail);
  }
  std::cerr << fmt::format("{}/{} criteria passed; criterion 10 (determinism) is checked by "
                           "comparing two runs\n",
                           passed, results.size());
  emit(c, "reproduce",
       {{"seed", seed}, {"passed", passed}, {"total", results.size()},
        {"criteria", acceptance_to_json(results)}});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pmod: p-modulus, capacity bounds and integral criteria for ring (p,Q)-mappings"};
  app.set_config("--config", "", "Preload defaults from a key=value file; flags override");
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_flag("--no-meta", common.no_meta, "Omit the timestamp block from reports");
  app.add_option("--out", common.out, "Write the JSON report to a file instead of stdout");
  app.add_option("--csv", common.csv, "Also write the CSV projection of the report");

  std::function<void()> action;

  // modulus
  ModulusArgs ma;
  auto* mod = app.add_subcommand("modulus", "Discrete p-modulus of curve families");
  mod->require_subcommand(1);
  auto add_mod_common = [&](CLI::App* s) {
    s->add_option("--p", ma.p, "Exponent p > 1")->required();
    s->add_option("--resolution", ma.resolution, "Grid nodes per axis")->capture_default_str();
    s->add_option("--density-out", ma.density_out, "Write the optimal density (binary)");
  };
  auto* ring = mod->add_subcommand("ring", "Radial/random ring family vs the exact oracle");
  add_mod_common(ring);
  ring->add_option("--n", ma.n, "Dimension (2 or 3)")->capture_default_str();
  ring->add_option("--r1", ma.r1)->capture_default_str();
  ring->add_option("--r2", ma.r2)->capture_default_str();
  ring->add_option("--curves", ma.curves, "Number of curves")->capture_default_str();
  ring->add_option("--mode", ma.mode, "radial | random")->capture_default_str();
  ring->add_option("--seed", ma.seed)->capture_default_str();
  ring->callback([&] { action = [&] { cmd_modulus_ring(ma, common); }; });
  auto* fam = mod->add_subcommand("family", "Solve a curve family read from JSON");
  add_mod_common(fam);
  fam->add_option("--in", ma.in, "Curve family JSON")->required();
  fam->callback([&] { action = [&] { cmd_modulus_family(ma, common); }; });

  // criteria
  CriteriaArgs ca;
  auto* crit = app.add_subcommand("criteria", "Integral criteria for a majorant field Q");
  crit->require_subcommand(1);
  for (const char* name : {"fmo", "loglog", "divergence", "ls", "th4", "cor"}) {
    auto* s = crit->add_subcommand(name);
    s->add_option("--field", ca.field, "Field spec, e.g. constant:c=1")->capture_default_str();
    s->add_option("--n", ca.n)->capture_default_str();
    s->add_option("--x0", ca.x0, "Point: 0 or comma-separated coordinates")->capture_default_str();
    s->add_option("--p", ca.p)->capture_default_str();
    s->add_option("--s", ca.s, "Integrability exponent (ls)");
    s->add_option("--eps0,--delta0", ca.eps0, "Largest radius of the shrinking grid");
    s->add_option("--count", ca.count)->capture_default_str();
    const std::string which = name;
    s->callback([&, which] { action = [&, which] { cmd_criteria(which, ca, common); }; });
  }

  // verify
  VerifyArgs va;
  auto* ver = app.add_subcommand("verify", "Test the ring (p,Q) inequality for a map");
  ver->add_option("--map", va.map)->capture_default_str();
  ver->add_option("--n", va.n)->capture_default_str();
  ver->add_option("--x0", va.x0)->capture_default_str();
  ver->add_option("--r1", va.r1)->capture_default_str();
  ver->add_option("--r2", va.r2)->capture_default_str();
  ver->add_option("--p", va.p)->required();
  ver->add_option("--field", va.field)->capture_default_str();
  ver->add_option("--eta", va.eta, "const | loglog | qmean")->capture_default_str();
  ver->add_option("--curves", va.opts.k_curves)->capture_default_str();
  ver->add_option("--resolution", va.opts.resolution)->capture_default_str();
  ver->add_option("--refine", va.opts.refine)->capture_default_str();
  ver->add_option("--mode", va.mode)->capture_default_str();
  ver->add_option("--seed", va.opts.seed)->capture_default_str();
  ver->callback([&] { action = [&] { cmd_verify(va, common); }; });

  // probe
  ProbeArgs pa;
  auto* pr = app.add_subcommand("probe", "Equicontinuity probe over a map family");
  pr->add_option("--family", pa.family, "e.g. exp:m=1..10")->capture_default_str();
  pr->add_option("--n", pa.n)->capture_default_str();
  pr->add_option("--b", pa.b)->capture_default_str();
  pr->add_option("--deltas", pa.deltas)->capture_default_str();
  pr->add_option("--metric", pa.metric, "euclidean | chordal")->capture_default_str();
  pr->callback([&] { action = [&] { cmd_probe(pa, common); }; });

  // bounds
  BoundsArgs ba;
  auto* bd = app.add_subcommand("bounds", "Evaluate a bound over a parameter sweep");
  bd->add_option("fn", ba.fn, "Bound name")->required();
  bd->add_option("--set", ba.set, "name=value, repeatable");
  bd->add_option("--sweep", ba.sweep, "name=lo:hi:count[:log|lin]");
  bd->add_option("--field", ba.field, "Field for the divergent bound's F");
  bd->callback([&] { action = [&] { cmd_bounds(ba, common); }; });

  // reproduce
  std::uint64_t seed = 7;
  auto* rep = app.add_subcommand("reproduce", "Run the acceptance suite");
  rep->add_option("--seed", seed)->capture_default_str();
  rep->callback([&] { action = [&] { cmd_reproduce(seed, common); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), kExitUsage);
  }

  try {
    action();
  } catch (const DomainError& e) {
    return fail("usage", e.what(), kExitUsage);
  } catch (const NumericError& e) {
    return fail("numeric", e.what(), kExitNumeric);
  } catch (const std::exception& e) {
    return fail("numeric", e.what(), kExitNumeric);
  }
  return 0;
}
