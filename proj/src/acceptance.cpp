#include "pmod/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <fmt/format.h>
#include <random>

#include "pmod/bounds.hpp"
#include "pmod/registry.hpp"

namespace pmod {

namespace {

class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : eng_(seed) {}
  double operator()(double lo = 0.0, double hi = 1.0) {
    return lo + (hi - lo) * (static_cast<double>(eng_() >> 11) * 0x1.0p-53);
  }

 private:
  std::mt19937_64 eng_;
};

SphericalRing unit_ring() { return SphericalRing(Vec::Zero(2), 1.0, 2.0); }

SolverOptions tight_solver() {
  SolverOptions o;
  o.violation_tol = 1e-9;
  o.objective_rtol = 1e-12;
  o.window = 20;
  return o;
}

double modulus(const CurveFamily& fam, double p, const GridSpec& grid,
               const SolverOptions& opts = tight_solver()) {
  return discrete_modulus(fam, p, grid, opts).value;
}

CurveFamily dilate(const CurveFamily& fam, double lambda) {
  CurveFamily out = fam;
  for (auto& c : out.curves)
    for (auto& v : c.vertices) v *= lambda;
  return out;
}

}  // namespace

AcceptanceResult acceptance_ring_oracle() {
  AcceptanceResult r{1, "ring modulus oracle agreement", true, "", Json::object()};
  const SphericalRing ring = unit_ring();
  Json cases = Json::array();
  double worst = 0.0;
  bool fast = true;
  for (double p : {1.2, 1.5, 1.8, 2.0}) {
    const auto t0 = std::chrono::steady_clock::now();
    const CurveFamily fam = sample_ring_family(ring, 512, SamplingMode::radial);
    const ModulusResult m = discrete_modulus(fam, p, grid_for_family(fam, 128));
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double oracle = ring_modulus_oracle(1.0, 2.0, 2, p);
    const double rel = std::abs(m.value - oracle) / oracle;
    worst = std::max(worst, rel);
    fast = fast && secs < 60.0;
    r.passed = r.passed && rel <= 0.05 && m.certificate.converged;
    cases.push_back({{"p", p},
                     {"discrete", num(m.value)},
                     {"dual_lower_bound", num(m.certificate.dual_lower_bound)},
                     {"oracle", num(oracle)},
                     {"relative_error", num(rel)},
                     {"converged", m.certificate.converged}});
  }
  const double two_pi = ring_modulus_oracle(1.0, std::exp(1.0), 2, 2.0);
  const bool exact = std::abs(two_pi - 2.0 * M_PI) <= 1e-12 * 2.0 * M_PI;
  r.passed = r.passed && fast && exact;
  r.data = {{"curves", 512}, {"resolution", 128}, {"cases", cases},
            {"runtime_under_60s", fast}, {"oracle_p2_r2e", num(two_pi)}};
  r.detail = fmt::format("worst relative error {:.4f} (limit 0.05); oracle(p=n=2, r2=e) = {:.15f}",
                         worst, two_pi);
  return r;
}

AcceptanceResult acceptance_g2_dilatation(std::uint64_t seed) {
  AcceptanceResult r{2, "g2 dilatation identically m", true, "", Json::object()};
  Uniform u(seed);
  double worst = 0.0;
  for (int n : {2, 3})
    for (int m : {1, 2, 3, 5}) {
      const MappingSpec g = MappingSpec::g2(n, m);
      int count = 0;
      while (count < 1000) {
        Vec x(n);
        for (int i = 0; i < n; ++i) x[i] = u(-1.0, 1.0);
        if (std::hypot(x[n - 2], x[n - 1]) < 1e-3) continue;
        ++count;
        for (double p : {1.2, 1.5, 1.8})
          worst = std::max(worst, std::abs(dilatation(g, x, p).K_Ip - m));
      }
    }
  r.passed = worst <= 1e-6;
  r.data = {{"points_per_case", 1000}, {"max_abs_error", num(worst)}};
  r.detail = fmt::format("max |K_Ip - m| = {:.3e} over n in {{2,3}}, m in {{1,2,3,5}}, "
                         "p in {{1.2,1.5,1.8}}", worst);
  return r;
}

AcceptanceResult acceptance_g1_dilatation(std::uint64_t seed) {
  AcceptanceResult r{3, "g1 dilatation bound", true, "", Json::object()};
  Uniform u(seed + 1);
  Json cases = Json::array();
  for (int n : {2, 3}) {
    const MappingSpec g = MappingSpec::g1(n);
    const double bound = std::pow(1.0 + std::sqrt(2.0), n);
    double worst = 0.0;
    int count = 0;
    while (count < 1000) {
      Vec x(n);
      for (int i = 0; i < n; ++i) x[i] = u(-1.0, 1.0);
      if (x.norm() >= 1.0 || std::hypot(x[0], x[1]) < 1e-6) continue;
      ++count;
      worst = std::max(worst, dilatation(g, x, n).K_Ip);
    }
    r.passed = r.passed && worst <= bound + 1e-6;
    cases.push_back({{"n", n}, {"max_ratio", num(worst)}, {"bound", num(bound)}});
  }
  r.data = {{"cases", cases}};
  r.detail = fmt::format("max J/l^n = {:.10f} (n=2), {:.10f} (n=3)",
                         from_num(cases[0]["max_ratio"]), from_num(cases[1]["max_ratio"]));
  return r;
}

AcceptanceResult acceptance_verifier() {
  AcceptanceResult r{4, "(p,Q) verifier sanity", true, "", Json::object()};
  const SphericalRing ring = unit_ring();
  const double p = 1.5;
  Json cases = Json::array();
  bool sat_ok = true;
  for (int m : {1, 2, 3}) {
    const VerificationReport v = verify_ring_pQ(MappingSpec::g2(2, m), ring, p,
                                                ScalarField::constant(m), constant_eta(ring));
    sat_ok = sat_ok && v.verdict == Verdict::satisfied;
    cases.push_back({{"map", fmt::format("g2:m={}", m)}, {"Q", m},
                     {"lhs", num(v.lhs)}, {"rhs", num(v.rhs)},
                     {"verdict", to_string(v.verdict)}});
  }
  const VerificationReport bad = verify_ring_pQ(MappingSpec::g2(2, 3), ring, p,
                                                ScalarField::constant(1.0), constant_eta(ring));
  const bool viol_ok = bad.verdict == Verdict::violated;
  cases.push_back({{"map", "g2:m=3"}, {"Q", 1}, {"lhs", num(bad.lhs)},
                   {"rhs", num(bad.rhs)}, {"verdict", to_string(bad.verdict)}});
  r.passed = sat_ok && viol_ok;
  r.data = {{"cases", cases}};
  r.detail = fmt::format(
      "Q=m cases {}; g2(3) with Q=1: lhs {:.4f}, rhs {:.4f}, verdict {} (expected violated)",
      sat_ok ? "satisfied" : "NOT all satisfied", bad.lhs, bad.rhs, to_string(bad.verdict));
  return r;
}

AcceptanceResult acceptance_counterexample() {
  AcceptanceResult r{5, "exp counterexample growth", true, "", Json::object()};
  const Vec b = Vec::Zero(2);
  const std::vector<double> deltas{0.5};
  std::vector<MappingSpec> ex, g2;
  for (int m = 1; m <= 10; ++m) {
    ex.push_back(MappingSpec::exp_m(m));
    g2.push_back(MappingSpec::g2(2, m));
  }
  const ProbeTable te = equicontinuity_probe(ex, b, deltas);
  const ProbeTable tg = equicontinuity_probe(g2, b, deltas);
  const double exp_ratio = te.oscillation.back()[0] / te.oscillation.front()[0];
  double gmin = kInf, gmax = 0.0;
  for (const auto& row : tg.oscillation) {
    gmin = std::min(gmin, row[0]);
    gmax = std::max(gmax, row[0]);
  }
  const double g_ratio = gmax / gmin;
  r.passed = exp_ratio > 50.0 && g_ratio <= 2.0;
  r.data = {{"exp", to_json(te)}, {"g2", to_json(tg)},
            {"exp_ratio", num(exp_ratio)}, {"g2_ratio", num(g_ratio)}};
  r.detail = fmt::format("exp column m=10/m=1 = {:.2f} (> 50); g2 column max/min = {:.4f} (<= 2)",
                         exp_ratio, g_ratio);
  return r;
}

AcceptanceResult acceptance_modulus_axioms(std::uint64_t seed) {
  AcceptanceResult r{6, "modulus axioms", true, "", Json::object()};
  const SphericalRing ring = unit_ring();
  const double p = 1.5;
  const double tol = 1e-4;
  const CurveFamily radial = sample_ring_family(ring, 96, SamplingMode::radial);
  const CurveFamily joining = sample_ring_family(ring, 64, SamplingMode::random_joining, seed);
  const GridSpec grid = grid_for_family(radial, 64);

  // monotonicity: every other curve is a subfamily
  CurveFamily sub;
  for (std::size_t i = 0; i < joining.size(); i += 2) sub.curves.push_back(joining.curves[i]);
  const double m_sub = modulus(sub, p, grid), m_all = modulus(joining, p, grid);
  const bool mono = m_sub <= m_all + tol;

  // finite subadditivity
  CurveFamily uni = radial;
  uni.curves.insert(uni.curves.end(), joining.curves.begin(), joining.curves.end());
  const double m_rad = modulus(radial, p, grid), m_uni = modulus(uni, p, grid);
  const bool subadd = m_uni <= m_rad + m_all + tol;

  // minorization: each radial segment contains its inner half
  CurveFamily halves = radial;
  for (auto& c : halves.curves) c.vertices[1] = 0.5 * (c.vertices[0] + c.vertices[1]);
  const double m_half = modulus(halves, p, grid);
  const bool minor = m_rad <= m_half + tol;

  // scaling by lambda: grid and family dilate together
  const double lambda = 2.0;
  GridSpec big = grid;
  big.lo *= lambda;
  big.hi *= lambda;
  const double m_big = modulus(dilate(radial, lambda), p, big);
  const double expected = std::pow(lambda, 2.0 - p) * m_rad;
  const double scale_err = std::abs(m_big - expected) / expected;
  const bool scaling = scale_err <= 0.05;

  r.passed = mono && subadd && minor && scaling;
  r.data = {{"p", p},
            {"monotonicity", {{"sub", num(m_sub)}, {"full", num(m_all)}, {"ok", mono}}},
            {"subadditivity",
             {{"union", num(m_uni)}, {"sum", num(m_rad + m_all)}, {"ok", subadd}}},
            {"minorization", {{"long", num(m_rad)}, {"short", num(m_half)}, {"ok", minor}}},
            {"scaling",
             {{"lambda", lambda}, {"dilated", num(m_big)}, {"expected", num(expected)},
              {"relative_error", num(scale_err)}, {"ok", scaling}}}};
  r.detail = fmt::format(
      "sub {:.5f} <= full {:.5f}; union {:.5f} <= sum {:.5f}; long {:.5f} <= short {:.5f}; "
      "scaling error {:.2e}",
      m_sub, m_all, m_uni, m_rad + m_all, m_rad, m_half, scale_err);
  return r;
}

double cartesian_ring_integral(const ScalarField& q, const PsiFamily& psi, double r1,
                               double r2, double p) {
  const QuadOptions opts{1e-11, 0.0, 4096, 0};
  auto f = [&](double x, double y) {
    Vec pt(2);
    pt << x, y;
    const double rho = std::hypot(x, y);
    return q(pt) * std::pow(psi(rho), p);
  };
  auto column = [&](double x) {
    const double top = std::sqrt(std::max(0.0, r2 * r2 - x * x));
    auto g = [&](double y) { return f(x, y); };
    if (std::abs(x) >= r1) return integrate(g, -top, top, opts).value;
    const double bot = std::sqrt(r1 * r1 - x * x);
    return integrate(g, bot, top, opts).value + integrate(g, -top, -bot, opts).value;
  };
  return integrate(column, -r2, -r1, opts).value + integrate(column, -r1, r1, opts).value +
         integrate(column, r1, r2, opts).value;
}

AcceptanceResult acceptance_fubini_holder(std::uint64_t seed) {
  AcceptanceResult r{7, "Fubini and Hoelder identities", true, "", Json::object()};
  const double r1 = 0.2, r2 = 0.6, p = 1.5;
  Json fub = Json::array();
  double worst = 0.0;
  const std::vector<std::pair<std::string, PsiFamily>> psis{
      {"reciprocal", PsiFamily::reciprocal()}, {"loglog", PsiFamily::loglog(2, p)}};
  for (const char* field : {"constant:c=2", "coordsq:i=1", "normsq", "logrecip"})
    for (const auto& [pname, psi] : psis) {
      const ScalarField q = parse_field(field, 2);
      const double radial = ring_integral(q, psi, SphericalRing(Vec::Zero(2), r1, r2), p).value;
      const double cart = cartesian_ring_integral(q, psi, r1, r2, p);
      const double rel = std::abs(radial - cart) / std::abs(cart);
      worst = std::max(worst, rel);
      fub.push_back({{"field", field}, {"psi", pname}, {"radial", num(radial)},
                     {"cartesian", num(cart)}, {"relative", num(rel)}});
    }
  const bool fub_ok = worst <= 1e-4;

  // Hoelder: int 1/(t q^{1/(n-1)}) <= (int (..)^{n/p})^{p/n} (eps0 - eps)^{(n-p)/n}
  Uniform u(seed + 2);
  const int n = 2;
  const double eps = 1e-3, eps0 = 0.5;
  int holds = 0;
  double tightest = kInf;
  for (int i = 0; i < 20; ++i) {
    const double a = u(0.5, 2.0), b = u(0.0, 2.0), beta = u(-1.0, 2.0);
    const double pp = u(1.05, 2.0);
    auto h = [&](double t) {
      return 1.0 / (t * std::pow(a + b * std::pow(t, beta), 1.0 / (n - 1.0)));
    };
    const QuadOptions opts{1e-10, 0.0, 4096, 16};
    const double lhs = integrate(h, eps, eps0, opts).value;
    const double inner =
        integrate([&](double t) { return std::pow(h(t), n / pp); }, eps, eps0, opts).value;
    const double rhs = std::pow(inner, pp / n) * std::pow(eps0 - eps, (n - pp) / n);
    if (lhs <= rhs * (1.0 + 1e-9)) ++holds;
    tightest = std::min(tightest, rhs / lhs);
  }
  const bool hold_ok = holds == 20;
  r.passed = fub_ok && hold_ok;
  r.data = {{"fubini", fub}, {"fubini_worst_relative", num(worst)},
            {"holder_profiles", 20}, {"holder_holds", holds},
            {"holder_min_ratio", num(tightest)}};
  r.detail = fmt::format("Fubini worst relative gap {:.2e} (<= 1e-4); Hoelder holds on {}/20 "
                         "profiles, min rhs/lhs {:.4f}",
                         worst, holds, tightest);
  return r;
}

AcceptanceResult acceptance_criteria_suite() {
  AcceptanceResult r{8, "criterion suite", true, "", Json::object()};
  const Vec x0 = Vec::Zero(2);
  const std::vector<double> eps = geometric_grid(0.5, 12);
  const CriterionReport c = fmo_estimate(ScalarField::constant(3.0), x0, eps);
  const CriterionReport l = fmo_estimate(parse_field("logrecip", 2), x0, eps);
  const CriterionReport rec = fmo_estimate(parse_field("radialpow:alpha=-1", 2), x0, eps);
  const CriterionReport div = criterion_divergence(ScalarField::constant(1.0), x0, 0.5);
  double f_err = 0.0;
  for (const auto& [d, F] : div.evidence) f_err = std::max(f_err, std::abs(F - std::log(0.5 / d)));
  const double thr = theorem3_threshold(2, 1.5);
  const bool ok_c = c.verdict == Verdict::satisfied;
  const bool ok_l = l.verdict == Verdict::satisfied;
  const bool ok_r = rec.verdict == Verdict::violated;
  const bool ok_d = div.verdict == Verdict::satisfied && f_err <= 1e-8;
  const bool ok_t = thr == 4.0;
  r.passed = ok_c && ok_l && ok_r && ok_d && ok_t;
  r.data = {{"fmo_constant", to_json(c)}, {"fmo_logrecip", to_json(l)},
            {"fmo_reciprocal", to_json(rec)}, {"divergence_constant", to_json(div)},
            {"divergence_closed_form_error", num(f_err)}, {"theorem3_threshold", num(thr)}};
  r.detail = fmt::format(
      "FMO constant {}, log(1/|x|) {}, 1/|x| {}; divergence Q=1 {} (max |F - log(d0/d)| "
      "{:.1e}); threshold {}",
      to_string(c.verdict), to_string(l.verdict), to_string(rec.verdict),
      to_string(div.verdict), f_err, thr);
  return r;
}

AcceptanceResult acceptance_bound_algebra() {
  AcceptanceResult r{9, "bound evaluator algebra", true, "", Json::object()};
  double worst = 0.0;
  for (int n : {2, 3, 4})
    for (double p : {n - 0.5, n - 0.2, static_cast<double>(n), n + 0.7})
      for (double q : {p - 0.5, p})
        for (double rad : {0.5, 2.0}) {
          const double K = 1.7, I = 2.3, c1 = 0.8;
          const double cap = cap_upper_criterion(K * std::pow(I, q), I, p);
          const double m_A = unit_ball_volume(n) * std::pow(rad, n);
          const double composed = diameter_from_capacity(cap, m_A, n, p, c1);
          const double direct = distortion_bound_general(rad, K, I, n, p, q, c1);
          worst = std::max(worst, std::abs(composed - direct) / direct);
        }
  const double vol = cap_lower_volume(1.0, 3, 1.5);
  const double vol_err = std::abs(vol - 6.0 * std::sqrt(M_PI));
  r.passed = worst <= 1e-12 && vol_err <= 1e-12;
  r.data = {{"composition_max_relative", num(worst)},
            {"cap_lower_volume_n3_p1.5", num(vol)}, {"six_sqrt_pi", num(6.0 * std::sqrt(M_PI))}};
  r.detail = fmt::format("composition gap {:.2e}; cap_lower_volume = {:.15f} vs 6 sqrt(pi) "
                         "(diff {:.1e})",
                         worst, vol, vol_err);
  return r;
}

std::vector<AcceptanceResult> run_acceptance(std::uint64_t seed) {
  return {acceptance_ring_oracle(),        acceptance_g2_dilatation(seed),
          acceptance_g1_dilatation(seed),  acceptance_verifier(),
          acceptance_counterexample(),     acceptance_modulus_axioms(seed),
          acceptance_fubini_holder(seed),  acceptance_criteria_suite(),
          acceptance_bound_algebra()};
}

Json acceptance_to_json(const std::vector<AcceptanceResult>& results) {
  Json arr = Json::array();
  for (const auto& a : results)
    arr.push_back({{"id", a.id}, {"title", a.title}, {"passed", a.passed},
                   {"detail", a.detail}, {"data", a.data}});
  return arr;
}

}  // namespace pmod
