#include "pmod/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numbers>

namespace pmod {

std::string to_string(CriterionId id) {
  switch (id) {
    case CriterionId::fmo: return "FMO";
    case CriterionId::loglog_growth: return "loglog_growth";
    case CriterionId::divergence_c: return "divergence_c";
    case CriterionId::theorem3_Ls: return "theorem3_Ls";
    case CriterionId::theorem4_divergence: return "theorem4_divergence";
    case CriterionId::corollary_power: return "corollary_power";
  }
  return "unknown";
}

namespace {

void require_decreasing(const std::vector<double>& xs, const char* op) {
  if (xs.size() < 2)
    throw DomainError(std::string(op) + ": need at least two radii");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0))
      throw DomainError(std::string(op) + ": radii must be positive");
    if (i > 0 && !(xs[i] < xs[i - 1]))
      throw DomainError(std::string(op) + ": radii must strictly decrease");
  }
}

// Slope of log(value) against log(1/eps) with the shared thresholds.
void apply_slope_rule(CriterionReport& rep) {
  const auto& ev = rep.evidence;
  double vmax = 0.0;
  for (const auto& [e, v] : ev) {
    if (!std::isfinite(v)) {
      rep.verdict = Verdict::violated;
      rep.slope = kInf;
      rep.extrapolation_note = "sequence reaches +inf";
      return;
    }
    vmax = std::max(vmax, v);
  }
  if (vmax == 0.0) {
    rep.verdict = Verdict::satisfied;
    rep.slope = 0.0;
    return;
  }
  std::vector<double> x, y;
  for (const auto& [e, v] : ev) {
    x.push_back(std::log(1.0 / e));
    y.push_back(std::log(std::max(v, 1e-14 * vmax)));
  }
  rep.slope = ls_slope(x, y);
  if (rep.slope <= kBoundedSlope) {
    rep.verdict = Verdict::satisfied;
  } else if (rep.slope > kUnboundedSlope) {
    rep.verdict = Verdict::violated;
  } else {
    rep.verdict = Verdict::inconclusive;
    rep.extrapolation_note = fmt::format(
        "log-log slope {:.4g} lies between the bounded ({}) and unbounded ({}) "
        "thresholds; a longer eps grid is needed",
        rep.slope, kBoundedSlope, kUnboundedSlope);
  }
}

struct BallRule {
  std::vector<Vec> offsets;  // x - x0
  std::vector<double> weights;  // normalized to sum 1
};

BallRule ball_rule(int n, double eps) {
  std::vector<Vec> dirs;
  std::vector<double> dw;
  if (n == 2) {
    const GaussRule& g = gauss_legendre(64);
    for (int i = 0; i < 64; ++i) {
      const double th = std::numbers::pi * (1.0 + g.nodes[i]);
      Vec v(2);
      v << std::cos(th), std::sin(th);
      dirs.push_back(v);
      dw.push_back(g.weights[i]);
    }
  } else if (n == 3) {
    const GaussRule& gu = gauss_legendre(16);
    const GaussRule& gp = gauss_legendre(32);
    for (int i = 0; i < 16; ++i) {
      const double s = std::sqrt(1.0 - gu.nodes[i] * gu.nodes[i]);
      for (int j = 0; j < 32; ++j) {
        const double ph = std::numbers::pi * (1.0 + gp.nodes[j]);
        Vec v(3);
        v << s * std::cos(ph), s * std::sin(ph), gu.nodes[i];
        dirs.push_back(v);
        dw.push_back(gu.weights[i] * gp.weights[j]);
      }
    }
  } else {
    dirs = sphere_directions(n, 4096);
    dw.assign(dirs.size(), 1.0);
  }
  const GaussRule& gr = gauss_legendre(8);
  BallRule rule;
  double total = 0.0;
  for (int j = 0; j < 48; ++j) {
    const double hi = eps * std::ldexp(1.0, -j);
    const double lo = 0.5 * hi;
    for (int k = 0; k < 8; ++k) {
      const double t = 0.5 * (lo + hi) + 0.5 * (hi - lo) * gr.nodes[k];
      const double wt = 0.5 * (hi - lo) * gr.weights[k] * std::pow(t, n - 1);
      for (std::size_t d = 0; d < dirs.size(); ++d) {
        rule.offsets.push_back(t * dirs[d]);
        rule.weights.push_back(wt * dw[d]);
        total += wt * dw[d];
      }
    }
  }
  for (double& w : rule.weights) w /= total;
  return rule;
}

double mean_oscillation(const ScalarField& q, const Vec& x0, double eps) {
  const BallRule rule = ball_rule(static_cast<int>(x0.size()), eps);
  std::vector<double> vals(rule.weights.size());
  double mean = 0.0, vmin = kInf, vmax = -kInf;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    vals[i] = q(x0 + rule.offsets[i]);
    if (!std::isfinite(vals[i])) return kInf;
    mean += rule.weights[i] * vals[i];
    vmin = std::min(vmin, vals[i]);
    vmax = std::max(vmax, vals[i]);
  }
  if (vmin == vmax) return 0.0;
  double osc = 0.0;
  for (std::size_t i = 0; i < vals.size(); ++i)
    osc += rule.weights[i] * std::abs(vals[i] - mean);
  return osc;
}

QuadOptions shell_options() {
  QuadOptions o;
  o.rel_tol = 1e-9;
  o.abs_tol = 1e-300;
  o.max_panels = 4096;
  return o;
}

std::vector<double> shell_integrals(const std::function<double(double)>& f,
                                    double top, const std::vector<double>& grid,
                                    bool& all_converged) {
  std::vector<double> shells;
  double upper = top;
  all_converged = true;
  for (double lower : grid) {
    QuadResult r = integrate(f, lower, upper, shell_options());
    if (!r.converged && std::isfinite(r.value)) all_converged = false;
    shells.push_back(r.value);
    upper = lower;
  }
  return shells;
}

}  // namespace

CriterionReport fmo_estimate(const ScalarField& q, const Vec& x0,
                             const std::vector<double>& eps_list) {
  require_dim(static_cast<int>(x0.size()), "fmo_estimate");
  require_decreasing(eps_list, "fmo_estimate");
  if (!(eps_list.front() < q.boundary_distance(x0)))
    throw DomainError("fmo_estimate: balls must stay inside the domain");
  CriterionReport rep;
  rep.criterion = CriterionId::fmo;
  for (double eps : eps_list)
    rep.evidence.emplace_back(eps, mean_oscillation(q, x0, eps));
  apply_slope_rule(rep);
  return rep;
}

CriterionReport criterion_loglog_growth(const ScalarField& q, const Vec& x0,
                                        const std::vector<double>& r_list) {
  const int n = static_cast<int>(x0.size());
  require_dim(n, "criterion_loglog_growth");
  require_decreasing(r_list, "criterion_loglog_growth");
  if (!(r_list.front() < 1.0))
    throw DomainError("criterion_loglog_growth: radii must be below 1");
  CriterionReport rep;
  rep.criterion = CriterionId::loglog_growth;
  for (double r : r_list) {
    const double qr = sphere_mean(q, x0, r).value;
    rep.evidence.emplace_back(r, ext_div(qr, std::pow(std::log(1.0 / r), n - 1)));
  }
  apply_slope_rule(rep);
  return rep;
}

CriterionReport classify_divergence(CriterionId id,
                                    const std::vector<double>& grid,
                                    const std::vector<double>& shells) {
  if (grid.size() != shells.size() || grid.size() < 4)
    throw DomainError("classify_divergence: need >= 4 paired shells");
  CriterionReport rep;
  rep.criterion = id;
  double acc = 0.0;
  std::size_t first_inf = grid.size();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!std::isfinite(shells[k]) && first_inf == grid.size()) first_inf = k;
    acc += shells[k];
    rep.evidence.emplace_back(grid[k], acc);
  }
  if (first_inf < grid.size()) {
    rep.verdict = Verdict::satisfied;
    rep.slope = kInf;
    rep.extrapolation_note = fmt::format(
        "truncated integral is already infinite at delta = {:.6g}; the "
        "finiteness condition for delta > 0 fails there",
        grid[first_inf]);
    return rep;
  }
  if (acc == 0.0) {
    rep.verdict = Verdict::violated;
    rep.slope = 0.0;
    rep.extrapolation_note = "F vanishes identically (a/inf = 0 convention)";
    return rep;
  }

  const std::size_t start = grid.size() / 2;
  std::vector<double> lk, lf, ld;
  bool tail_flat = false;
  for (std::size_t k = start; k < grid.size(); ++k) {
    const double F = rep.evidence[k].second;
    const double idx = std::log(static_cast<double>(k + 1));
    if (F > 0.0) {
      lk.push_back(idx);
      lf.push_back(std::log(F));
    }
    if (shells[k] > 0.0) ld.push_back(idx);
    else tail_flat = true;
  }
  double slope_f = 0.0;
  if (lk.size() >= 2) slope_f = ls_slope(lk, lf);
  double decay = kInf;
  if (!tail_flat && ld.size() >= 2) {
    std::vector<double> lx, ly;
    for (std::size_t k = start; k < grid.size(); ++k) {
      lx.push_back(std::log(static_cast<double>(k + 1)));
      ly.push_back(std::log(shells[k]));
    }
    decay = -ls_slope(lx, ly);
  }
  rep.slope = slope_f;
  const double last_f = rep.evidence.back().second;
  const double kk = static_cast<double>(grid.size());
  if (slope_f >= kUnboundedSlope) {
    rep.verdict = Verdict::satisfied;
    rep.extrapolation_note = fmt::format(
        "F grows with log(1/delta): slope {:.4g} of log F against log k",
        slope_f);
  } else if (slope_f <= kBoundedSlope || decay >= 1.5) {
    rep.verdict = Verdict::violated;
    const double limit = std::isfinite(decay)
                             ? last_f + shells.back() * kk / (decay - 1.0)
                             : last_f;
    rep.extrapolation_note = fmt::format(
        "shell increments decay like k^-{:.4g}; extrapolated limit F(0+) ~= "
        "{:.6g}",
        decay, limit);
  } else {
    rep.verdict = Verdict::inconclusive;
    rep.extrapolation_note = fmt::format(
        "log F slope {:.4g} and shell decay exponent {:.4g} do not separate "
        "divergence from convergence on this grid",
        slope_f, decay);
  }
  return rep;
}

CriterionReport criterion_divergence(const ScalarField& q, const Vec& x0,
                                     double delta0, int count) {
  const int n = static_cast<int>(x0.size());
  require_dim(n, "criterion_divergence");
  if (!(delta0 > 0.0 && delta0 < q.boundary_distance(x0)))
    throw DomainError("criterion_divergence: need 0 < delta0 < dist(x0, boundary)");
  if (count < 4) throw DomainError("criterion_divergence: count must be >= 4");
  const double inv = 1.0 / (n - 1.0);
  auto mean = radial_mean(q, x0);
  auto f = [&](double t) { return ext_div(1.0, ext_mul(t, ext_pow(mean(t), inv))); };
  const auto grid = geometric_grid(delta0, count);
  bool ok = true;
  const auto shells = shell_integrals(f, delta0, grid, ok);
  CriterionReport rep = classify_divergence(CriterionId::divergence_c, grid, shells);
  if (!ok) rep.extrapolation_note += "; some shell quadratures hit the panel budget";
  return rep;
}

LsNorm ls_norm(const ScalarField& q, const Vec& center, double radius, double s) {
  const int n = static_cast<int>(center.size());
  require_dim(n, "ls_norm");
  if (!(s > 0.0) || !(radius > 0.0))
    throw DomainError("ls_norm: need s > 0 and radius > 0");
  const ScalarField qs = q.power(s);
  auto mean = radial_mean(qs, center);
  auto f = [&](double t) { return ext_mul(mean(t), std::pow(t, n - 1)); };
  const auto grid = geometric_grid(radius, 60);
  bool ok = true;
  const auto shells = shell_integrals(f, radius, grid, ok);
  double total = 0.0;
  for (double c : shells) {
    if (!std::isfinite(c)) return {kInf, false};
    total += c;
  }
  const double last = shells[shells.size() - 1];
  const double prev = shells[shells.size() - 2];
  if (last > 0.0) {
    const double ratio = prev > 0.0 ? last / prev : kInf;
    if (ratio >= 0.999) return {kInf, false};
    total += last * ratio / (1.0 - ratio);
  }
  return {std::pow(unit_sphere_area(n) * total, 1.0 / s), true};
}

double theorem3_threshold(int n, double p) {
  DimensionParams(n, p).require_critical_range("theorem3_threshold");
  return n / (n - p);
}

CriterionReport criterion_theorem3(const ScalarField& q, double s, int n,
                                   double p, const Vec& center, double radius,
                                   double eps0) {
  const double thr = theorem3_threshold(n, p);
  if (!(s > 1.0)) throw DomainError("criterion_theorem3: need s > 1");
  if (!(eps0 > 0.0 && eps0 <= radius))
    throw DomainError("criterion_theorem3: need 0 < eps0 <= domain radius");
  if (center.size() != n) throw DomainError("criterion_theorem3: dimension mismatch");
  CriterionReport rep;
  rep.criterion = CriterionId::theorem3_Ls;
  const LsNorm norm = ls_norm(q, center, radius, s);
  const bool threshold_ok = s >= thr * (1.0 - 1e-12);
  const double omega = unit_sphere_area(n);
  rep.slope = norm.value;
  for (double eps : geometric_grid(eps0)) {
    const double L = std::log(eps0 / eps);
    double env = kInf;
    if (threshold_ok && norm.finite) {
      if (std::abs(s - thr) <= 1e-12 * thr) {
        env = std::pow(omega, p / n) * norm.value * std::pow(L, -p + p / n);
      } else {
        const double qh = s / (s - 1.0);
        const double e = n - p * qh;
        env = norm.value * std::pow(omega / e * std::pow(eps0, e), 1.0 / qh) *
              std::pow(L, -p);
      }
    }
    rep.evidence.emplace_back(eps, env);
  }
  if (!threshold_ok) {
    rep.verdict = Verdict::violated;
    rep.extrapolation_note =
        fmt::format("s = {} is below the threshold n/(n-p) = {}", s, thr);
  } else if (!norm.finite) {
    rep.verdict = Verdict::violated;
    rep.extrapolation_note = "L^s norm diverges on the domain";
  } else {
    rep.verdict = Verdict::satisfied;
    rep.extrapolation_note = fmt::format("||Q||_s = {:.10g}", norm.value);
  }
  return rep;
}

CriterionReport criterion_theorem4(const ScalarField& q, const Vec& b, double p,
                                   double eps0, int count) {
  const int n = static_cast<int>(b.size());
  DimensionParams(n, p).require_critical_range("criterion_theorem4");
  if (!(eps0 > 0.0 && eps0 < q.boundary_distance(b)))
    throw DomainError("criterion_theorem4: need 0 < eps0 < dist(b, boundary)");
  const double a = (n - 1.0) / (p - 1.0);
  const double e = 1.0 / (p - 1.0);
  auto mean = radial_mean(q, b);
  auto f = [&](double r) {
    return ext_div(1.0, ext_mul(std::pow(r, a), ext_pow(mean(r), e)));
  };
  const auto grid = geometric_grid(eps0, count);
  bool ok = true;
  const auto shells = shell_integrals(f, eps0, grid, ok);
  CriterionReport rep =
      classify_divergence(CriterionId::theorem4_divergence, grid, shells);
  if (!ok) rep.extrapolation_note += "; some shell quadratures hit the panel budget";
  return rep;
}

CriterionReport criterion_corollary(const ScalarField& q, const Vec& b,
                                    double p, double eps0, int count) {
  const int n = static_cast<int>(b.size());
  DimensionParams(n, p).require_critical_range("criterion_corollary");
  if (!(eps0 > 0.0 && eps0 < q.boundary_distance(b)))
    throw DomainError("criterion_corollary: need 0 < eps0 < dist(b, boundary)");
  CriterionReport rep;
  rep.criterion = CriterionId::corollary_power;
  for (double t : geometric_grid(eps0, count)) {
    const double qt = sphere_mean(q, b, t).value;
    rep.evidence.emplace_back(t, ext_mul(qt, std::pow(t, n - p)));
  }
  apply_slope_rule(rep);
  if (rep.verdict == Verdict::satisfied) {
    double c = 0.0;
    for (const auto& [t, v] : rep.evidence) c = std::max(c, v);
    rep.extrapolation_note = fmt::format("fitted constant c = {:.6g}", c);
  }
  return rep;
}

TildeI tilde_I(const ScalarField& q, const Vec& x0, double r1, double r2,
               double p) {
  const int n = static_cast<int>(x0.size());
  require_dim(n, "tilde_I");
  if (!(p > 1.0)) throw DomainError("tilde_I: need p > 1");
  if (!(r1 > 0.0 && r1 < r2 && r2 < q.boundary_distance(x0)))
    throw DomainError("tilde_I: need 0 < r1 < r2 < dist(x0, boundary)");
  const double a = (n - 1.0) / (p - 1.0);
  const double e = 1.0 / (p - 1.0);
  auto mean = radial_mean(q, x0);
  auto f = [&](double r) {
    return ext_div(1.0, ext_mul(std::pow(r, a), ext_pow(mean(r), e)));
  };
  QuadOptions o;
  o.rel_tol = 1e-10;
  o.abs_tol = 1e-300;
  QuadResult r = integrate(f, r1, r2, o);
  if (!std::isfinite(r.value)) return {kInf, 0.0, true};
  return {r.value, r.error, r.converged};
}

}  // namespace pmod
