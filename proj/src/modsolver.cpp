#include "pmod/modsolver.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numeric>

namespace pmod {

double Polyline::length() const {
  double len = 0.0;
  for (std::size_t i = 1; i < vertices.size(); ++i)
    len += (vertices[i] - vertices[i - 1]).norm();
  return len;
}

void GridSpec::validate() const {
  const int n = dim();
  if (n < 2 || n > 3) throw DomainError("grid: solver supports n = 2, 3 only");
  if (hi.size() != n || static_cast<int>(resolution.size()) != n)
    throw DomainError("grid: inconsistent box description");
  for (int a = 0; a < n; ++a) {
    if (resolution[a] < 8) throw DomainError("grid: resolution must be >= 8 per axis");
    if (!(hi[a] > lo[a])) throw DomainError("grid: degenerate box");
  }
}

DensityGrid DensityGrid::zeros(const GridSpec& spec) {
  spec.validate();
  DensityGrid g;
  g.lo = spec.lo;
  g.hi = spec.hi;
  g.resolution = spec.resolution;
  std::size_t total = 1;
  for (int r : spec.resolution) total *= static_cast<std::size_t>(r);
  g.values.assign(total, 0.0);
  return g;
}

double DensityGrid::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < dim(); ++a) v *= spacing(a);
  return v;
}

double DensityGrid::min_spacing() const {
  double h = kInf;
  for (int a = 0; a < dim(); ++a) h = std::min(h, spacing(a));
  return h;
}

double DensityGrid::energy(double p) const {
  double s = 0.0;
  for (double v : values) s += std::pow(v, p);
  return s * cell_volume();
}

Stencil line_stencil(const GridSpec& grid, const Polyline& gamma) {
  grid.validate();
  const int n = grid.dim();
  if (gamma.vertices.size() < 2) throw DomainError("line_stencil: polyline needs >= 2 vertices");
  if (gamma.dim() != n) throw DomainError("line_stencil: dimension mismatch");
  double h[3], hmin = kInf;
  for (int a = 0; a < n; ++a) {
    h[a] = (grid.hi[a] - grid.lo[a]) / (grid.resolution[a] - 1);
    hmin = std::min(hmin, h[a]);
  }
  const double tol = 1e-9;
  for (const Vec& v : gamma.vertices)
    for (int a = 0; a < n; ++a)
      if (v[a] < grid.lo[a] - tol * h[a] || v[a] > grid.hi[a] + tol * h[a])
        throw DomainError("line_stencil: curve leaves the grid box");

  std::vector<std::pair<std::int64_t, double>> raw;
  for (std::size_t s = 1; s < gamma.vertices.size(); ++s) {
    const Vec& A = gamma.vertices[s - 1];
    const Vec& B = gamma.vertices[s];
    const double len = (B - A).norm();
    if (len == 0.0) continue;
    const int pieces = std::max(1, static_cast<int>(std::ceil(len / (0.5 * hmin))));
    const double piece = len / pieces;
    for (int k = 0; k < pieces; ++k) {
      const Vec x = A + ((k + 0.5) / pieces) * (B - A);
      int base[3];
      double frac[3];
      for (int a = 0; a < n; ++a) {
        const double t = (x[a] - grid.lo[a]) / h[a];
        int i = std::clamp(static_cast<int>(std::floor(t)), 0, grid.resolution[a] - 2);
        base[a] = i;
        frac[a] = std::clamp(t - i, 0.0, 1.0);
      }
      for (int c = 0; c < (1 << n); ++c) {
        double w = piece;
        std::int64_t idx = 0;
        for (int a = 0; a < n; ++a) {
          const int bit = (c >> a) & 1;
          w *= bit ? frac[a] : 1.0 - frac[a];
          idx = idx * grid.resolution[a] + (base[a] + bit);
        }
        if (w > 0.0) raw.emplace_back(idx, w);
      }
    }
  }
  if (raw.empty()) throw DomainError("line_stencil: curve has zero length");
  std::sort(raw.begin(), raw.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  Stencil st;
  for (const auto& [i, w] : raw) {
    if (!st.index.empty() && st.index.back() == i) {
      st.weight.back() += w;
    } else {
      st.index.push_back(i);
      st.weight.push_back(w);
    }
  }
  return st;
}

double line_integral(const DensityGrid& rho, const Polyline& gamma) {
  const Stencil st = line_stencil(rho.spec(), gamma);
  double acc = 0.0;
  for (std::size_t k = 0; k < st.index.size(); ++k)
    acc += st.weight[k] * rho.values[static_cast<std::size_t>(st.index[k])];
  return acc;
}

namespace {

// Dual state of  min sum v rho^p  s.t.  <w_g, rho> >= 1.  With
// u = sum_g lambda_g w_g the primal minimizer is rho = (u / (p v))^{1/(p-1)}.
class DualAscent {
 public:
  DualAscent(std::vector<Stencil> stencils, std::size_t nodes, double p,
             double cell_volume)
      : st_(std::move(stencils)),
        lambda_(st_.size(), 0.0),
        u_(nodes, 0.0),
        rho_(nodes, 0.0),
        p_(p),
        e_(1.0 / (p - 1.0)),
        scale_(1.0 / (p * cell_volume)),
        v_(cell_volume) {}

  double rho_of(double u) const {
    return u > 0.0 ? std::pow(u * scale_, e_) : 0.0;
  }

  double line_value(std::size_t g) const {
    const Stencil& s = st_[g];
    double acc = 0.0;
    for (std::size_t k = 0; k < s.index.size(); ++k)
      acc += s.weight[k] * rho_[static_cast<std::size_t>(s.index[k])];
    return acc;
  }

  // Exact maximization of the dual along coordinate g: find t >= -lambda_g
  // with <w_g, rho(u + t w_g)> = 1, or t = -lambda_g if that is already >= 1.
  void project(std::size_t g) {
    const Stencil& s = st_[g];
    const std::size_t m = s.index.size();
    auto eval = [&](double t, double& slope) {
      double val = 0.0;
      slope = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        const double w = s.weight[k];
        const double uu = u_[static_cast<std::size_t>(s.index[k])] + t * w;
        if (uu <= 0.0) continue;
        const double r = std::pow(uu * scale_, e_);
        val += w * r;
        slope += w * w * e_ * r / uu;
      }
      return val - 1.0;
    };
    double slope = 0.0, gt = -1.0;
    {
      double val = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        const auto i = static_cast<std::size_t>(s.index[k]);
        const double w = s.weight[k];
        val += w * rho_[i];
        if (u_[i] > 0.0) slope += w * w * e_ * rho_[i] / u_[i];
      }
      gt = val - 1.0;
    }
    const double floor = -lambda_[g];
    if (gt >= 0.0 && floor == 0.0) return;
    if (std::abs(gt) <= 1e-13) return;

    double t = 0.0;
    double lo = gt > 0.0 ? floor : 0.0;
    double hi = gt > 0.0 ? 0.0 : kInf;
    bool floor_checked = false;
    if (slope == 0.0) {
      // Every stencil node is empty: g(t) = (scale t)^e sum w^{1+e} - 1.
      double acc = 0.0;
      for (double w : s.weight) acc += std::pow(w, 1.0 + e_);
      t = std::pow(1.0 / acc, 1.0 / e_) / scale_;
      gt = eval(t, slope);
    }
    for (int it = 0; it < 200 && std::abs(gt) > 1e-13; ++it) {
      if (gt > 0.0) hi = t;
      else lo = t;
      double next = slope > 0.0 ? t - gt / slope : std::nan("");
      if (!(next > lo && next < hi)) {
        if (!floor_checked && lo == floor && next <= lo) {
          floor_checked = true;
          double sl;
          if (eval(floor, sl) >= 0.0) {
            t = floor;
            break;
          }
        }
        next = std::isfinite(hi) ? 0.5 * (lo + hi) : std::max(2.0 * lo, 1e-300);
      }
      if (std::isfinite(hi) && hi - lo <= 1e-15 * std::max(std::abs(lo), std::abs(hi)))
        break;
      t = next;
      gt = eval(t, slope);
    }
    apply(g, t);
  }

  std::size_t size() const { return st_.size(); }

  double energy() const {
    double s = 0.0;
    for (double r : rho_) s += std::pow(r, p_);
    return s * v_;
  }

  double dual_value(double energy) const {
    const double lsum = std::accumulate(lambda_.begin(), lambda_.end(), 0.0);
    return lsum - (p_ - 1.0) * energy;
  }

  const std::vector<double>& density() const { return rho_; }

 private:
  void apply(std::size_t g, double t) {
    if (t == 0.0) return;
    const Stencil& s = st_[g];
    for (std::size_t k = 0; k < s.index.size(); ++k) {
      const auto i = static_cast<std::size_t>(s.index[k]);
      u_[i] = std::max(0.0, u_[i] + t * s.weight[k]);
      rho_[i] = rho_of(u_[i]);
    }
    lambda_[g] = std::max(0.0, lambda_[g] + t);
  }

  std::vector<Stencil> st_;
  std::vector<double> lambda_;
  std::vector<double> u_;
  std::vector<double> rho_;
  double p_, e_, scale_, v_;
};

}  // namespace

ModulusResult discrete_modulus(const CurveFamily& family, double p,
                               const GridSpec& grid, const SolverOptions& opts) {
  if (!(p > 1.0)) throw DomainError("discrete_modulus: need p > 1");
  grid.validate();
  ModulusResult out;
  out.rho = DensityGrid::zeros(grid);
  if (family.empty()) {
    out.certificate.note = "empty family: modulus 0 by convention";
    return out;
  }
  if (family.dim() != grid.dim())
    throw DomainError("discrete_modulus: family and grid dimensions differ");

  std::vector<Stencil> stencils;
  stencils.reserve(family.size());
  for (const Polyline& c : family.curves) {
    if (!(c.length() > 0.0)) throw DomainError("discrete_modulus: curve of zero length");
    stencils.push_back(line_stencil(grid, c));
  }
  DualAscent solver(std::move(stencils), out.rho.values.size(), p,
                    out.rho.cell_volume());

  const std::size_t m = solver.size();
  std::vector<double> viol(m);
  std::vector<std::size_t> order(m);
  std::vector<double> history;
  ModulusCertificate& cert = out.certificate;
  cert.converged = false;
  double best_value = kInf;
  std::vector<double> best_rho;
  double best_min = 0.0, best_energy = 0.0, best_dual = -kInf, best_viol = kInf;

  for (int it = 1; it <= opts.max_iterations; ++it) {
    for (std::size_t g = 0; g < m; ++g) viol[g] = 1.0 - solver.line_value(g);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return viol[a] > viol[b]; });
    for (std::size_t g : order) solver.project(g);

    double min_line = kInf;
    for (std::size_t g = 0; g < m; ++g) min_line = std::min(min_line, solver.line_value(g));
    const double energy = solver.energy();
    const double dual = solver.dual_value(energy);
    const double max_viol = std::max(0.0, 1.0 - min_line);
    history.push_back(energy);
    best_dual = std::max(best_dual, dual);
    if (min_line > 0.0) {
      const double admissible = energy / std::pow(min_line, p);
      if (admissible < best_value) {
        best_value = admissible;
        best_rho = solver.density();
        best_min = min_line;
        best_energy = energy;
        best_viol = max_viol;
      }
    }
    cert.iterations = it;
    const bool window_ok =
        static_cast<int>(history.size()) > opts.window &&
        std::abs(energy - history[history.size() - 1 - opts.window]) <=
            opts.objective_rtol * energy;
    if (max_viol <= opts.violation_tol && window_ok) {
      cert.converged = true;
      break;
    }
  }

  if (best_rho.empty()) throw NumericError("discrete_modulus: no admissible density found");
  (void)best_energy;
  for (std::size_t i = 0; i < best_rho.size(); ++i)
    out.rho.values[i] = best_rho[i] / best_min;
  out.value = best_value;
  cert.admissible_value = best_value;
  cert.min_line_integral = best_min;
  cert.max_violation = best_viol;
  cert.dual_lower_bound = best_dual;
  cert.relative_gap = best_value > 0.0 ? (best_value - best_dual) / best_value : 0.0;
  cert.note = cert.converged
                  ? "bounds refer to the discrete problem; the gap to the continuum "
                    "modulus is not certified"
                  : fmt::format("iteration budget of {} exhausted; returning the best "
                                "admissible value",
                                opts.max_iterations);
  return out;
}

GridSpec grid_for_family(const CurveFamily& family, int resolution) {
  if (family.empty()) throw DomainError("grid_for_family: empty family");
  if (resolution < 8) throw DomainError("grid_for_family: resolution must be >= 8");
  const int n = family.dim();
  Vec lo = Vec::Constant(n, kInf), hi = Vec::Constant(n, -kInf);
  for (const Polyline& c : family.curves)
    for (const Vec& v : c.vertices) {
      lo = lo.cwiseMin(v);
      hi = hi.cwiseMax(v);
    }
  const Vec mid = 0.5 * (lo + hi);
  const double extent = std::max((hi - lo).maxCoeff(), 1e-12);
  const double h = extent / (resolution - 1 - 4);
  const double half = 0.5 * extent + 2.0 * h;
  GridSpec spec{mid.array() - half, mid.array() + half,
                std::vector<int>(n, resolution)};
  return spec;
}

}  // namespace pmod
