#include <algorithm>
#include <cmath>

#include "pmod/bounds.hpp"
#include "pmod/mappings.hpp"

namespace pmod {

namespace {

double sphere_sup(const MappingSpec& f, const Vec& b, double delta, Metric metric,
                  const std::vector<Vec>& dirs) {
  const Vec fb = evaluate(f, b);
  double sup = 0.0;
  for (const Vec& u : dirs) {
    const Vec fx = evaluate(f, b + delta * u);
    const double d = metric == Metric::chordal ? chordal_distance(fx, fb) : (fx - fb).norm();
    if (!std::isfinite(d)) throw NumericError("equicontinuity_probe: evaluation failed");
    sup = std::max(sup, d);
  }
  return sup;
}

// Least-squares slope over the positive entries only.
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] > 0.0 && y[i] > 0.0) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  if (lx.size() < 2) return 0.0;
  return ls_slope(lx, ly);
}

}  // namespace

ProbeTable equicontinuity_probe(const std::vector<MappingSpec>& family, const Vec& b,
                                const std::vector<double>& deltas, Metric metric) {
  if (family.empty()) throw DomainError("equicontinuity_probe: empty family");
  if (deltas.empty()) throw DomainError("equicontinuity_probe: empty delta list");
  for (double d : deltas)
    if (!(d > 0.0)) throw DomainError("equicontinuity_probe: deltas must be > 0");
  const int n = static_cast<int>(b.size());
  for (const auto& f : family)
    if (f.n != n) throw DomainError("equicontinuity_probe: dimension mismatch");
  const std::vector<Vec> dirs = sphere_directions(n, kProbePoints);

  ProbeTable t;
  t.deltas = deltas;
  t.column_sup.assign(deltas.size(), 0.0);
  for (const auto& f : family) {
    t.labels.push_back(f.label());
    std::vector<double> row;
    for (std::size_t j = 0; j < deltas.size(); ++j) {
      row.push_back(sphere_sup(f, b, deltas[j], metric, dirs));
      t.column_sup[j] = std::max(t.column_sup[j], row.back());
    }
    t.oscillation.push_back(std::move(row));
  }

  std::vector<double> index(family.size());
  for (std::size_t i = 0; i < index.size(); ++i) index[i] = static_cast<double>(i + 1);
  t.index_growth = 0.0;
  if (family.size() >= 2)
    for (std::size_t j = 0; j < deltas.size(); ++j) {
      std::vector<double> col;
      for (const auto& row : t.oscillation) col.push_back(row[j]);
      t.index_growth = std::max(t.index_growth, log_log_slope(index, col));
    }
  t.decay_slope = deltas.size() >= 2 ? log_log_slope(deltas, t.column_sup) : 0.0;

  if (t.index_growth > 1.5)
    t.verdict = "violated evidence";
  else if (deltas.size() >= 2 && t.decay_slope >= 0.5)
    t.verdict = "equicontinuous evidence";
  else
    t.verdict = "inconclusive";
  return t;
}

DistortionTable distortion_vs_bound(const MappingSpec& f, const Vec& x0, double p,
                                    const ScalarField& q, const DistortionBound& bound,
                                    const std::vector<double>& dists) {
  const int n = static_cast<int>(x0.size());
  if (f.n != n) throw DomainError("distortion_vs_bound: dimension mismatch");
  if (dists.empty()) throw DomainError("distortion_vs_bound: empty distance list");
  const std::vector<Vec> dirs = sphere_directions(n, kProbePoints);
  const auto qmean = radial_mean(q, x0);

  DistortionTable table;
  double lo = kInf;
  for (double d : dists) {
    DistortionRow row;
    row.dist = d;
    row.distortion = sphere_sup(f, x0, d, Metric::euclidean, dirs);
    if (bound.kind == DistortionBound::Kind::fmo) {
      row.shape = distortion_bound_fmo(d, 1.0, n, p);
    } else {
      if (!(d < bound.delta0))
        throw DomainError("distortion_vs_bound: need dist < delta0");
      const QuadResult F = integrate(
          [&](double t) { return 1.0 / (t * std::pow(qmean(t), 1.0 / (n - 1.0))); }, d,
          bound.delta0, QuadOptions{1e-8, 0.0, 4096, 16});
      row.shape = distortion_bound_divergent(d, bound.delta0, F.value, 1.0, n);
    }
    row.fitted_C = row.shape > 0.0 ? row.distortion / row.shape : kInf;
    table.fitted_C = std::max(table.fitted_C, row.fitted_C);
    lo = std::min(lo, row.fitted_C);
    table.rows.push_back(row);
  }
  table.spread = lo > 0.0 ? table.fitted_C / lo : kInf;
  return table;
}

}  // namespace pmod
