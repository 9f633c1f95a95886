#include "pmod/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace pmod {

ExtendedPoint ExtendedPoint::finite(Vec coords) {
  const int n = static_cast<int>(coords.size());
  require_dim(n, "ExtendedPoint");
  if (!coords.allFinite())
    throw DomainError("ExtendedPoint: finite point needs finite coordinates");
  return ExtendedPoint(std::move(coords), false, n);
}

ExtendedPoint ExtendedPoint::infinity(int dim) {
  require_dim(dim, "ExtendedPoint");
  return ExtendedPoint(Vec::Zero(dim), true, dim);
}

double chordal_distance(const Vec& x, const Vec& y) {
  if (x.size() != y.size())
    throw DomainError("chordal_distance: dimension mismatch");
  const double d = (x - y).norm();
  const double h = d / (std::sqrt(1.0 + x.squaredNorm()) *
                        std::sqrt(1.0 + y.squaredNorm()));
  return std::min(h, 1.0);
}

double chordal_distance(const ExtendedPoint& x, const ExtendedPoint& y) {
  if (x.dim() != y.dim())
    throw DomainError("chordal_distance: dimension mismatch");
  if (x.at_infinity() && y.at_infinity()) return 0.0;
  if (x.at_infinity()) return 1.0 / std::sqrt(1.0 + y.coords().squaredNorm());
  if (y.at_infinity()) return 1.0 / std::sqrt(1.0 + x.coords().squaredNorm());
  return chordal_distance(x.coords(), y.coords());
}

double chordal_diameter(std::span<const ExtendedPoint> points) {
  if (points.empty()) throw DomainError("chordal_diameter: empty point set");
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      best = std::max(best, chordal_distance(points[i], points[j]));
  return best;
}

SphericalRing::SphericalRing(Vec c, double inner, double outer)
    : center(std::move(c)), r1(inner), r2(outer) {
  require_dim(dim(), "SphericalRing");
  if (!(r1 > 0.0) || !(r1 < r2) || !std::isfinite(r2))
    throw DomainError("SphericalRing: need 0 < r1 < r2 < inf");
}

bool SphericalRing::contains(const Vec& x) const {
  const double r = (x - center).norm();
  return r > r1 && r < r2;
}

Condenser::Condenser(Vec c, double outer, double inner)
    : center(std::move(c)), outer_radius(outer), inner_radius(inner) {
  require_dim(dim(), "Condenser");
  if (!(inner_radius > 0.0) || !(inner_radius < outer_radius))
    throw DomainError("Condenser: need 0 < inner radius < outer radius");
}

DimensionParams::DimensionParams(int dim, double exponent) : n(dim), p(exponent) {
  require_dim(n, "DimensionParams");
  if (!(p > 1.0)) throw DomainError("DimensionParams: need p > 1");
}

void DimensionParams::require_critical_range(const char* op) const {
  if (!(p > n - 1.0 && p < n))
    throw DomainError(std::string(op) + ": need n-1 < p < n");
}

void require_dim(int n, const char* op) {
  if (n < kMinDim || n > kMaxDim)
    throw DomainError(std::string(op) + ": dimension must lie in [2, 8]");
}

double unit_ball_volume(int n) {
  if (n < 1) throw DomainError("unit_ball_volume: n must be >= 1");
  return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double unit_sphere_area(int n) { return n * unit_ball_volume(n); }

double ball_volume(int n, double r) {
  if (!(r >= 0.0)) throw DomainError("ball_volume: radius must be >= 0");
  return unit_ball_volume(n) * std::pow(r, n);
}

double sphere_area(int n, double r) {
  if (!(r >= 0.0)) throw DomainError("sphere_area: radius must be >= 0");
  if (n == 1) return 2.0;
  return unit_sphere_area(n) * std::pow(r, n - 1);
}

}  // namespace pmod
