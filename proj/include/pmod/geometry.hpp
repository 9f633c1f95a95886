#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "pmod/numeric.hpp"

namespace pmod {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr int kMinDim = 2;
inline constexpr int kMaxDim = 8;

/// A point of R^n or the point at infinity. When `at_infinity` is set the
/// coordinates are ignored; `dim` still records which space it belongs to.
class ExtendedPoint {
 public:
  static ExtendedPoint finite(Vec coords);
  static ExtendedPoint infinity(int dim);

  bool at_infinity() const { return at_infinity_; }
  int dim() const { return dim_; }
  const Vec& coords() const { return coords_; }

 private:
  ExtendedPoint(Vec coords, bool inf, int dim)
      : coords_(std::move(coords)), at_infinity_(inf), dim_(dim) {}
  Vec coords_;
  bool at_infinity_;
  int dim_;
};

/// Chordal distance on the one-point compactification; values lie in [0, 1].
double chordal_distance(const ExtendedPoint& x, const ExtendedPoint& y);
double chordal_distance(const Vec& x, const Vec& y);

/// Largest pairwise chordal distance; 0 for a singleton.
double chordal_diameter(std::span<const ExtendedPoint> points);

/// Spherical ring A(r1, r2, center) = {r1 < |x - center| < r2}.
struct SphericalRing {
  Vec center;
  double r1;
  double r2;

  SphericalRing(Vec c, double inner, double outer);
  int dim() const { return static_cast<int>(center.size()); }
  bool contains(const Vec& x) const;
};

/// Concentric ball condenser (B(center, outer), closure of B(center, inner)).
/// outer may be +inf (the whole space).
struct Condenser {
  Vec center;
  double outer_radius;
  double inner_radius;

  Condenser(Vec c, double outer, double inner);
  int dim() const { return static_cast<int>(center.size()); }
};

/// Dimension and exponent pair. The constructor only checks n in [2, 8] and
/// p > 1; operations that need n-1 < p < n call require_critical_range().
struct DimensionParams {
  int n;
  double p;

  DimensionParams(int dim, double exponent);
  void require_critical_range(const char* op) const;
};

void require_dim(int n, const char* op);

/// Volume of the unit ball, pi^{n/2} / Gamma(n/2 + 1).
double unit_ball_volume(int n);
/// Area of the unit sphere S^{n-1}, n * unit_ball_volume(n).
double unit_sphere_area(int n);

double ball_volume(int n, double r);
double sphere_area(int n, double r);

}  // namespace pmod
