#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pmod/geometry.hpp"

namespace pmod {

/// Regularly sampled values on an axis-aligned box, n in {2, 3}. Values are
/// stored row-major (last axis fastest) and interpolated multilinearly.
struct GridSamples {
  Vec lo;
  Vec hi;
  std::vector<int> resolution;
  std::vector<double> values;

  int dim() const { return static_cast<int>(lo.size()); }
  double spacing(int axis) const {
    return (hi[axis] - lo[axis]) / (resolution[axis] - 1);
  }
  /// Multilinear interpolation; throws DomainError outside the box.
  double interpolate(const Vec& x) const;
};

/// A nonnegative majorant Q, possibly taking the value +inf.
class ScalarField {
 public:
  enum class Kind { constant, radial, closed_form, grid };
  using Profile = std::function<double(double)>;
  using Formula = std::function<double(const Vec&)>;

  static ScalarField constant(double c);
  /// Q(x) = profile(|x - center|); an empty center means the origin.
  static ScalarField radial(Profile profile, std::string label, Vec center = {},
                            double domain_radius = kInf);
  static ScalarField closed_form(std::string label, Formula formula,
                                 double domain_radius = kInf);
  static ScalarField grid(GridSamples samples);

  double operator()(const Vec& x) const;

  Kind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  double domain_radius() const { return domain_radius_; }
  /// Distance from x0 to the domain boundary (the domain is a ball about the
  /// field's center, or the grid box).
  double boundary_distance(const Vec& x0) const;

  /// Exact sphere mean when the field is constant or radial about x0.
  std::optional<double> exact_sphere_mean(const Vec& x0, double r) const;

  /// Pointwise Q^s with the extended-real conventions.
  ScalarField power(double s) const;
  /// Pointwise Q + c.
  ScalarField shifted(double c) const;

 private:
  Kind kind_ = Kind::constant;
  std::string label_;
  double constant_ = 0.0;
  Profile profile_;
  Formula formula_;
  Vec center_;
  double domain_radius_ = kInf;
  std::shared_ptr<const GridSamples> grid_;
};

struct SphereMean {
  double value = 0.0;
  double error = 0.0;
};

/// Mean of Q over the sphere |x - x0| = r. Gauss-Legendre in the angles for
/// n = 2, 3; a fixed quasi-Monte Carlo sample of 2^14 points for n >= 4.
SphereMean sphere_mean(const ScalarField& q, const Vec& x0, double r);

/// t -> q_{x0}(t), the spherical mean as a function of the radius.
std::function<double(double)> radial_mean(const ScalarField& q, const Vec& x0);

/// Unit vectors of a deterministic quasi-uniform sample of S^{n-1}.
std::vector<Vec> sphere_directions(int n, int count);

/// Admissible radial functions psi used by the integral criteria.
class PsiFamily {
 public:
  enum class Kind { loglog, reciprocal, qmean, capacity, constant, custom };
  using RadialProfile = std::function<double(double)>;

  /// (t log(1/t))^{-n/p}; supported on (0, 1).
  static PsiFamily loglog(int n, double p);
  /// 1/t.
  static PsiFamily reciprocal();
  /// (1 / (t q^{1/(n-1)}(t)))^{n/p} on (lo, hi), zero outside.
  static PsiFamily qmean(int n, double p, RadialProfile q, double lo,
                         double hi);
  /// 1 / (t^{(n-1)/(p-1)} q^{1/(p-1)}(t)) on (lo, hi), zero outside.
  static PsiFamily capacity(int n, double p, RadialProfile q, double lo,
                            double hi);
  static PsiFamily constant(double c, double lo = 0.0, double hi = kInf);
  /// Piecewise-linear table; zero outside [t.front(), t.back()].
  static PsiFamily custom(std::vector<double> t, std::vector<double> values);

  double operator()(double t) const;
  PsiFamily scaled(double factor) const;

  Kind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  double support_lo() const { return lo_; }
  double support_hi() const { return hi_; }

 private:
  Kind kind_ = Kind::constant;
  std::string label_;
  std::function<double(double)> fn_;
  double lo_ = 0.0;
  double hi_ = kInf;
  double scale_ = 1.0;
};

struct IntegralResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
};

/// Integral of Q(x) psi^p(|x - x0|) over the ring, computed through the
/// radial factorization omega_{n-1} * int q_{x0}(t) psi^p(t) t^{n-1} dt.
IntegralResult ring_integral(const ScalarField& q, const PsiFamily& psi,
                             const SphericalRing& ring, double p);

struct PsiIntegral {
  double value = 0.0;
  double error = 0.0;
  bool positive = false;
  bool finite = false;
  bool converged = true;
  bool admissible() const { return positive && finite; }
};

/// I(eps, eps0) = int_eps^eps0 psi(t) dt.
PsiIntegral psi_integral(const PsiFamily& psi, double eps, double eps0);

}  // namespace pmod
