#include "pmod/bounds.hpp"

#include <cmath>

namespace pmod {

double cap_lower_volume(double m_C, int n, double p) {
  require_dim(n, "cap_lower_volume");
  if (!(p > 1.0 && p < n)) throw DomainError("cap_lower_volume: need 1 < p < n");
  if (!(m_C >= 0.0)) throw DomainError("cap_lower_volume: need m_C >= 0");
  return n * std::pow(unit_ball_volume(n), p / n) *
         std::pow((n - p) / (p - 1.0), p - 1.0) * std::pow(m_C, (n - p) / n);
}

double cap_lower_diameter(double d_C, double m_A, int n, double p, double c1) {
  require_dim(n, "cap_lower_diameter");
  if (!(p > n - 1.0)) throw DomainError("cap_lower_diameter: need p > n-1");
  if (!(d_C >= 0.0) || !(m_A > 0.0) || !(c1 > 0.0))
    throw DomainError("cap_lower_diameter: need d_C >= 0, m_A > 0, c1 > 0");
  return std::pow(c1 * std::pow(d_C, p) / std::pow(m_A, 1.0 - n + p),
                  1.0 / (n - 1.0));
}

double diameter_from_capacity(double cap, double m_A, int n, double p,
                              double c1) {
  require_dim(n, "diameter_from_capacity");
  if (!(p > n - 1.0)) throw DomainError("diameter_from_capacity: need p > n-1");
  if (!(cap >= 0.0) || !(m_A > 0.0) || !(c1 > 0.0))
    throw DomainError("diameter_from_capacity: need cap >= 0, m_A > 0, c1 > 0");
  return std::pow(std::pow(cap, n - 1.0) * std::pow(m_A, 1.0 - n + p) / c1,
                  1.0 / p);
}

double modulus_lower_ring(double a, double b, int n, double p, double b_np) {
  require_dim(n, "modulus_lower_ring");
  DimensionParams(n, p).require_critical_range("modulus_lower_ring");
  if (!(a > 0.0) || !(b_np > 0.0))
    throw DomainError("modulus_lower_ring: need a > 0 and b_np > 0");
  if (a > b) throw DomainError("modulus_lower_ring: need a <= b");
  return std::ldexp(b_np, n) / (n - p) *
         (std::pow(b, n - p) - std::pow(a, n - p));
}

double cap_upper_criterion(double phi, double I, double p) {
  if (!(I > 0.0)) throw DomainError("cap_upper_criterion: need I > 0");
  if (!(phi >= 0.0)) throw DomainError("cap_upper_criterion: need Phi >= 0");
  return ext_div(phi, ext_pow(I, p));
}

double cap_upper_tildeI(double tilde_I, int n, double p) {
  require_dim(n, "cap_upper_tildeI");
  if (!(p > 1.0)) throw DomainError("cap_upper_tildeI: need p > 1");
  if (!(tilde_I >= 0.0)) throw DomainError("cap_upper_tildeI: need tildeI >= 0");
  return ext_div(unit_sphere_area(n), ext_pow(tilde_I, p - 1.0));
}

double distortion_bound_general(double r_image, double K, double I, int n,
                                double p, double q, double c1) {
  require_dim(n, "distortion_bound_general");
  if (!(p > 1.0)) throw DomainError("distortion_bound_general: need p > 1");
  if (!(q <= p)) throw DomainError("distortion_bound_general: need q <= p");
  if (!(r_image > 0.0))
    throw DomainError("distortion_bound_general: need r_image > 0");
  if (!(I > 0.0) || !(K >= 0.0) || !(c1 > 0.0))
    throw DomainError("distortion_bound_general: need I > 0, K >= 0, c1 > 0");
  const double s = 1.0 - n + p;
  return std::pow(1.0 / c1, 1.0 / p) * std::pow(unit_ball_volume(n), s / p) *
         std::pow(r_image, s * n / p) * std::pow(K, (n - 1.0) / p) *
         std::pow(I, (q - p) * (n - 1.0) / p);
}

double distortion_bound_fmo(double dist, double C, int n, double p) {
  require_dim(n, "distortion_bound_fmo");
  if (!(p > 1.0)) throw DomainError("distortion_bound_fmo: need p > 1");
  if (!(dist > 0.0 && dist < std::exp(-1.0)))
    throw DomainError("distortion_bound_fmo: need 0 < dist < 1/e");
  return C * std::pow(std::log(std::log(1.0 / dist)), (1.0 - p) * (n - 1.0) / p);
}

double distortion_bound_divergent(double dist, double delta0, double F,
                                  double C, int n) {
  require_dim(n, "distortion_bound_divergent");
  if (!(dist > 0.0 && dist < delta0))
    throw DomainError("distortion_bound_divergent: need 0 < dist < delta0");
  if (!(F > 0.0)) throw DomainError("distortion_bound_divergent: need F > 0");
  return ext_mul(C, ext_pow(F, -(n - 1.0) * (n - 1.0) / n));
}

double ring_modulus_oracle(double r1, double r2, int n, double p) {
  require_dim(n, "ring_modulus_oracle");
  if (!(r1 > 0.0 && r1 < r2))
    throw DomainError("ring_modulus_oracle: need 0 < r1 < r2");
  if (!(p > 1.0)) throw DomainError("ring_modulus_oracle: need p > 1");
  const double a = (n - 1.0) / (p - 1.0);
  const double L = std::log(r2 / r1);
  double integral = L;
  if (a != 1.0) integral = std::pow(r1, 1.0 - a) * std::expm1((1.0 - a) * L) / (1.0 - a);
  return unit_sphere_area(n) * std::pow(integral, 1.0 - p);
}

}  // namespace pmod
