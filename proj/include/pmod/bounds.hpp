#pragma once

#include "pmod/geometry.hpp"

namespace pmod {

/// Literature constants that the bounds depend on but whose values are not
/// known in closed form. Both default to 1; only shape and monotonicity of
/// the affected bounds are meaningful.
struct BoundConstants {
  double c1 = 1.0;    // diameter lower bound for p-capacity
  double b_np = 1.0;  // ring modulus lower bound
};

/// Capacity lower bound from the volume of the plate:
/// n Omega_n^{p/n} ((n-p)/(p-1))^{p-1} m_C^{(n-p)/n}, for 1 < p < n.
double cap_lower_volume(double m_C, int n, double p);

/// (c1 d_C^p / m_A^{1-n+p})^{1/(n-1)}, for p > n-1.
double cap_lower_diameter(double d_C, double m_A, int n, double p, double c1);

/// Inverse of cap_lower_diameter in d_C: the largest plate diameter
/// compatible with capacity `cap` inside a set of volume m_A.
double diameter_from_capacity(double cap, double m_A, int n, double p,
                              double c1);

/// (2^n b_np / (n-p)) (b^{n-p} - a^{n-p}) for the ring a < |x| < b.
double modulus_lower_ring(double a, double b, int n, double p, double b_np);

/// Phi / I^p.
double cap_upper_criterion(double phi, double I, double p);

/// omega_{n-1} / tildeI^{p-1}; inf for tildeI = 0 and 0 for tildeI = inf.
double cap_upper_tildeI(double tilde_I, int n, double p);

/// Distortion bound for |f(x) - f(x0)| given int Q psi^p <= K I^q:
/// (1/c1)^{1/p} Omega_n^{(1-n+p)/p} r^{(1-n+p)n/p} K^{(n-1)/p}
/// I^{(q-p)(n-1)/p}.
double distortion_bound_general(double r_image, double K, double I, int n,
                                double p, double q, double c1);

/// C (log log (1/dist))^{(1-p)(n-1)/p} for 0 < dist < 1/e.
double distortion_bound_fmo(double dist, double C, int n, double p);

/// C F^{-(n-1)^2/n} with F = int_dist^delta0 dt / (t q^{1/(n-1)}(t)) > 0.
double distortion_bound_divergent(double dist, double delta0, double F,
                                  double C, int n);

/// Exact p-modulus of the curves joining the boundary spheres of the ring
/// r1 < |x| < r2 in R^n. The extremal density is radial,
/// phi(t) proportional to t^{-(n-1)/(p-1)}, and the value is
/// omega_{n-1} (int_{r1}^{r2} t^{-(n-1)/(p-1)} dt)^{1-p}.
double ring_modulus_oracle(double r1, double r2, int n, double p);

}  // namespace pmod
