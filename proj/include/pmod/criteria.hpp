#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pmod/fields.hpp"

namespace pmod {

enum class CriterionId {
  fmo,
  loglog_growth,
  divergence_c,
  theorem3_Ls,
  theorem4_divergence,
  corollary_power
};

std::string to_string(CriterionId id);

struct CriterionReport {
  CriterionId criterion;
  Verdict verdict = Verdict::inconclusive;
  std::vector<std::pair<double, double>> evidence;  // (eps, value)
  std::string extrapolation_note;
  double slope = 0.0;  // growth statistic behind the verdict
};

/// Mean oscillation (1/|B|) int_B |Q - Q_B| over balls B(x0, eps) for a
/// strictly decreasing list of radii, with the bounded/unbounded verdict.
CriterionReport fmo_estimate(const ScalarField& q, const Vec& x0,
                             const std::vector<double>& eps_list);

/// q_{x0}(r) / (log 1/r)^{n-1} along r_list (decreasing, below 1).
CriterionReport criterion_loglog_growth(const ScalarField& q, const Vec& x0,
                                        const std::vector<double>& r_list);

/// F(delta) = int_delta^delta0 dt / (t q^{1/(n-1)}(t)) on delta0 2^{-k},
/// k = 1..count; satisfied when F diverges as delta -> 0.
CriterionReport criterion_divergence(const ScalarField& q, const Vec& x0,
                                     double delta0, int count = 20);

struct LsNorm {
  double value = 0.0;   // ||Q||_{L^s(B(center, radius))}, possibly inf
  bool finite = false;
};

LsNorm ls_norm(const ScalarField& q, const Vec& center, double radius, double s);

/// Integrability threshold s >= n/(n-p) plus the decay envelope of the
/// normalized ring integral on eps0 2^{-k}.
CriterionReport criterion_theorem3(const ScalarField& q, double s, int n,
                                   double p, const Vec& center, double radius,
                                   double eps0);

/// n/(n-p), the smallest admissible integrability exponent.
double theorem3_threshold(int n, double p);

/// int_0^eps0 dr / (r^{(n-1)/(p-1)} q_b^{1/(p-1)}(r)) = inf, tested like
/// criterion_divergence.
CriterionReport criterion_theorem4(const ScalarField& q, const Vec& b, double p,
                                   double eps0, int count = 20);

/// q_b(t) <= c t^{p-n}: boundedness of q_b(t) t^{n-p} on the eps grid.
CriterionReport criterion_corollary(const ScalarField& q, const Vec& b,
                                    double p, double eps0, int count = 20);

/// The divergence protocol shared by the divergence and q_b-integral criteria.
/// `shells[k]` is the integral over (grid[k], grid[k-1]) with grid[-1] = delta0.
CriterionReport classify_divergence(CriterionId id,
                                    const std::vector<double>& grid,
                                    const std::vector<double>& shells);

struct TildeI {
  double value = 0.0;  // inf when q vanishes on part of the interval
  double error = 0.0;
  bool converged = true;
};

/// int_{r1}^{r2} dr / (r^{(n-1)/(p-1)} q_{x0}^{1/(p-1)}(r)).
TildeI tilde_I(const ScalarField& q, const Vec& x0, double r1, double r2,
               double p);

}  // namespace pmod
