#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pmod {

/// Invalid input: a precondition of an operation does not hold.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation ran but could not produce a trustworthy number.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Extended nonnegative reals. +inf is the distinguished infinite value and the
// conventions a/inf = 0, a/0 = inf (a > 0), 0*inf = 0 are applied literally.
inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool is_inf(double v) { return std::isinf(v) && v > 0; }

inline double ext_div(double a, double b) {
  if (is_inf(b)) return is_inf(a) ? kInf : 0.0;
  if (b == 0.0) return a > 0.0 ? kInf : 0.0;
  return a / b;
}

inline double ext_mul(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  return a * b;
}

/// x^e on [0, inf] with 0^e = inf for e < 0 and inf^e = 0 for e < 0.
inline double ext_pow(double x, double e) {
  if (e == 0.0) return 1.0;
  if (is_inf(x)) return e > 0 ? kInf : 0.0;
  if (x == 0.0) return e > 0 ? 0.0 : kInf;
  return std::pow(x, e);
}

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached rule with `order` points (Newton iteration on P_order).
const GaussRule& gauss_legendre(int order);

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
  int panels = 0;
};

struct QuadOptions {
  double rel_tol = 1e-6;
  double abs_tol = 0.0;
  int max_panels = 4096;
  // Number of geometric panels placed toward the lower endpoint before the
  // adaptive phase; 0 disables it.
  int geometric_lower = 0;
};

/// Adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
/// Non-finite integrand values mark the result non-converged with value inf.
QuadResult integrate(const std::function<double(double)>& f, double a,
                     double b, const QuadOptions& opts = {});

/// Least-squares slope of y against x.
double ls_slope(std::span<const double> x, std::span<const double> y);

enum class Verdict { satisfied, violated, inconclusive };

std::string to_string(Verdict v);

/// Slope thresholds for asymptotic verdicts on log-log sequences.
inline constexpr double kBoundedSlope = 0.05;
inline constexpr double kUnboundedSlope = 0.5;

/// Default geometric grid eps0 * 2^{-k}, k = 1..count.
std::vector<double> geometric_grid(double eps0, int count = 20);

}  // namespace pmod
