#pragma once

#include <string>
#include <vector>

#include "pmod/criteria.hpp"
#include "pmod/modsolver.hpp"

namespace pmod {

/// A member of the mapping zoo. Compositions apply their parts left to
/// right: compose(a, b)(x) = b(a(x)).
struct MappingSpec {
  enum class Kind { identity, g1, g2, exp_m, radial_power, composition };

  Kind kind = Kind::identity;
  int n = 2;
  double param = 0.0;  // m for g2 / exp_m, alpha for radial_power
  std::vector<MappingSpec> parts;

  static MappingSpec identity(int n);
  /// Log-spiral rotation of the (x1, x2) plane by theta = log(x1^2 + x2^2).
  static MappingSpec g1(int n);
  /// m-fold winding about the axis x_{n-1} = x_n = 0.
  static MappingSpec g2(int n, int m);
  /// Planar (x, y) -> e^{mx} (cos my, sin my).
  static MappingSpec exp_m(double m);
  /// x -> |x|^{alpha-1} x.
  static MappingSpec radial_power(int n, double alpha);
  static MappingSpec composition(std::vector<MappingSpec> parts);

  std::string label() const;
  bool has_analytic_derivative() const;
};

Vec evaluate(const MappingSpec& f, const Vec& x);

enum class DerivativeScheme { analytic, central_fd };

/// Analytic where available; central differences with step h (default
/// 1e-6 (1 + |x|)) otherwise or on request.
Mat derivative_matrix(const MappingSpec& f, const Vec& x,
                      DerivativeScheme scheme = DerivativeScheme::analytic,
                      double h = 0.0);

struct DilatationSample {
  Vec point;
  double jacobian = 0.0;
  double min_stretch = 0.0;
  double K_Ip = 0.0;
};

/// J = det f', l = smallest singular value, K_{I,p} = J / l^p.
DilatationSample dilatation(const MappingSpec& f, const Vec& x, double p,
                            DerivativeScheme scheme = DerivativeScheme::analytic);

/// Inserts `refine` points per segment, then maps every vertex.
CurveFamily image_family(const MappingSpec& f, const CurveFamily& family,
                         int refine);

struct VerifyOptions {
  int k_curves = 512;
  int resolution = 128;
  int refine = 8;
  SamplingMode mode = SamplingMode::radial;
  std::uint64_t seed = 0;
  SolverOptions solver;
};

struct VerificationReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double tolerance = 0.0;
  ModulusCertificate certificate;
  double quadrature_error = 0.0;
  double eta_integral = 0.0;
  Verdict verdict = Verdict::inconclusive;
  std::string note;
};

/// Tests M_p(f(Gamma)) <= int_A Q eta^p for the curves joining the boundary
/// spheres of `ring` and one admissible eta.
VerificationReport verify_ring_pQ(const MappingSpec& f,
                                  const SphericalRing& ring, double p,
                                  const ScalarField& q, const PsiFamily& eta,
                                  const VerifyOptions& opts = {});

/// Normalized constant eta = 1 / (r2 - r1) on (r1, r2).
PsiFamily constant_eta(const SphericalRing& ring);

enum class Metric { euclidean, chordal };

struct ProbeTable {
  std::vector<std::string> labels;
  std::vector<double> deltas;
  std::vector<std::vector<double>> oscillation;  // [map][delta]
  std::vector<double> column_sup;                // sup over maps per delta
  double index_growth = 0.0;  // largest log-log slope of a column vs index
  double decay_slope = 0.0;   // slope of log column_sup vs log delta
  std::string verdict;
};

inline constexpr int kProbePoints = 256;

/// sup over |x - b| = delta of d(f(x), f(b)) for each map and delta.
/// "violated evidence" when some column grows faster than index^1.5 along
/// the family; "equicontinuous evidence" when the column sup shrinks at
/// least like delta^0.5; otherwise inconclusive.
ProbeTable equicontinuity_probe(const std::vector<MappingSpec>& family,
                                const Vec& b, const std::vector<double>& deltas,
                                Metric metric = Metric::euclidean);

struct DistortionBound {
  enum class Kind { fmo, divergent };
  Kind kind = Kind::fmo;
  double delta0 = 0.5;  // divergent only
};

struct DistortionRow {
  double dist = 0.0;
  double distortion = 0.0;  // max |f(x) - f(x0)| over the sphere sample
  double shape = 0.0;       // bound with C = 1
  double fitted_C = 0.0;    // distortion / shape
};

struct DistortionTable {
  std::vector<DistortionRow> rows;
  double fitted_C = 0.0;  // minimal C that makes the bound hold on the sample
  double spread = 0.0;    // max / min of the per-row constants
};

DistortionTable distortion_vs_bound(const MappingSpec& f, const Vec& x0,
                                    double p, const ScalarField& q,
                                    const DistortionBound& bound,
                                    const std::vector<double>& dists);

}  // namespace pmod
