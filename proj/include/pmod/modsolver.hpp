#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pmod/fields.hpp"

namespace pmod {

struct Polyline {
  std::vector<Vec> vertices;

  int dim() const { return vertices.empty() ? 0 : static_cast<int>(vertices[0].size()); }
  double length() const;
};

struct CurveFamily {
  std::vector<Polyline> curves;
  std::string label;

  bool empty() const { return curves.empty(); }
  std::size_t size() const { return curves.size(); }
  int dim() const { return curves.empty() ? 0 : curves[0].dim(); }
};

/// Axis-aligned box with `resolution[a]` nodes along axis a.
struct GridSpec {
  Vec lo;
  Vec hi;
  std::vector<int> resolution;

  int dim() const { return static_cast<int>(lo.size()); }
  void validate() const;
};

/// Nonnegative nodal density rho, multilinearly interpolated between nodes.
/// The discrete objective weights every node by the cell volume.
struct DensityGrid : GridSamples {
  static DensityGrid zeros(const GridSpec& spec);
  GridSpec spec() const { return {lo, hi, resolution}; }
  double cell_volume() const;
  double min_spacing() const;
  /// sum_nodes rho^p * cell_volume
  double energy(double p) const;
};

/// Sparse node weights w such that the line integral equals sum_i w_i rho_i.
struct Stencil {
  std::vector<std::int64_t> index;
  std::vector<double> weight;
};

/// Composite midpoint rule along the polyline with sub-segments no longer
/// than half the smallest cell edge.
Stencil line_stencil(const GridSpec& grid, const Polyline& gamma);
double line_integral(const DensityGrid& rho, const Polyline& gamma);

struct SolverOptions {
  double violation_tol = 1e-4;
  double objective_rtol = 1e-6;
  int window = 50;
  int max_iterations = 100000;
};

struct ModulusCertificate {
  double max_violation = 0.0;
  int iterations = 0;
  bool converged = true;
  double admissible_value = 0.0;  // energy of rho / min line integral^p
  double dual_lower_bound = 0.0;
  double min_line_integral = 0.0;
  double relative_gap = 0.0;
  std::string note;
};

struct ModulusResult {
  double value = 0.0;  // admissible upper bound on the discrete optimum
  DensityGrid rho;     // admissible density achieving `value`
  ModulusCertificate certificate;
};

/// Discrete p-modulus: minimize sum rho^p * vol subject to a unit line
/// integral along every curve, by most-violated-first cyclic projection onto
/// single constraints (dual coordinate ascent).
ModulusResult discrete_modulus(const CurveFamily& family, double p,
                               const GridSpec& grid,
                               const SolverOptions& opts = {});

/// Cubic box around the family's bounding box with a two-cell margin.
GridSpec grid_for_family(const CurveFamily& family, int resolution);

enum class SamplingMode { radial, random_joining };

/// k curves joining the inner and outer boundary spheres of the ring.
CurveFamily sample_ring_family(const SphericalRing& ring, int k,
                               SamplingMode mode, std::uint64_t seed = 0);

/// Flat binary density: uint32 n, n x uint32 resolution, n doubles lo,
/// n doubles hi, then the node values as float64, row-major, little-endian.
void write_density(const DensityGrid& rho, std::ostream& out);
DensityGrid read_density(std::istream& in);

}  // namespace pmod
