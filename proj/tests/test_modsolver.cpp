#include <doctest.h>

#include <cmath>
#include <sstream>

#include "pmod/bounds.hpp"
#include "pmod/modsolver.hpp"

using namespace pmod;

namespace {

Vec v2(double a, double b) {
  Vec x(2);
  x << a, b;
  return x;
}

Polyline segment(Vec a, Vec b) { return Polyline{{std::move(a), std::move(b)}}; }

DensityGrid filled(const GridSpec& spec, const std::function<double(const Vec&)>& f) {
  DensityGrid g = DensityGrid::zeros(spec);
  const int nx = spec.resolution[0], ny = spec.resolution[1];
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      const Vec x = v2(spec.lo[0] + i * g.spacing(0), spec.lo[1] + j * g.spacing(1));
      g.values[static_cast<std::size_t>(i) * ny + j] = f(x);
    }
  return g;
}

GridSpec square(double half, int res) { return {Vec::Constant(2, -half), Vec::Constant(2, half), {res, res}}; }

}  // namespace

TEST_CASE("line integral examples") {
  const GridSpec spec = square(3.0, 13);
  const Polyline gamma = segment(v2(1, 0), v2(2, 0));
  CHECK(line_integral(DensityGrid::zeros(spec), gamma) == 0.0);
  CHECK(line_integral(filled(spec, [](const Vec&) { return 2.5; }), gamma) ==
        doctest::Approx(2.5).epsilon(1e-14));
  // |x| is linear along the node row y = 0
  CHECK(line_integral(filled(spec, [](const Vec& x) { return x.norm(); }), gamma) ==
        doctest::Approx(1.5).epsilon(1e-13));
  const Polyline bent{{v2(-1, -1), v2(1, -1), v2(1, 1)}};
  CHECK(line_integral(filled(spec, [](const Vec&) { return 1.0; }), bent) ==
        doctest::Approx(4.0).epsilon(1e-13));
}

TEST_CASE("curves must stay inside the grid") {
  const GridSpec spec = square(1.0, 9);
  CHECK_THROWS_AS(line_stencil(spec, segment(v2(0, 0), v2(2, 0))), DomainError);
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(square(1.0, 4).validate(), DomainError);
  GridSpec flat{Vec::Constant(2, 0.0), Vec::Constant(2, 0.0), {16, 16}};
  CHECK_THROWS_AS(flat.validate(), DomainError);
}

TEST_CASE("empty family has zero modulus") {
  const ModulusResult r = discrete_modulus(CurveFamily{}, 2.0, square(1.0, 16));
  CHECK(r.value == 0.0);
  CHECK_FALSE(r.certificate.note.empty());
}

TEST_CASE("zero-length curve is rejected") {
  CurveFamily fam;
  fam.curves.push_back(segment(v2(0.2, 0.2), v2(0.2, 0.2)));
  CHECK_THROWS_AS(discrete_modulus(fam, 2.0, square(1.0, 16)), DomainError);
}

TEST_CASE("horizontal segments across a rectangle") {
  // Modulus of the curves joining the short sides of [0,a] x [0,b] is b a^{1-p}.
  const double a = 2.0, b = 1.0;
  const int nx = 81, ny = 41;
  const GridSpec spec{v2(0, 0), v2(a, b), {nx, ny}};
  CurveFamily fam;
  for (int j = 0; j < ny; ++j) {
    const double y = b * j / (ny - 1);
    fam.curves.push_back(segment(v2(0, y), v2(a, y)));
  }
  for (double p : {1.5, 2.0, 3.0}) {
    const ModulusResult r = discrete_modulus(fam, p, spec);
    const double want = b * std::pow(a, 1 - p);
    CHECK(std::abs(r.value / want - 1) < 0.05);
    CHECK(r.certificate.converged);
    CHECK(r.certificate.dual_lower_bound <= r.value * (1 + 1e-9));
    CHECK(r.certificate.min_line_integral == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("one radial segment in a ring") {
  const SphericalRing ring(Vec::Zero(2), 1.0, 2.0);
  const CurveFamily fam = sample_ring_family(ring, 1, SamplingMode::radial);
  REQUIRE(fam.size() == 1);
  CHECK(fam.curves[0].length() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("ring families join the boundary spheres") {
  const SphericalRing ring(Vec::Zero(3), 0.5, 1.5);
  for (SamplingMode mode : {SamplingMode::radial, SamplingMode::random_joining}) {
    const CurveFamily fam = sample_ring_family(ring, 40, mode, 5);
    REQUIRE(fam.size() == 40);
    for (const Polyline& g : fam.curves) {
      CHECK(g.vertices.front().norm() == doctest::Approx(0.5).epsilon(1e-12));
      CHECK(g.vertices.back().norm() == doctest::Approx(1.5).epsilon(1e-12));
    }
  }
}

TEST_CASE("random joining families are reproducible from the seed") {
  const SphericalRing ring(Vec::Zero(2), 1.0, 2.0);
  const CurveFamily a = sample_ring_family(ring, 32, SamplingMode::random_joining, 42);
  const CurveFamily b = sample_ring_family(ring, 32, SamplingMode::random_joining, 42);
  const CurveFamily c = sample_ring_family(ring, 32, SamplingMode::random_joining, 43);
  bool same = true, differs = false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < a.curves[i].vertices.size(); ++k) {
      same = same && (a.curves[i].vertices[k].array() == b.curves[i].vertices[k].array()).all();
      differs = differs || (a.curves[i].vertices[k] - c.curves[i].vertices[k]).norm() > 1e-6;
    }
  CHECK(same);
  CHECK(differs);
}

TEST_CASE("density binary round trip") {
  const GridSpec spec{v2(-1, -0.5), v2(2, 1.5), {9, 12}};
  const DensityGrid g = filled(spec, [](const Vec& x) { return 1 + x[0] * x[0] + 0.25 * x[1]; });
  std::stringstream ss;
  write_density(g, ss);
  const DensityGrid back = read_density(ss);
  CHECK(back.resolution == g.resolution);
  CHECK((back.lo.array() == g.lo.array()).all());
  CHECK((back.hi.array() == g.hi.array()).all());
  CHECK(back.values == g.values);

  std::string bytes;
  {
    std::stringstream full;
    write_density(g, full);
    bytes = full.str();
  }
  std::stringstream cut(bytes.substr(0, bytes.size() - 5));
  CHECK_THROWS(read_density(cut));
}

TEST_CASE("discrete modulus of a planar ring approaches the exact value") {
  const SphericalRing ring(Vec::Zero(2), 1.0, 2.0);
  const CurveFamily fam = sample_ring_family(ring, 256, SamplingMode::radial);
  const ModulusResult r = discrete_modulus(fam, 2.0, grid_for_family(fam, 128));
  const double exact = ring_modulus_oracle(1.0, 2.0, 2, 2.0);
  CHECK(std::abs(r.value / exact - 1) < 0.03);
  CHECK(r.certificate.relative_gap >= 0.0);
  CHECK(r.certificate.dual_lower_bound <= r.value * (1 + 1e-9));
  // the returned density is admissible for every curve of the family
  for (const Polyline& g : fam.curves) CHECK(line_integral(r.rho, g) >= 1 - 1e-9);
  CHECK(r.rho.energy(2.0) == doctest::Approx(r.value).epsilon(1e-9));
}
