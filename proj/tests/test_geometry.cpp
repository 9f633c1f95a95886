#include <doctest.h>

#include <cmath>
#include <random>

#include "pmod/geometry.hpp"

using namespace pmod;

namespace {

Vec v2(double a, double b) {
  Vec x(2);
  x << a, b;
  return x;
}

ExtendedPoint fin(Vec x) { return ExtendedPoint::finite(std::move(x)); }

}  // namespace

TEST_CASE("chordal distance examples") {
  const auto inf = ExtendedPoint::infinity(2);
  CHECK(chordal_distance(fin(Vec::Zero(2)), inf) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(chordal_distance(fin(v2(0.3, -2.0)), fin(v2(0.3, -2.0))) == 0.0);
  CHECK(chordal_distance(fin(v2(1, 0)), inf) ==
        doctest::Approx(0.70710678118654752).epsilon(1e-15));
  CHECK(chordal_distance(inf, inf) == 0.0);
  CHECK_THROWS_AS(chordal_distance(fin(v2(1, 0)), ExtendedPoint::infinity(3)), DomainError);
}

TEST_CASE("chordal diameter examples") {
  std::vector<ExtendedPoint> single{fin(v2(4, 5))};
  CHECK(chordal_diameter(single) == 0.0);
  std::vector<ExtendedPoint> zero_inf{fin(Vec::Zero(2)), ExtendedPoint::infinity(2)};
  CHECK(chordal_diameter(zero_inf) == doctest::Approx(1.0));
  std::vector<ExtendedPoint> pair{fin(v2(1, 0)), fin(v2(-1, 0))};
  CHECK(chordal_diameter(pair) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(chordal_diameter(std::span<const ExtendedPoint>{}), DomainError);
}

TEST_CASE("chordal metric: symmetry, bound and triangle inequality") {
  std::mt19937_64 eng(11);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::uniform_real_distribution<double> scale(-3.0, 3.0);
  for (int t = 0; t < 2000; ++t) {
    Vec x(3), y(3), z(3);
    for (int i = 0; i < 3; ++i) {
      x[i] = u(eng) * std::pow(10.0, scale(eng));
      y[i] = u(eng);
      z[i] = u(eng) * std::pow(10.0, scale(eng));
    }
    const double dxy = chordal_distance(x, y), dyx = chordal_distance(y, x);
    const double dxz = chordal_distance(x, z), dzy = chordal_distance(z, y);
    CHECK(dxy == dyx);
    CHECK(dxy <= 1.0);
    CHECK(dxy <= dxz + dzy + 1e-12);
  }
}

TEST_CASE("chordal diameter is monotone under inclusion") {
  std::mt19937_64 eng(3);
  std::normal_distribution<double> g(0.0, 2.0);
  std::vector<ExtendedPoint> pts;
  double last = 0.0;
  for (int k = 0; k < 30; ++k) {
    pts.push_back(fin(v2(g(eng), g(eng))));
    const double d = chordal_diameter(pts);
    CHECK(d >= last);
    last = d;
  }
  pts.push_back(ExtendedPoint::infinity(2));
  CHECK(chordal_diameter(pts) >= last);
}

TEST_CASE("ball volume and sphere area") {
  CHECK(ball_volume(2, 1.0) == doctest::Approx(M_PI).epsilon(1e-15));
  CHECK(sphere_area(3, 1.0) == doctest::Approx(4.0 * M_PI).epsilon(1e-15));
  CHECK(ball_volume(4, 1.0) == doctest::Approx(M_PI * M_PI / 2.0).epsilon(1e-14));
  CHECK_THROWS_AS(ball_volume(2, -1.0), DomainError);
}

TEST_CASE("unit 4-ball volume agrees with a Monte Carlo estimate") {
  std::mt19937_64 eng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int N = 1000000;
  int inside = 0;
  for (int i = 0; i < N; ++i) {
    double s = 0.0;
    for (int k = 0; k < 4; ++k) {
      const double c = u(eng);
      s += c * c;
    }
    inside += s < 1.0;
  }
  const double est = 16.0 * inside / N;
  CHECK(std::abs(est - ball_volume(4, 1.0)) < 0.03);
}

TEST_CASE("sphere area is the radial derivative of ball volume") {
  for (int n = 2; n <= 8; ++n)
    for (double r : {0.3, 1.0, 2.5}) {
      const double h = 1e-5 * r;
      const double fd = (ball_volume(n, r + h) - ball_volume(n, r - h)) / (2 * h);
      CHECK(std::abs(fd - sphere_area(n, r)) <= 1e-6 * sphere_area(n, r));
    }
}

TEST_CASE("rings, condensers and dimension parameters validate their input") {
  CHECK_THROWS_AS(SphericalRing(Vec::Zero(2), 2.0, 1.0), DomainError);
  CHECK_THROWS_AS(SphericalRing(Vec::Zero(2), 0.0, 1.0), DomainError);
  const SphericalRing ring(Vec::Zero(2), 1.0, 2.0);
  CHECK(ring.contains(v2(1.5, 0)));
  CHECK_FALSE(ring.contains(v2(0.5, 0)));
  CHECK_NOTHROW(Condenser(Vec::Zero(3), kInf, 1.0));
  CHECK_THROWS_AS(Condenser(Vec::Zero(3), 1.0, 2.0), DomainError);
  CHECK_THROWS_AS(DimensionParams(2, 1.0), DomainError);
  CHECK_THROWS_AS(DimensionParams(3, 1.5).require_critical_range("op"), DomainError);
  CHECK_NOTHROW(DimensionParams(2, 1.5).require_critical_range("op"));
}
