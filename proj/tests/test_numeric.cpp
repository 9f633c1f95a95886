#include <doctest.h>

#include <cmath>

#include "pmod/numeric.hpp"

using namespace pmod;

TEST_CASE("extended-real conventions") {
  CHECK(ext_div(3.0, kInf) == 0.0);
  CHECK(ext_div(3.0, 0.0) == kInf);
  CHECK(ext_div(0.0, 0.0) == 0.0);
  CHECK(ext_mul(0.0, kInf) == 0.0);
  CHECK(ext_mul(kInf, 2.0) == kInf);
  CHECK(ext_pow(0.0, -1.0) == kInf);
  CHECK(ext_pow(kInf, -0.5) == 0.0);
  CHECK(ext_pow(kInf, 0.0) == 1.0);
}

TEST_CASE("Gauss-Legendre rules integrate polynomials exactly") {
  for (int order : {2, 5, 8, 16, 64}) {
    const GaussRule& g = gauss_legendre(order);
    REQUIRE(g.nodes.size() == static_cast<std::size_t>(order));
    for (int deg = 0; deg < 2 * order; deg += 3) {
      double s = 0.0;
      for (int i = 0; i < order; ++i) s += g.weights[i] * std::pow(g.nodes[i], deg);
      const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
      CHECK(s == doctest::Approx(exact).epsilon(1e-13));
    }
  }
}

TEST_CASE("adaptive quadrature") {
  const QuadResult r = integrate([](double t) { return std::exp(-t) * std::sin(3 * t); }, 0, 5,
                                 {1e-12, 0, 4096, 0});
  const double exact = (3.0 - std::exp(-5.0) * (std::sin(15.0) + 3 * std::cos(15.0))) / 10.0;
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(exact).epsilon(1e-11));

  // integrable endpoint singularity with geometric panels
  const QuadResult s = integrate([](double t) { return 1.0 / std::sqrt(t); }, 0.0, 1.0,
                                 {1e-8, 0, 4096, 40});
  CHECK(s.value == doctest::Approx(2.0).epsilon(1e-7));

  const QuadResult bad = integrate([](double) { return kInf; }, 0.0, 1.0);
  CHECK_FALSE(bad.converged);
  CHECK(bad.value == kInf);
}

TEST_CASE("least-squares slope and grids") {
  std::vector<double> x{1, 2, 3, 4}, y{3, 5, 7, 9};
  CHECK(ls_slope(x, y) == doctest::Approx(2.0));
  const auto g = geometric_grid(0.5, 4);
  REQUIRE(g.size() == 4);
  CHECK(g[0] == 0.25);
  CHECK(g[3] == 0.5 / 16);
  CHECK(to_string(Verdict::inconclusive) == "inconclusive");
}
