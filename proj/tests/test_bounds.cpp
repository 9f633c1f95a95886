#include <doctest.h>

#include <cmath>

#include "pmod/bounds.hpp"

using namespace pmod;

TEST_CASE("cap_lower_volume") {
  CHECK(cap_lower_volume(0.0, 3, 1.5) == 0.0);
  CHECK(cap_lower_volume(1.0, 3, 1.5) == doctest::Approx(6 * std::sqrt(M_PI)).epsilon(1e-15));
  // n=2, p=3/2, m_C=pi: 2 pi^{3/4} * 1 * pi^{1/4} = 2 pi
  CHECK(cap_lower_volume(M_PI, 2, 1.5) == doctest::Approx(2 * M_PI).epsilon(1e-15));
  CHECK_THROWS_AS(cap_lower_volume(1.0, 2, 2.0), DomainError);
}

TEST_CASE("cap_lower_volume never exceeds the capacity of a ball condenser") {
  // cap(B(R), closed B(r)) equals the modulus of the ring r < |x| < R
  for (int n = 2; n <= 5; ++n)
    for (double p : {1.1, 0.5 * (1 + n), n - 0.05})
      for (double r : {0.1, 1.0, 3.0})
        for (double R : {1.01 * r, 2 * r, 100 * r}) {
          const double cap = ring_modulus_oracle(r, R, n, p);
          CHECK(cap_lower_volume(ball_volume(n, r), n, p) < cap * (1 + 1e-9));
        }
}

TEST_CASE("cap_lower_diameter") {
  CHECK(cap_lower_diameter(0.0, 1.0, 2, 1.5, 1.0) == 0.0);
  CHECK(cap_lower_diameter(1.0, M_PI, 2, 1.5, 1.0) == doctest::Approx(1 / std::sqrt(M_PI)));
  const int n = 3;
  const double p = 2.4, lam = 2.0;
  const double ratio = cap_lower_diameter(lam * 0.7, std::pow(lam, n) * 1.3, n, p, 1.0) /
                       cap_lower_diameter(0.7, 1.3, n, p, 1.0);
  CHECK(ratio == doctest::Approx(std::pow(lam, (p - n * (1 - n + p)) / (n - 1))).epsilon(1e-13));
  CHECK_THROWS_AS(cap_lower_diameter(1.0, 1.0, 3, 1.5, 1.0), DomainError);
}

TEST_CASE("modulus_lower_ring") {
  CHECK(modulus_lower_ring(1.0, 1.0, 2, 1.5, 1.0) == 0.0);
  CHECK(modulus_lower_ring(1.0, 4.0, 2, 1.5, 1.0) == doctest::Approx(8.0));
  CHECK(modulus_lower_ring(1.0, 5.0, 2, 1.5, 1.0) > modulus_lower_ring(1.0, 4.0, 2, 1.5, 1.0));
  CHECK_THROWS_AS(modulus_lower_ring(2.0, 1.0, 2, 1.5, 1.0), DomainError);
}

TEST_CASE("capacity upper bounds") {
  CHECK(cap_upper_criterion(0.0, 2.0, 1.5) == 0.0);
  CHECK(cap_upper_criterion(3.0 * std::pow(2.0, 1.2), 2.0, 1.5) ==
        doctest::Approx(3.0 * std::pow(2.0, 1.2 - 1.5)));
  const double L = 0.8;
  CHECK(cap_upper_criterion(2 * M_PI * L, L, 1.5) == doctest::Approx(2 * M_PI * std::pow(L, -0.5)));
  CHECK_THROWS_AS(cap_upper_criterion(1.0, 0.0, 1.5), DomainError);

  CHECK(cap_upper_tildeI(kInf, 2, 1.5) == 0.0);
  CHECK(cap_upper_tildeI(0.5, 2, 1.5) == doctest::Approx(2 * M_PI * std::sqrt(2.0)));
  CHECK(cap_upper_tildeI(1.0, 3, 2.5) == doctest::Approx(4 * M_PI));
  CHECK(cap_upper_tildeI(0.0, 2, 1.5) == kInf);
}

TEST_CASE("distortion bounds") {
  CHECK(distortion_bound_general(1.0, 1.0, std::exp(1.0), 2, 1.5, 1.0, 1.0) ==
        doctest::Approx(std::cbrt(M_PI) * std::exp(-1.0 / 3)).epsilon(1e-14));
  CHECK(distortion_bound_general(1.0, 2.0, 3.0, 2, 1.5, 1.5, 1.0) ==
        doctest::Approx(distortion_bound_general(1.0, 2.0, 30.0, 2, 1.5, 1.5, 1.0)));
  CHECK(distortion_bound_general(1.0, 2.0, 3.0, 2, 1.5, 1.0, 1.0) >
        distortion_bound_general(1.0, 2.0, 4.0, 2, 1.5, 1.0, 1.0));
  CHECK_THROWS_AS(distortion_bound_general(0.0, 1.0, 1.0, 2, 1.5, 1.0, 1.0), DomainError);

  CHECK(distortion_bound_fmo(std::exp(-std::exp(1.0)), 1.0, 2, 1.5) == doctest::Approx(1.0));
  CHECK(distortion_bound_fmo(1e-300, 1.0, 2, 1.5) < distortion_bound_fmo(1e-3, 1.0, 2, 1.5));
  CHECK_THROWS_AS(distortion_bound_fmo(0.5, 1.0, 2, 1.5), DomainError);

  CHECK(distortion_bound_divergent(0.1, 0.5, kInf, 1.0, 2) == 0.0);
  CHECK(distortion_bound_divergent(0.1, 0.5, 4.0, 1.0, 2) == doctest::Approx(0.5));
  CHECK_THROWS_AS(distortion_bound_divergent(0.1, 0.5, 0.0, 1.0, 2), DomainError);
  double last = kInf;
  for (double d : {0.25, 0.1, 1e-2, 1e-4, 1e-8}) {
    const double b = distortion_bound_divergent(d, 0.5, std::log(0.5 / d), 1.0, 3);
    CHECK(b < last);
    last = b;
  }
}

TEST_CASE("bound evaluators are monotone as their exponents dictate") {
  auto increasing = [](auto f, double a, double b) {
    double prev = f(a);
    for (int k = 1; k <= 20; ++k) {
      const double x = a + (b - a) * k / 20.0;
      const double y = f(x);
      if (!(y >= prev)) return false;
      prev = y;
    }
    return true;
  };
  CHECK(increasing([](double m) { return cap_lower_volume(m, 3, 2.2); }, 0.1, 5));
  CHECK(increasing([](double d) { return cap_lower_diameter(d, 2.0, 3, 2.5, 1); }, 0.1, 5));
  CHECK(increasing([](double m) { return -cap_lower_diameter(1.0, m, 3, 2.5, 1); }, 0.1, 5));
  CHECK(increasing([](double b) { return modulus_lower_ring(1, b, 3, 2.5, 1); }, 1, 5));
  CHECK(increasing([](double I) { return -cap_upper_tildeI(I, 3, 2.5); }, 0.1, 5));
  CHECK(increasing([](double r) { return distortion_bound_general(r, 1, 2, 3, 2.5, 2, 1); }, 0.1, 5));
  CHECK(increasing([](double K) { return distortion_bound_general(1, K, 2, 3, 2.5, 2, 1); }, 0.1, 5));
  CHECK(increasing([](double d) { return distortion_bound_fmo(d, 1, 3, 2.5); }, 1e-6, 0.36));
  CHECK(increasing([](double F) { return -distortion_bound_divergent(0.1, 0.5, F, 1, 3); }, 0.1, 5));
}

TEST_CASE("distortion_bound_general is the capacity bound composed with the diameter inversion") {
  for (int n : {2, 3, 5})
    for (double p : {n - 0.7, n - 0.1, n + 0.4})
      for (double q : {1.0, p}) {
        if (q > p) continue;
        const double K = 0.9, I = 3.7, c1 = 1.3, r = 0.6;
        const double cap = cap_upper_criterion(K * std::pow(I, q), I, p);
        const double d = diameter_from_capacity(cap, ball_volume(n, r), n, p, c1);
        CHECK(std::abs(d / distortion_bound_general(r, K, I, n, p, q, c1) - 1) <= 1e-12);
        // and the inversion undoes cap_lower_diameter
        CHECK(cap_lower_diameter(d, ball_volume(n, r), n, p, c1) == doctest::Approx(cap).epsilon(1e-12));
      }
}

TEST_CASE("ring modulus oracle") {
  CHECK(ring_modulus_oracle(1.0, std::exp(1.0), 2, 2.0) == doctest::Approx(2 * M_PI).epsilon(1e-15));
  CHECK(ring_modulus_oracle(1.0, 2.0, 2, 1.5) == doctest::Approx(2 * M_PI * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(ring_modulus_oracle(1.0, 1.0 + 1e-6, 3, 2.5) > 1e6);
  for (int n : {2, 3, 4})
    for (double p : {1.3, 2.0, 3.5}) {
      const double lam = 3.0;
      const double ratio = ring_modulus_oracle(lam * 0.4, lam * 1.1, n, p) /
                           ring_modulus_oracle(0.4, 1.1, n, p);
      CHECK(ratio == doctest::Approx(std::pow(lam, n - p)).epsilon(1e-12));
    }
  // p = n: omega (log r2/r1)^{1-n}
  CHECK(ring_modulus_oracle(0.5, 3.0, 3, 3.0) ==
        doctest::Approx(4 * M_PI * std::pow(std::log(6.0), -2.0)).epsilon(1e-14));
  // independent oracle: the minimum over radial densities, by quadrature
  const int n = 3;
  const double p = 1.7, r1 = 0.3, r2 = 1.9, a = (n - 1) / (p - 1);
  const double I = integrate([&](double t) { return std::pow(t, -a); }, r1, r2, {1e-14, 0, 4096, 0}).value;
  CHECK(ring_modulus_oracle(r1, r2, n, p) == doctest::Approx(4 * M_PI * std::pow(I, 1 - p)).epsilon(1e-12));
}
