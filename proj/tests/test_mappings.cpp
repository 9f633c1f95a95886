#include <doctest.h>

#include <cmath>
#include <random>

#include "pmod/mappings.hpp"

using namespace pmod;

namespace {

Vec v2(double a, double b) {
  Vec x(2);
  x << a, b;
  return x;
}

std::vector<MappingSpec> zoo(int n) {
  std::vector<MappingSpec> maps{MappingSpec::identity(n), MappingSpec::g1(n), MappingSpec::g2(n, 3),
                                MappingSpec::radial_power(n, 0.6),
                                MappingSpec::composition({MappingSpec::g1(n), MappingSpec::g2(n, 2)})};
  if (n == 2) maps.push_back(MappingSpec::exp_m(1.7));
  return maps;
}

}  // namespace

TEST_CASE("evaluate examples") {
  CHECK((evaluate(MappingSpec::identity(2), v2(0.3, -1)) - v2(0.3, -1)).norm() == 0.0);
  CHECK((evaluate(MappingSpec::g2(2, 3), v2(0, 1)) - v2(0, -1)).norm() < 1e-15);
  CHECK((evaluate(MappingSpec::g2(2, 2), v2(2, 0)) - v2(2, 0)).norm() < 1e-15);
  CHECK((evaluate(MappingSpec::exp_m(1), v2(0, 0)) - v2(1, 0)).norm() < 1e-15);
  CHECK((evaluate(MappingSpec::exp_m(2), v2(0.5, M_PI / 4)) - v2(0, std::exp(1.0))).norm() < 1e-14);
  CHECK((evaluate(MappingSpec::radial_power(2, 2), v2(3, 4)) - v2(15, 20)).norm() < 1e-13);
  CHECK(evaluate(MappingSpec::radial_power(3, 0.5), Vec::Zero(3)).norm() == 0.0);
  // theta = log |z|^2 = 1
  const double s = std::exp(0.5);
  CHECK((evaluate(MappingSpec::g1(2), v2(s, 0)) - s * v2(std::cos(1.0), std::sin(1.0))).norm() < 1e-14);
  CHECK((evaluate(MappingSpec::g1(2), v2(1, 0)) - v2(1, 0)).norm() < 1e-15);
  Vec axis = Vec::Zero(3);
  axis[2] = 0.7;
  CHECK((evaluate(MappingSpec::g1(3), axis) - axis).norm() == 0.0);
  CHECK_THROWS_AS(evaluate(MappingSpec::g2(2, 2), Vec::Zero(3)), DomainError);
  CHECK_THROWS_AS(MappingSpec::g2(2, 0), DomainError);
}

TEST_CASE("compositions apply left to right") {
  const auto f = MappingSpec::composition({MappingSpec::radial_power(2, 2), MappingSpec::exp_m(1)});
  const Vec x = v2(0.3, 0.4);
  CHECK((evaluate(f, x) - evaluate(MappingSpec::exp_m(1), evaluate(MappingSpec::radial_power(2, 2), x)))
            .norm() == 0.0);
  CHECK(f.label() == "compose:radialpow:alpha=2,exp:m=1");
}

TEST_CASE("g2 windings compose multiplicatively") {
  std::mt19937_64 eng(5);
  std::normal_distribution<double> g;
  for (int n : {2, 3})
    for (int t = 0; t < 50; ++t) {
      Vec x(n);
      for (int i = 0; i < n; ++i) x[i] = g(eng);
      const Vec a = evaluate(MappingSpec::composition({MappingSpec::g2(n, 2), MappingSpec::g2(n, 3)}), x);
      const Vec b = evaluate(MappingSpec::g2(n, 6), x);
      CHECK((a - b).norm() < 1e-12 * (1 + x.norm()));
    }
}

TEST_CASE("g1 and g2 preserve the distance to the axis") {
  std::mt19937_64 eng(8);
  std::normal_distribution<double> g;
  for (int t = 0; t < 100; ++t) {
    const Vec x = v2(g(eng), g(eng));
    CHECK(evaluate(MappingSpec::g1(2), x).norm() == doctest::Approx(x.norm()).epsilon(1e-14));
    CHECK(evaluate(MappingSpec::g2(2, 4), x).norm() == doctest::Approx(x.norm()).epsilon(1e-14));
  }
}

TEST_CASE("analytic derivatives agree with central differences") {
  std::mt19937_64 eng(17);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int n : {2, 3})
    for (const MappingSpec& f : zoo(n))
      for (int t = 0; t < 20; ++t) {
        Vec x(n);
        for (int i = 0; i < n; ++i) x[i] = u(eng);
        if (x.head<2>().norm() < 0.1) continue;
        const Mat A = derivative_matrix(f, x);
        const Mat F = derivative_matrix(f, x, DerivativeScheme::central_fd);
        INFO(f.label());
        CHECK((A - F).norm() <= 1e-5 * (1 + A.norm()));
      }
}

TEST_CASE("radial stretch has singular values alpha r^{alpha-1} and r^{alpha-1}") {
  const double alpha = 0.4;
  Vec x(3);
  x << 0.3, -1.1, 0.5;
  const double r = x.norm();
  const Mat D = derivative_matrix(MappingSpec::radial_power(3, alpha), x);
  Eigen::JacobiSVD<Mat> svd(D);
  const Vec s = svd.singularValues();
  CHECK(s[0] == doctest::Approx(std::pow(r, alpha - 1)).epsilon(1e-12));
  CHECK(s[1] == doctest::Approx(std::pow(r, alpha - 1)).epsilon(1e-12));
  CHECK(s[2] == doctest::Approx(alpha * std::pow(r, alpha - 1)).epsilon(1e-12));
}

TEST_CASE("dilatation of the winding map equals its multiplicity at p = n") {
  std::mt19937_64 eng(23);
  std::normal_distribution<double> g;
  for (int n : {2, 3})
    for (int m : {1, 2, 5})
      for (int t = 0; t < 20; ++t) {
        Vec x(n);
        for (int i = 0; i < n; ++i) x[i] = g(eng);
        const DilatationSample d = dilatation(MappingSpec::g2(n, m), x, n);
        CHECK(d.jacobian == doctest::Approx(m).epsilon(1e-12));
        CHECK(d.min_stretch == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(d.K_Ip == doctest::Approx(m).epsilon(1e-12));
      }
}

TEST_CASE("image families") {
  const SphericalRing ring(Vec::Zero(2), 1.0, 2.0);
  const CurveFamily fam = sample_ring_family(ring, 8, SamplingMode::radial);
  const CurveFamily same = image_family(MappingSpec::identity(2), fam, 0);
  for (std::size_t i = 0; i < fam.size(); ++i)
    CHECK(same.curves[i].vertices.size() == fam.curves[i].vertices.size());
  const CurveFamily refined = image_family(MappingSpec::identity(2), fam, 8);
  CHECK(refined.curves[0].vertices.size() == 10);
  CHECK(refined.curves[0].length() == doctest::Approx(fam.curves[0].length()).epsilon(1e-14));

  // a spiral image: refinement changes the polygon length only slightly
  const CurveFamily coarse = image_family(MappingSpec::g1(2), image_family(MappingSpec::identity(2), fam, 16), 0);
  const CurveFamily fine = image_family(MappingSpec::g1(2), fam, 64);
  CHECK(std::abs(coarse.curves[3].length() / fine.curves[3].length() - 1) < 0.02);
}

TEST_CASE("ring verifier: identity with Q = 1 is satisfied") {
  const SphericalRing ring(Vec::Zero(2), 1.0, 2.0);
  VerifyOptions opts;
  opts.k_curves = 128;
  opts.resolution = 64;
  const VerificationReport r =
      verify_ring_pQ(MappingSpec::identity(2), ring, 2.0, ScalarField::constant(1), constant_eta(ring), opts);
  // int_A eta^2 with eta = 1 on (1, 2) is the ring area 3 pi
  CHECK(r.rhs == doctest::Approx(3 * M_PI).epsilon(1e-8));
  CHECK(r.eta_integral == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r.lhs <= r.rhs);
  CHECK(r.verdict == Verdict::satisfied);
  CHECK(r.margin == doctest::Approx(r.rhs - r.lhs));
}

TEST_CASE("ring verifier rejects a non-admissible eta") {
  const SphericalRing ring(Vec::Zero(2), 1.0, 2.0);
  VerifyOptions opts;
  opts.k_curves = 16;
  opts.resolution = 32;
  CHECK_THROWS_AS(verify_ring_pQ(MappingSpec::identity(2), ring, 2.0, ScalarField::constant(1),
                                 PsiFamily::constant(0.5), opts),
                  DomainError);
  CHECK_THROWS_AS(verify_ring_pQ(MappingSpec::identity(2), ring, 1.0, ScalarField::constant(1),
                                 constant_eta(ring), opts),
                  DomainError);
}

TEST_CASE("equicontinuity probe") {
  const std::vector<double> deltas{0.5, 0.25, 0.125, 0.0625};
  const ProbeTable id = equicontinuity_probe({MappingSpec::identity(2), MappingSpec::g2(2, 3)}, Vec::Zero(2),
                                             deltas);
  for (const auto& row : id.oscillation)
    for (std::size_t j = 0; j < deltas.size(); ++j) CHECK(row[j] == doctest::Approx(deltas[j]).epsilon(1e-12));
  CHECK(id.verdict == "equicontinuous evidence");
  CHECK(id.decay_slope == doctest::Approx(1.0).epsilon(1e-9));

  std::vector<MappingSpec> exps;
  for (int m = 1; m <= 10; ++m) exps.push_back(MappingSpec::exp_m(m));
  const ProbeTable ex = equicontinuity_probe(exps, Vec::Zero(2), {0.5, 0.25});
  CHECK(ex.verdict == "violated evidence");
  CHECK(ex.oscillation[9][0] > 100 * ex.oscillation[0][0]);

  const ProbeTable ch = equicontinuity_probe(exps, Vec::Zero(2), {0.5, 0.25}, Metric::chordal);
  for (const auto& row : ch.oscillation)
    for (double v : row) CHECK(v <= 1.0);
  CHECK_THROWS_AS(equicontinuity_probe({}, Vec::Zero(2), deltas), DomainError);
}

TEST_CASE("distortion against the bound shapes") {
  const std::vector<double> dists{1e-2, 1e-3, 1e-4};
  const DistortionTable t = distortion_vs_bound(MappingSpec::identity(2), Vec::Zero(2), 1.5,
                                                ScalarField::constant(1), {}, dists);
  REQUIRE(t.rows.size() == dists.size());
  for (const DistortionRow& r : t.rows) {
    CHECK(r.distortion == doctest::Approx(r.dist).epsilon(1e-12));
    CHECK(r.fitted_C == doctest::Approx(r.distortion / r.shape));
    CHECK(r.fitted_C <= t.fitted_C * (1 + 1e-12));
  }
  CHECK(t.spread >= 1.0);
}
