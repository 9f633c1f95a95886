#include "pmod/mappings.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <fmt/format.h>

namespace pmod {

MappingSpec MappingSpec::identity(int n) {
  require_dim(n, "identity");
  return {Kind::identity, n, 0.0, {}};
}

MappingSpec MappingSpec::g1(int n) {
  require_dim(n, "g1");
  return {Kind::g1, n, 0.0, {}};
}

MappingSpec MappingSpec::g2(int n, int m) {
  require_dim(n, "g2");
  if (m < 1) throw DomainError("g2: multiplicity must be a positive integer");
  return {Kind::g2, n, static_cast<double>(m), {}};
}

MappingSpec MappingSpec::exp_m(double m) {
  if (!std::isfinite(m)) throw DomainError("exp_m: m must be finite");
  return {Kind::exp_m, 2, m, {}};
}

MappingSpec MappingSpec::radial_power(int n, double alpha) {
  require_dim(n, "radial_power");
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw DomainError("radial_power: need alpha > 0");
  return {Kind::radial_power, n, alpha, {}};
}

MappingSpec MappingSpec::composition(std::vector<MappingSpec> parts) {
  if (parts.empty()) throw DomainError("composition: empty list");
  const int n = parts.front().n;
  for (const auto& f : parts)
    if (f.n != n) throw DomainError("composition: dimension mismatch");
  return {Kind::composition, n, 0.0, std::move(parts)};
}

std::string MappingSpec::label() const {
  switch (kind) {
    case Kind::identity: return "identity";
    case Kind::g1: return "g1";
    case Kind::g2: return fmt::format("g2:m={}", static_cast<int>(param));
    case Kind::exp_m: return fmt::format("exp:m={}", param);
    case Kind::radial_power: return fmt::format("radialpow:alpha={}", param);
    case Kind::composition: {
      std::string s = "compose:";
      for (std::size_t i = 0; i < parts.size(); ++i)
        s += (i ? "," : "") + parts[i].label();
      return s;
    }
  }
  return "?";
}

bool MappingSpec::has_analytic_derivative() const {
  if (kind != Kind::composition) return true;
  for (const auto& f : parts)
    if (!f.has_analytic_derivative()) return false;
  return true;
}

namespace {

void check_point(const MappingSpec& f, const Vec& x) {
  if (x.size() != f.n) throw DomainError("evaluate: point dimension differs from the map");
  if (!x.allFinite()) throw DomainError("evaluate: non-finite point");
}

Eigen::Matrix2d rot(double a) {
  Eigen::Matrix2d r;
  r << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  return r;
}

}  // namespace

Vec evaluate(const MappingSpec& f, const Vec& x) {
  check_point(f, x);
  using K = MappingSpec::Kind;
  switch (f.kind) {
    case K::identity: return x;
    case K::g1: {
      const double r2 = x[0] * x[0] + x[1] * x[1];
      if (r2 == 0.0) return x;  // continuous extension on the axis
      Vec y = x;
      y.head<2>() = rot(std::log(r2)) * x.head<2>();
      return y;
    }
    case K::g2: {
      const int a = f.n - 2;
      const double r = std::hypot(x[a], x[a + 1]);
      if (r == 0.0) return x;
      const double phi = std::atan2(x[a + 1], x[a]);
      Vec y = x;
      y[a] = r * std::cos(f.param * phi);
      y[a + 1] = r * std::sin(f.param * phi);
      return y;
    }
    case K::exp_m: {
      const double e = std::exp(f.param * x[0]);
      Vec y(2);
      y << e * std::cos(f.param * x[1]), e * std::sin(f.param * x[1]);
      return y;
    }
    case K::radial_power: {
      const double r = x.norm();
      if (r == 0.0) return x;
      return std::pow(r, f.param - 1.0) * x;
    }
    case K::composition: {
      Vec y = x;
      for (const auto& g : f.parts) y = evaluate(g, y);
      return y;
    }
  }
  return x;
}

namespace {

Mat analytic_derivative(const MappingSpec& f, const Vec& x) {
  using K = MappingSpec::Kind;
  const int n = f.n;
  Mat D = Mat::Identity(n, n);
  switch (f.kind) {
    case K::identity: return D;
    case K::g1: {
      const double r2 = x[0] * x[0] + x[1] * x[1];
      if (r2 == 0.0) throw DomainError("g1: derivative undefined on the axis");
      const Eigen::Vector2d z = x.head<2>();
      Eigen::Matrix2d J;
      J << 0.0, -1.0, 1.0, 0.0;
      // d/dx [R(theta) z] = R(theta) (I + J z grad(theta)^T), grad = 2 z / |z|^2
      const Eigen::Matrix2d inner =
          Eigen::Matrix2d::Identity() + (J * z) * (2.0 / r2) * z.transpose();
      D.topLeftCorner<2, 2>() = rot(std::log(r2)) * inner;
      return D;
    }
    case K::g2: {
      const int a = n - 2;
      const double r = std::hypot(x[a], x[a + 1]);
      if (r == 0.0) throw DomainError("g2: derivative undefined on the axis");
      const double phi = std::atan2(x[a + 1], x[a]);
      const double m = f.param;
      Eigen::Matrix2d from, to;
      from << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
      to << std::cos(m * phi), -std::sin(m * phi), std::sin(m * phi), std::cos(m * phi);
      // polar frame: radial direction kept, angular direction stretched by m
      const Eigen::Matrix2d block = to * Eigen::Vector2d(1.0, m).asDiagonal() * from.transpose();
      D.block<2, 2>(a, a) = block;
      return D;
    }
    case K::exp_m: {
      const double m = f.param;
      return m * std::exp(m * x[0]) * rot(m * x[1]);
    }
    case K::radial_power: {
      const double r = x.norm();
      if (r == 0.0) throw DomainError("radial_power: derivative undefined at 0");
      const Vec u = x / r;
      return std::pow(r, f.param - 1.0) *
             (Mat::Identity(n, n) + (f.param - 1.0) * u * u.transpose());
    }
    case K::composition: {
      Vec y = x;
      for (const auto& g : f.parts) {
        D = analytic_derivative(g, y) * D;
        y = evaluate(g, y);
      }
      return D;
    }
  }
  return D;
}

}  // namespace

Mat derivative_matrix(const MappingSpec& f, const Vec& x, DerivativeScheme scheme,
                      double h) {
  check_point(f, x);
  if (scheme == DerivativeScheme::analytic && f.has_analytic_derivative())
    return analytic_derivative(f, x);
  if (h == 0.0) h = 1e-6 * (1.0 + x.norm());
  if (!(h > 0.0)) throw DomainError("derivative_matrix: need h > 0");
  const int n = f.n;
  Mat D(n, n);
  for (int j = 0; j < n; ++j) {
    Vec xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    const Vec fp = evaluate(f, xp), fm = evaluate(f, xm);
    if (!fp.allFinite() || !fm.allFinite())
      throw NumericError("derivative_matrix: evaluation failed at a stencil point");
    D.col(j) = (fp - fm) / (2.0 * h);
  }
  return D;
}

DilatationSample dilatation(const MappingSpec& f, const Vec& x, double p,
                            DerivativeScheme scheme) {
  if (!(p > 0.0)) throw DomainError("dilatation: need p > 0");
  const Mat D = derivative_matrix(f, x, scheme);
  DilatationSample s;
  s.point = x;
  s.jacobian = D.determinant();
  Eigen::SelfAdjointEigenSolver<Mat> eig(D.transpose() * D, Eigen::EigenvaluesOnly);
  s.min_stretch = std::sqrt(std::max(0.0, eig.eigenvalues().minCoeff()));
  s.K_Ip = s.min_stretch > 0.0 ? s.jacobian / std::pow(s.min_stretch, p)
                               : (s.jacobian == 0.0 ? 0.0 : kInf);
  return s;
}

CurveFamily image_family(const MappingSpec& f, const CurveFamily& family,
                         int refine) {
  if (refine < 0) throw DomainError("image_family: refine must be >= 0");
  CurveFamily out;
  out.label = f.label() + "(" + family.label + ")";
  out.curves.reserve(family.size());
  for (const Polyline& c : family.curves) {
    Polyline img;
    for (std::size_t i = 0; i < c.vertices.size(); ++i) {
      if (i > 0) {
        const Vec& A = c.vertices[i - 1];
        const Vec& B = c.vertices[i];
        for (int k = 1; k <= refine; ++k)
          img.vertices.push_back(evaluate(f, A + (static_cast<double>(k) / (refine + 1)) * (B - A)));
      }
      img.vertices.push_back(evaluate(f, c.vertices[i]));
    }
    for (const Vec& v : img.vertices)
      if (!v.allFinite()) throw NumericError("image_family: map produced a non-finite point");
    out.curves.push_back(std::move(img));
  }
  return out;
}

}  // namespace pmod
