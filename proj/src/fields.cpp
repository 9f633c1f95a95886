#include "pmod/fields.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

namespace pmod {

double GridSamples::interpolate(const Vec& x) const {
  const int n = dim();
  if (x.size() != n) throw DomainError("grid field: dimension mismatch");
  int base[3] = {0, 0, 0};
  double frac[3] = {0, 0, 0};
  for (int a = 0; a < n; ++a) {
    const double h = spacing(a);
    const double s = (x[a] - lo[a]) / h;
    const double tol = 1e-9;
    if (s < -tol || s > resolution[a] - 1 + tol)
      throw DomainError("grid field: point outside the sampled box");
    int i = static_cast<int>(std::floor(s));
    i = std::clamp(i, 0, resolution[a] - 2);
    base[a] = i;
    frac[a] = std::clamp(s - i, 0.0, 1.0);
  }
  double acc = 0.0;
  const int corners = 1 << n;
  for (int c = 0; c < corners; ++c) {
    double w = 1.0;
    std::size_t idx = 0;
    for (int a = 0; a < n; ++a) {
      const int bit = (c >> a) & 1;
      w *= bit ? frac[a] : 1.0 - frac[a];
      idx = idx * resolution[a] + (base[a] + bit);
    }
    if (w != 0.0) acc += ext_mul(w, values[idx]);
  }
  return acc;
}

ScalarField ScalarField::constant(double c) {
  if (!(c >= 0.0)) throw DomainError("constant field: value must be >= 0");
  ScalarField f;
  f.kind_ = Kind::constant;
  f.constant_ = c;
  f.label_ = is_inf(c) ? "constant:c=inf" : "constant";
  return f;
}

ScalarField ScalarField::radial(Profile profile, std::string label, Vec center,
                                double domain_radius) {
  ScalarField f;
  f.kind_ = Kind::radial;
  f.profile_ = std::move(profile);
  f.label_ = std::move(label);
  f.center_ = std::move(center);
  f.domain_radius_ = domain_radius;
  return f;
}

ScalarField ScalarField::closed_form(std::string label, Formula formula,
                                     double domain_radius) {
  ScalarField f;
  f.kind_ = Kind::closed_form;
  f.formula_ = std::move(formula);
  f.label_ = std::move(label);
  f.domain_radius_ = domain_radius;
  return f;
}

ScalarField ScalarField::grid(GridSamples samples) {
  const int n = samples.dim();
  if (n < 2 || n > 3) throw DomainError("grid field: only n = 2, 3 supported");
  if (static_cast<int>(samples.resolution.size()) != n ||
      samples.hi.size() != n)
    throw DomainError("grid field: inconsistent box description");
  std::size_t total = 1;
  for (int a = 0; a < n; ++a) {
    if (samples.resolution[a] < 2 || !(samples.hi[a] > samples.lo[a]))
      throw DomainError("grid field: degenerate axis");
    total *= samples.resolution[a];
  }
  if (samples.values.size() != total)
    throw DomainError("grid field: value count does not match resolution");
  for (double v : samples.values)
    if (!(v >= 0.0)) throw DomainError("grid field: values must be >= 0");
  ScalarField f;
  f.kind_ = Kind::grid;
  f.label_ = "grid";
  f.grid_ = std::make_shared<const GridSamples>(std::move(samples));
  return f;
}

double ScalarField::operator()(const Vec& x) const {
  switch (kind_) {
    case Kind::constant: return constant_;
    case Kind::radial: {
      const double r = center_.size() == 0 ? x.norm() : (x - center_).norm();
      return profile_(r);
    }
    case Kind::closed_form: return formula_(x);
    case Kind::grid: return grid_->interpolate(x);
  }
  return 0.0;
}

double ScalarField::boundary_distance(const Vec& x0) const {
  if (kind_ == Kind::grid) {
    double d = kInf;
    for (int a = 0; a < grid_->dim(); ++a)
      d = std::min({d, x0[a] - grid_->lo[a], grid_->hi[a] - x0[a]});
    return d;
  }
  if (is_inf(domain_radius_)) return kInf;
  const double off = center_.size() == 0 ? x0.norm() : (x0 - center_).norm();
  return domain_radius_ - off;
}

std::optional<double> ScalarField::exact_sphere_mean(const Vec& x0,
                                                     double r) const {
  if (kind_ == Kind::constant) return constant_;
  if (kind_ == Kind::radial) {
    const bool centered = center_.size() == 0 ? x0.isZero(0.0)
                                              : (x0 - center_).isZero(0.0);
    if (centered) return profile_(r);
  }
  return std::nullopt;
}

ScalarField ScalarField::power(double s) const {
  if (kind_ == Kind::constant) return constant(ext_pow(constant_, s));
  ScalarField base = *this;
  if (kind_ == Kind::radial) {
    auto prof = profile_;
    return radial([prof, s](double r) { return ext_pow(prof(r), s); },
                  label_ + "^s", center_, domain_radius_);
  }
  return closed_form(
      label_ + "^s", [base, s](const Vec& x) { return ext_pow(base(x), s); },
      domain_radius_);
}

ScalarField ScalarField::shifted(double c) const {
  if (kind_ == Kind::constant) return constant(constant_ + c);
  ScalarField base = *this;
  if (kind_ == Kind::radial) {
    auto prof = profile_;
    return radial([prof, c](double r) { return prof(r) + c; }, label_ + "+c",
                  center_, domain_radius_);
  }
  return closed_form(
      label_ + "+c", [base, c](const Vec& x) { return base(x) + c; },
      domain_radius_);
}

namespace {

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};

double radical_inverse(std::uint64_t i, int base) {
  double inv = 1.0 / base, f = inv, out = 0.0;
  while (i > 0) {
    out += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return out;
}

// Halton points pushed through Box-Muller and normalized.
std::vector<Vec> halton_sphere(int n, int count) {
  std::vector<Vec> pts;
  pts.reserve(count);
  const int pairs = (n + 1) / 2;
  for (int i = 0; i < count; ++i) {
    Vec g(2 * pairs);
    for (int k = 0; k < pairs; ++k) {
      const double u1 = radical_inverse(i + 1, kPrimes[2 * k]);
      const double u2 = radical_inverse(i + 1, kPrimes[2 * k + 1]);
      const double rad = std::sqrt(-2.0 * std::log(u1));
      g[2 * k] = rad * std::cos(2.0 * std::numbers::pi * u2);
      g[2 * k + 1] = rad * std::sin(2.0 * std::numbers::pi * u2);
    }
    Vec v = g.head(n);
    pts.push_back(v / v.norm());
  }
  return pts;
}

const std::vector<Vec>& qmc_sphere(int n) {
  static std::map<int, std::vector<Vec>> cache;
  static std::mutex mu;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, halton_sphere(n, 1 << 14)).first;
  return it->second;
}

double mean_circle(const ScalarField& q, const Vec& x0, double r, int order) {
  const GaussRule& g = gauss_legendre(order);
  Vec x = x0;
  double acc = 0.0;
  for (int i = 0; i < order; ++i) {
    const double th = std::numbers::pi * (1.0 + g.nodes[i]);
    x[0] = x0[0] + r * std::cos(th);
    x[1] = x0[1] + r * std::sin(th);
    const double v = q(x);
    if (is_inf(v)) return kInf;
    acc += 0.5 * g.weights[i] * v;
  }
  return acc;
}

double mean_sphere3(const ScalarField& q, const Vec& x0, double r, int order) {
  const GaussRule& gu = gauss_legendre(order);
  const GaussRule& gp = gauss_legendre(2 * order);
  Vec x = x0;
  double acc = 0.0;
  for (int i = 0; i < order; ++i) {
    const double u = gu.nodes[i];
    const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
    for (int j = 0; j < 2 * order; ++j) {
      const double ph = std::numbers::pi * (1.0 + gp.nodes[j]);
      x[0] = x0[0] + r * s * std::cos(ph);
      x[1] = x0[1] + r * s * std::sin(ph);
      x[2] = x0[2] + r * u;
      const double v = q(x);
      if (is_inf(v)) return kInf;
      acc += 0.25 * gu.weights[i] * gp.weights[j] * v;
    }
  }
  return acc;
}

}  // namespace

std::vector<Vec> sphere_directions(int n, int count) {
  require_dim(n, "sphere_directions");
  if (count < 1) throw DomainError("sphere_directions: count must be >= 1");
  std::vector<Vec> dirs;
  dirs.reserve(count);
  if (n == 2) {
    for (int j = 0; j < count; ++j) {
      const double a = 2.0 * std::numbers::pi * j / count;
      Vec v(2);
      v << std::cos(a), std::sin(a);
      dirs.push_back(v);
    }
  } else if (n == 3) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int j = 0; j < count; ++j) {
      const double z = 1.0 - 2.0 * (j + 0.5) / count;
      const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
      Vec v(3);
      v << s * std::cos(golden * j), s * std::sin(golden * j), z;
      dirs.push_back(v);
    }
  } else {
    dirs = halton_sphere(n, count);
  }
  return dirs;
}

SphereMean sphere_mean(const ScalarField& q, const Vec& x0, double r) {
  const int n = static_cast<int>(x0.size());
  require_dim(n, "sphere_mean");
  if (!(r > 0.0)) throw DomainError("sphere_mean: radius must be > 0");
  if (q.boundary_distance(x0) < r)
    throw DomainError("sphere_mean: sphere leaves the field's domain");
  if (auto exact = q.exact_sphere_mean(x0, r)) return {*exact, 0.0};

  if (n <= 3) {
    auto rule = [&](int order) {
      return n == 2 ? mean_circle(q, x0, r, order)
                    : mean_sphere3(q, x0, r, order);
    };
    const int max_order = n == 2 ? 1024 : 128;
    int order = n == 2 ? 16 : 8;
    double coarse = rule(order);
    while (true) {
      if (is_inf(coarse)) return {kInf, 0.0};
      order *= 2;
      const double fine = rule(order);
      if (is_inf(fine)) return {kInf, 0.0};
      const double diff = std::abs(fine - coarse);
      if (diff <= 1e-11 * std::max(1.0, std::abs(fine)) || order >= max_order)
        return {fine, diff};
      coarse = fine;
    }
  }

  const auto& dirs = qmc_sphere(n);
  const std::size_t half = dirs.size() / 2;
  double first = 0.0, second = 0.0;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const double v = q(x0 + r * dirs[i]);
    if (is_inf(v)) return {kInf, 0.0};
    (i < half ? first : second) += v;
  }
  const double all = (first + second) / static_cast<double>(dirs.size());
  const double head = first / static_cast<double>(half);
  return {all, std::abs(all - head)};
}

std::function<double(double)> radial_mean(const ScalarField& q,
                                          const Vec& x0) {
  return [q, x0](double t) { return sphere_mean(q, x0, t).value; };
}

PsiFamily PsiFamily::loglog(int n, double p) {
  require_dim(n, "PsiFamily::loglog");
  if (!(p > 0.0)) throw DomainError("PsiFamily::loglog: need p > 0");
  PsiFamily f;
  f.kind_ = Kind::loglog;
  f.label_ = "loglog";
  const double e = -static_cast<double>(n) / p;
  f.fn_ = [e](double t) { return std::pow(t * std::log(1.0 / t), e); };
  f.lo_ = 0.0;
  f.hi_ = 1.0;
  return f;
}

PsiFamily PsiFamily::reciprocal() {
  PsiFamily f;
  f.kind_ = Kind::reciprocal;
  f.label_ = "reciprocal";
  f.fn_ = [](double t) { return 1.0 / t; };
  f.lo_ = 0.0;
  f.hi_ = kInf;
  return f;
}

PsiFamily PsiFamily::qmean(int n, double p, RadialProfile q, double lo,
                           double hi) {
  require_dim(n, "PsiFamily::qmean");
  if (!(lo >= 0.0 && lo < hi)) throw DomainError("PsiFamily::qmean: bad support");
  PsiFamily f;
  f.kind_ = Kind::qmean;
  f.label_ = "qmean";
  const double inv = 1.0 / (n - 1.0);
  const double e = static_cast<double>(n) / p;
  f.fn_ = [q = std::move(q), inv, e](double t) {
    const double denom = ext_mul(t, ext_pow(q(t), inv));
    return ext_pow(ext_div(1.0, denom), e);
  };
  f.lo_ = lo;
  f.hi_ = hi;
  return f;
}

PsiFamily PsiFamily::capacity(int n, double p, RadialProfile q, double lo,
                              double hi) {
  require_dim(n, "PsiFamily::capacity");
  if (!(p > 1.0)) throw DomainError("PsiFamily::capacity: need p > 1");
  if (!(lo >= 0.0 && lo < hi))
    throw DomainError("PsiFamily::capacity: bad support");
  PsiFamily f;
  f.kind_ = Kind::capacity;
  f.label_ = "capacity";
  const double a = (n - 1.0) / (p - 1.0);
  const double b = 1.0 / (p - 1.0);
  f.fn_ = [q = std::move(q), a, b](double t) {
    return ext_div(1.0, ext_mul(std::pow(t, a), ext_pow(q(t), b)));
  };
  f.lo_ = lo;
  f.hi_ = hi;
  return f;
}

PsiFamily PsiFamily::constant(double c, double lo, double hi) {
  if (!(c >= 0.0)) throw DomainError("PsiFamily::constant: need c >= 0");
  PsiFamily f;
  f.kind_ = Kind::constant;
  f.label_ = "constant";
  f.fn_ = [c](double) { return c; };
  f.lo_ = lo;
  f.hi_ = hi;
  return f;
}

PsiFamily PsiFamily::custom(std::vector<double> t, std::vector<double> values) {
  if (t.size() != values.size() || t.size() < 2)
    throw DomainError("PsiFamily::custom: need >= 2 paired samples");
  for (std::size_t i = 1; i < t.size(); ++i)
    if (!(t[i] > t[i - 1]))
      throw DomainError("PsiFamily::custom: abscissae must increase");
  for (double v : values)
    if (!(v >= 0.0)) throw DomainError("PsiFamily::custom: values must be >= 0");
  PsiFamily f;
  f.kind_ = Kind::custom;
  f.label_ = "custom";
  f.lo_ = t.front();
  f.hi_ = t.back();
  f.fn_ = [t = std::move(t), v = std::move(values)](double x) {
    auto it = std::upper_bound(t.begin(), t.end(), x);
    if (it == t.begin()) return v.front();
    if (it == t.end()) return v.back();
    const std::size_t i = static_cast<std::size_t>(it - t.begin());
    const double w = (x - t[i - 1]) / (t[i] - t[i - 1]);
    return (1.0 - w) * v[i - 1] + w * v[i];
  };
  return f;
}

double PsiFamily::operator()(double t) const {
  if (!(t > lo_ && t < hi_)) return 0.0;
  return ext_mul(scale_, fn_(t));
}

PsiFamily PsiFamily::scaled(double factor) const {
  if (!(factor >= 0.0)) throw DomainError("PsiFamily::scaled: need factor >= 0");
  PsiFamily f = *this;
  f.scale_ *= factor;
  return f;
}

IntegralResult ring_integral(const ScalarField& q, const PsiFamily& psi,
                             const SphericalRing& ring, double p) {
  const int n = ring.dim();
  if (!(p > 0.0)) throw DomainError("ring_integral: need p > 0");
  if (q.boundary_distance(ring.center) < ring.r2)
    throw DomainError("ring_integral: ring leaves the field's domain");
  const double omega = unit_sphere_area(n);
  auto integrand = [&](double t) {
    const double w = ext_pow(psi(t), p);
    if (w == 0.0) return 0.0;
    const double qt = sphere_mean(q, ring.center, t).value;
    return ext_mul(ext_mul(qt, w), std::pow(t, n - 1));
  };
  QuadOptions opts;
  opts.rel_tol = 1e-6;
  opts.max_panels = 4096;
  opts.geometric_lower = 8;
  QuadResult r = integrate(integrand, ring.r1, ring.r2, opts);
  return {omega * r.value, omega * r.error, r.converged};
}

PsiIntegral psi_integral(const PsiFamily& psi, double eps, double eps0) {
  if (!(eps > 0.0 && eps < eps0))
    throw DomainError("psi_integral: need 0 < eps < eps0");
  QuadOptions opts;
  opts.rel_tol = 1e-12;
  opts.abs_tol = 1e-300;
  opts.max_panels = 4096;
  opts.geometric_lower = 16;
  QuadResult r = integrate([&](double t) { return psi(t); }, eps, eps0, opts);
  PsiIntegral out;
  out.value = r.value;
  out.error = r.error;
  out.converged = r.converged;
  out.finite = std::isfinite(r.value) && r.converged;
  out.positive = r.value > 0.0;
  return out;
}

}  // namespace pmod
