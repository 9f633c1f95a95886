#include "pmod/numeric.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numbers>
#include <queue>

namespace pmod {

const GaussRule& gauss_legendre(int order) {
  if (order < 1) throw DomainError("gauss_legendre: order must be >= 1");
  static std::map<int, GaussRule> cache;
  static std::mutex mu;
  std::lock_guard lock(mu);
  if (auto it = cache.find(order); it != cache.end()) return it->second;

  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (order == 1) p0 = 1.0;
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  if (order == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = 2.0;
  }
  return cache.emplace(order, std::move(rule)).first->second;
}

namespace {

// Kronrod 15-point extension of the 7-point Gauss rule (QUADPACK qk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel kronrod15(const std::function<double(double)>& f, double a, double b,
                bool& finite) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  finite = finite && std::isfinite(fc);
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    finite = finite && std::isfinite(f1) && std::isfinite(f2);
    resk += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  return {a, b, resk * h, std::abs((resk - resg) * h)};
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a,
                     double b, const QuadOptions& opts) {
  QuadResult out;
  if (a == b) return out;
  if (!(a < b)) throw DomainError("integrate: requires a < b");

  std::vector<double> cuts;
  if (opts.geometric_lower > 0 && a > 0.0) {
    // Panels [a, a + (b-a) 2^-k] shrinking toward a.
    for (int k = opts.geometric_lower; k >= 1; --k)
      cuts.push_back(a + (b - a) * std::ldexp(1.0, -k));
  } else if (opts.geometric_lower > 0) {
    for (int k = opts.geometric_lower; k >= 1; --k)
      cuts.push_back(b * std::ldexp(1.0, -k));
  }
  std::vector<double> bounds;
  bounds.push_back(a);
  for (double c : cuts)
    if (c > bounds.back() && c < b) bounds.push_back(c);
  bounds.push_back(b);

  bool finite = true;
  std::priority_queue<Panel> heap;
  double total = 0.0, err = 0.0;
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    Panel p = kronrod15(f, bounds[i], bounds[i + 1], finite);
    total += p.value;
    err += p.error;
    heap.push(p);
  }
  int panels = static_cast<int>(heap.size());
  while (finite) {
    const double target = std::max(opts.abs_tol, opts.rel_tol * std::abs(total));
    if (err <= target) break;
    if (panels >= opts.max_panels) {
      out.converged = false;
      break;
    }
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      out.converged = false;
      break;
    }
    Panel left = kronrod15(f, worst.a, mid, finite);
    Panel right = kronrod15(f, mid, worst.b, finite);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++panels;
  }
  if (!finite) {
    out.value = kInf;
    out.error = kInf;
    out.converged = false;
    out.panels = panels;
    return out;
  }
  // Recompute the sum to shed accumulated update error.
  double sum = 0.0, esum = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    esum += heap.top().error;
    heap.pop();
  }
  out.value = sum;
  out.error = esum;
  out.panels = panels;
  return out;
}

double ls_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw DomainError("ls_slope: need at least two paired samples");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw DomainError("ls_slope: abscissae are all equal");
  return sxy / sxx;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::satisfied: return "satisfied";
    case Verdict::violated: return "violated";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::vector<double> geometric_grid(double eps0, int count) {
  std::vector<double> g;
  g.reserve(count);
  for (int k = 1; k <= count; ++k) g.push_back(eps0 * std::ldexp(1.0, -k));
  return g;
}

}  // namespace pmod
