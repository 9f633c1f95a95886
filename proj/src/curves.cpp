#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <random>

#include "pmod/modsolver.hpp"

namespace pmod {

namespace {

class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : eng_(seed) {}
  double next() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double symmetric() { return 2.0 * next() - 1.0; }
  double gaussian() {
    const double u1 = std::max(next(), 0x1.0p-60);
    const double u2 = next();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

 private:
  std::mt19937_64 eng_;
};

// Unit vector orthogonal to u drawn from the stream.
Vec random_tangent(const Vec& u, UniformStream& rng) {
  for (;;) {
    Vec t(u.size());
    for (int i = 0; i < t.size(); ++i) t[i] = rng.gaussian();
    t -= t.dot(u) * u;
    const double nt = t.norm();
    if (nt > 1e-8) return t / nt;
  }
}

constexpr int kJoiningVertices = 17;

}  // namespace

CurveFamily sample_ring_family(const SphericalRing& ring, int k,
                               SamplingMode mode, std::uint64_t seed) {
  const int n = static_cast<int>(ring.center.size());
  require_dim(n, "sample_ring_family");
  if (!(ring.r1 > 0.0 && ring.r1 < ring.r2))
    throw DomainError("sample_ring_family: need 0 < r1 < r2");
  if (k < 1) throw DomainError("sample_ring_family: need k >= 1");
  CurveFamily fam;
  const std::vector<Vec> dirs = sphere_directions(n, k);
  if (mode == SamplingMode::radial) {
    fam.label = "radial";
    for (const Vec& u : dirs)
      fam.curves.push_back({{ring.center + ring.r1 * u, ring.center + ring.r2 * u}});
    return fam;
  }
  fam.label = "random_joining";
  UniformStream rng(seed);
  // Bounded tangential wander: the angular deviation vanishes at both ends
  // and never exceeds a quarter radian.
  const double amp = 0.25;
  for (const Vec& u : dirs) {
    const Vec tau = random_tangent(u, rng);
    const double a1 = amp * rng.symmetric();
    const double a2 = 0.5 * amp * rng.symmetric();
    Polyline c;
    for (int j = 0; j < kJoiningVertices; ++j) {
      const double s = static_cast<double>(j) / (kJoiningVertices - 1);
      const double theta = a1 * std::sin(M_PI * s) + a2 * std::sin(2.0 * M_PI * s);
      const double r = ring.r1 + (ring.r2 - ring.r1) * s;
      c.vertices.push_back(ring.center + r * (std::cos(theta) * u + std::sin(theta) * tau));
    }
    fam.curves.push_back(std::move(c));
  }
  return fam;
}

namespace {

template <class T>
void put(std::ostream& out, T v) {
  unsigned char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big)
    std::reverse(buf, buf + sizeof(T));
  out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <class T>
T get(std::istream& in) {
  unsigned char buf[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(buf), sizeof(T)))
    throw DomainError("read_density: truncated input");
  if constexpr (std::endian::native == std::endian::big)
    std::reverse(buf, buf + sizeof(T));
  T v;
  std::memcpy(&v, buf, sizeof(T));
  return v;
}

}  // namespace

void write_density(const DensityGrid& rho, std::ostream& out) {
  const int n = rho.dim();
  put<std::uint32_t>(out, static_cast<std::uint32_t>(n));
  for (int r : rho.resolution) put<std::uint32_t>(out, static_cast<std::uint32_t>(r));
  for (int a = 0; a < n; ++a) put<double>(out, rho.lo[a]);
  for (int a = 0; a < n; ++a) put<double>(out, rho.hi[a]);
  for (double v : rho.values) put<double>(out, v);
  if (!out) throw NumericError("write_density: stream failure");
}

DensityGrid read_density(std::istream& in) {
  const auto n = get<std::uint32_t>(in);
  if (n < 2 || n > 3) throw DomainError("read_density: unsupported dimension");
  GridSpec spec{Vec(n), Vec(n), std::vector<int>(n)};
  for (std::uint32_t a = 0; a < n; ++a) {
    const auto r = get<std::uint32_t>(in);
    if (r < 8 || r > 4096) throw DomainError("read_density: bad resolution");
    spec.resolution[a] = static_cast<int>(r);
  }
  for (std::uint32_t a = 0; a < n; ++a) spec.lo[a] = get<double>(in);
  for (std::uint32_t a = 0; a < n; ++a) spec.hi[a] = get<double>(in);
  DensityGrid g = DensityGrid::zeros(spec);
  for (double& v : g.values) {
    v = get<double>(in);
    if (!(v >= 0.0) || !std::isfinite(v))
      throw DomainError("read_density: density values must be finite and >= 0");
  }
  return g;
}

}  // namespace pmod
