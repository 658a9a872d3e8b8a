#include "kernel.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace wl {

cplx KernelSpec::multiplier(double r) const {
  double v = cutoff(std::ldexp(r, -j));
  if (v == 0) return 0;
  if (extra) v *= extra(r);
  return phase_on ? std::polar(v, r) : cplx(v, 0);
}

namespace {

SpectralField sample_multiplier(const KernelSpec& spec, const GridSpec& g) {
  check_guard(g, spec.cutoff.a, spec.j);
  SpectralField F{g, std::vector<cplx>(g.size())};
  for_each_point(g, g.dk(), [&](size_t k, const std::array<double, 3>& xi) { F.v[k] = spec.multiplier(norm3(xi)); });
  return F;
}

double bump_t(double t) { return t >= 1 ? 0.0 : std::exp(1 - 1 / (1 - t * t)); }

}  // namespace

WaveKernel compute_kernel(const KernelSpec& spec, const GridSpec& g, KernelMethod method,
                          const std::vector<double>& radii) {
  WaveKernel K;
  K.spec = spec;
  K.method = method;
  if (method == KernelMethod::grid_fft) {
    K.samples = from_spectral(sample_multiplier(spec, g));
  } else {
    K.radii = radii;
    K.values = radial_kernel(spec, g.dim, radii);
  }
  return K;
}

std::vector<cplx> radial_kernel(const KernelSpec& spec, int n, const std::vector<double>& radii) {
  require(n >= 1 && n <= 3, "n must be 1..3");
  double scale = std::ldexp(1.0, spec.j);
  double lo = std::floor(spec.cutoff.inner * scale), hi = std::ceil(spec.cutoff.a * scale);
  std::vector<double> gx, gw;
  gauss_legendre(16, gx, gw);
  std::vector<double> rho;
  std::vector<cplx> wm;
  for (double p = lo; p < hi; p += 1)
    for (size_t q = 0; q < gx.size(); ++q) {
      double r = p + (gx[q] + 1) / 2;
      cplx m = spec.multiplier(r);
      if (m == cplx(0)) continue;
      rho.push_back(r);
      wm.push_back(m * (gw[q] / 2));
    }
  std::vector<cplx> out(radii.size());
  parallel_for(radii.size(), [&](size_t i) {
    double x = radii[i];
    std::vector<cplx> t(rho.size());
    for (size_t q = 0; q < rho.size(); ++q) {
      double p = rho[q], k;
      if (n == 1)
        k = std::cos(p * x) / pi;
      else if (n == 2)
        k = p * boost::math::cyl_bessel_j(0, p * x) / (2 * pi);
      else
        k = x == 0 ? p * p / (2 * pi * pi) : p * std::sin(p * x) / (2 * pi * pi * x);
      t[q] = wm[q] * k;
    }
    out[i] = psum(t);
  });
  return out;
}

EnvelopeResult envelope_constant(const WaveKernel& K, double N) {
  EnvelopeResult r;
  double peak = -1;
  int j = K.spec.j;
  double sj = std::ldexp(1.0, j);
  auto upd = [&](double rad, cplx v, int n) {
    double c = std::abs(v) * std::pow(1 + sj * std::abs(1 - rad), N) * std::pow(sj, -(n + 1) / 2.0);
    if (c > r.c) r.c = c, r.argmax_radius = rad;
    if (std::abs(v) > peak) peak = std::abs(v), r.peak_radius = rad;
  };
  if (K.method == KernelMethod::grid_fft) {
    const auto& g = K.samples.grid;
    for_each_point(g, g.h(), [&](size_t k, const std::array<double, 3>& x) { upd(norm3(x), K.samples.v[k], g.dim); });
  } else {
    for (size_t i = 0; i < K.radii.size(); ++i) upd(K.radii[i], K.values[i], 2);
  }
  return r;
}

FarFieldResult far_field_and_lowfreq_check(const Cutoff& theta, const LittlewoodPaley& lp, int j,
                                           const GridSpec& g) {
  if (g.X < 8) fail(region_exceeds_box, "box too small for the far-field check (X >= 8 required)");
  int n = g.dim;
  KernelSpec hi{theta, j, true, [lp](double r) { return lp.zeta(r); }};
  KernelSpec low{theta, j, true, [lp](double r) { return lp.phi(r); }};
  auto K = compute_kernel(hi, g);
  auto L = compute_kernel(low, g);
  FarFieldResult out;
  for_each_point(g, g.h(), [&](size_t k, const std::array<double, 3>& x) {
    double r = norm3(x);
    if (r >= g.X / 2) return;
    if (r > 2) out.far = std::max(out.far, std::abs(K.samples.v[k]) * std::pow(r, n + 1));
    out.low = std::max(out.low, std::abs(L.samples.v[k]) * std::pow(1 + r, n + 1));
  });
  return out;
}

double plain_far_field(const Cutoff& theta, int j, const GridSpec& g) {
  if (g.X < 8) fail(region_exceeds_box, "box too small for the far-field check (X >= 8 required)");
  auto K = compute_kernel(KernelSpec{theta, j, false, {}}, g);
  double out = 0;
  for_each_point(g, g.h(), [&](size_t k, const std::array<double, 3>& x) {
    double r = norm3(x);
    if (r > 2 && r < g.X / 2) out = std::max(out, std::abs(K.samples.v[k]) * std::pow(r, g.dim + 1));
  });
  return out;
}

SlopeScan lp_slope_scan(const Cutoff& theta, double p, const std::vector<int>& js, bool phase_on,
                        const GridSpec& g) {
  if (g.dim == 1 && p == 1)
    fail(refused, "n = p = 1: the multiplier e^{i|xi|} is not a finite complex measure in one dimension");
  SlopeScan s;
  for (int j : js) {
    auto K = compute_kernel(KernelSpec{theta, j, phase_on, {}}, g);
    s.j.push_back(j);
    s.norms.push_back(lp_norm(K.samples, p, Region::Whole()));
  }
  s.slope = log2_slope(s.j, s.norms);
  return s;
}

double plancherel_l2(const Cutoff& theta, int j, int n) {
  std::vector<double> gx, gw;
  gauss_legendre(16, gx, gw);
  std::vector<double> t;
  double h = 1.0 / 64;
  for (double p = 0; p < theta.a; p += h)
    for (size_t q = 0; q < gx.size(); ++q) {
      double r = p + h * (gx[q] + 1) / 2, v = theta(r);
      t.push_back(gw[q] * h / 2 * v * v * std::pow(r, n - 1));
    }
  double nrm2 = sphere_area(n) * psum(t);
  return std::pow(2 * pi, -n / 2.0) * std::pow(2.0, j * n / 2.0) * std::sqrt(nrm2);
}

double plancherel_l2_lattice(const Cutoff& theta, int j, const GridSpec& g) {
  std::vector<double> t(g.size());
  for_each_point(g, g.dk(), [&](size_t k, const std::array<double, 3>& xi) {
    double v = theta(std::ldexp(norm3(xi), -j));
    t[k] = v * v;
  });
  return std::pow(2 * pi, -g.dim / 2.0) * std::sqrt(psum(t) * std::pow(g.dk(), g.dim));
}

double sphere_area(int n) { return n == 1 ? 2 : n == 2 ? 2 * pi : 4 * pi; }

SphericalNet build_spherical_net(int j, int n) {
  require(n == 2 || n == 3, "spherical net needs n in {2, 3}");
  SphericalNet net;
  net.j = j;
  net.n = n;
  double s = std::pow(2.0, -j / 2.0);
  net.separation = s;
  if (n == 2) {
    int count = int(std::floor(pi / std::asin(s / 2)));
    for (int k = 0; k < count; ++k) {
      double a = 2 * pi * k / count;
      net.points.push_back({std::cos(a), std::sin(a), 0});
    }
    return net;
  }
  // greedy maximal separated subset of a dense Fibonacci sphere
  size_t K = std::max<size_t>(20000, size_t(2000.0 / (s * s)));
  double ga = pi * (3 - std::sqrt(5.0));
  std::unordered_map<int64_t, std::vector<int>> cells;
  auto key = [&](int a, int b, int c) { return (int64_t(a + 1024) << 42) | (int64_t(b + 1024) << 21) | (c + 1024); };
  for (size_t i = 0; i < K; ++i) {
    double z = 1 - 2 * (i + 0.5) / K, rr = std::sqrt(1 - z * z), th = ga * i;
    std::array<double, 3> p{rr * std::cos(th), rr * std::sin(th), z};
    int cx = int(std::floor(p[0] / s)), cy = int(std::floor(p[1] / s)), cz = int(std::floor(p[2] / s));
    bool ok = true;
    for (int a = -1; a <= 1 && ok; ++a)
      for (int b = -1; b <= 1 && ok; ++b)
        for (int c = -1; c <= 1 && ok; ++c) {
          auto it = cells.find(key(cx + a, cy + b, cz + c));
          if (it == cells.end()) continue;
          for (int q : it->second) {
            auto& o = net.points[q];
            double d = std::hypot(p[0] - o[0], p[1] - o[1], p[2] - o[2]);
            if (d < s) {
              ok = false;
              break;
            }
          }
        }
    if (!ok) continue;
    cells[key(cx, cy, cz)].push_back(int(net.points.size()));
    net.points.push_back(p);
  }
  return net;
}

double net_min_distance(const SphericalNet& net) {
  double md = std::numeric_limits<double>::infinity();
  for (size_t a = 0; a < net.points.size(); ++a)
    for (size_t b = a + 1; b < net.points.size(); ++b) {
      auto& p = net.points[a];
      auto& q = net.points[b];
      md = std::min(md, std::hypot(p[0] - q[0], p[1] - q[1], p[2] - q[2]));
    }
  return md;
}

double net_covering_radius(const SphericalNet& net, int samples, uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> G;
  double worst = 0;
  for (int i = 0; i < samples; ++i) {
    std::array<double, 3> p{G(rng), G(rng), net.n == 3 ? G(rng) : 0.0};
    double r = norm3(p);
    for (auto& c : p) c /= r;
    double best = 1e9;
    for (auto& q : net.points) best = std::min(best, std::hypot(p[0] - q[0], p[1] - q[1], p[2] - q[2]));
    worst = std::max(worst, best);
  }
  return worst;
}

namespace {
constexpr double kAngularWidth = 1.5;  // support radius in units of 2^{-j/2}

double bump_weight(const SphericalNet& net, size_t nu, const std::array<double, 3>& d) {
  auto& q = net.points[nu];
  double dist = std::hypot(d[0] - q[0], d[1] - q[1], d[2] - q[2]);
  return bump_t(dist / (kAngularWidth * net.separation));
}
}  // namespace

double angular_cutoff(const SphericalNet& net, size_t nu, const std::array<double, 3>& dir) {
  double den = 0;
  for (size_t m = 0; m < net.points.size(); ++m) den += bump_weight(net, m, dir);
  return bump_weight(net, nu, dir) / den;
}

AngularReport angular_decompose(const Cutoff& theta, int j, const SphericalNet& net, const GridSpec& g, int L) {
  if (net.j != j || net.n != g.dim) fail(bad_argument, "net/scale mismatch");
  KernelSpec spec{theta, j, true, {}};
  auto F = sample_multiplier(spec, g);
  auto fj = from_spectral(F);
  size_t P = g.size();
  std::vector<std::array<double, 3>> dir(P);
  std::vector<double> den(P, 0);
  for_each_point(g, g.dk(), [&](size_t k, const std::array<double, 3>& xi) {
    if (F.v[k] == cplx(0)) return;
    double r = norm3(xi);
    dir[k] = {xi[0] / r, xi[1] / r, xi[2] / r};
  });
  for (size_t m = 0; m < net.points.size(); ++m)
    for (size_t k = 0; k < P; ++k)
      if (F.v[k] != cplx(0)) den[k] += bump_weight(net, m, dir[k]);

  AngularReport rep;
  rep.pieces = int(net.points.size());
  SpatialField sum = zeros(g);
  double sj = std::ldexp(1.0, j), cell = std::pow(g.dk(), g.dim);
  double amp = std::pow(sj, (g.dim + 1) / 2.0);
  std::vector<double> chisum(P, 0);
  for (size_t nu = 0; nu < net.points.size(); ++nu) {
    SpectralField Fn{g, std::vector<cplx>(P)};
    size_t count = 0;
    for (size_t k = 0; k < P; ++k) {
      if (F.v[k] == cplx(0)) continue;
      double chi = bump_weight(net, nu, dir[k]) / den[k];
      chisum[k] += chi;
      Fn.v[k] = F.v[k] * chi;
      if (std::abs(Fn.v[k]) > 1e-12) ++count;
    }
    auto f = from_spectral(Fn);
    const auto& q = net.points[nu];
    double c = 0;
    for_each_point(g, g.h(), [&](size_t k, const std::array<double, 3>& x) {
      std::array<double, 3> y{x[0] + q[0], x[1] + q[1], x[2] + q[2]};
      for (auto& c : y) c -= g.X * std::floor(c / g.X + 0.5);  // nearest periodic image
      double a1 = 1 + std::sqrt(sj) * norm3(y);
      double a2 = 1 + sj * std::abs(q[0] * y[0] + q[1] * y[1] + q[2] * y[2]);
      double ginv = std::pow(std::max(a1, a2), L);
      c = std::max(c, std::abs(f.v[k]) * ginv / amp);
      sum.v[k] += f.v[k];
    });
    rep.envelope.push_back(c);
    rep.support_measure.push_back(count * cell);
  }
  for (size_t k = 0; k < P; ++k)
    if (F.v[k] != cplx(0)) rep.partition_residual = std::max(rep.partition_residual, std::abs(chisum[k] - 1));
  std::vector<double> d(P), r(P);
  for (size_t k = 0; k < P; ++k) {
    d[k] = std::norm(sum.v[k] - fj.v[k]);
    r[k] = std::norm(fj.v[k]);
  }
  rep.reconstruction_rel_l2 = std::sqrt(psum(d) / psum(r));
  return rep;
}

}  // namespace wl
