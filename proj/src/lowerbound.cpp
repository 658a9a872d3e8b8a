#include "lowerbound.hpp"

#include <cmath>

#include "kernel.hpp"

namespace wl {

namespace {

// fn(i, k) for points p = s (i + o, k + o) with rin < |p - c| < rout
template <class F>
void annulus_points(double s, double o, double cx, double cy, double rin, double rout, F&& fn) {
  long k0 = long(std::ceil((cy - rout) / s - o)), k1 = long(std::floor((cy + rout) / s - o));
  for (long k = k0; k <= k1; ++k) {
    double y = s * (k + o) - cy;
    if (std::abs(y) >= rout) continue;
    double xo = std::sqrt(rout * rout - y * y);
    double in2 = rin * rin - y * y;
    auto run = [&](double a, double b) {
      long i0 = long(std::ceil((cx + a) / s - o)) - 1, i1 = long(std::floor((cx + b) / s - o)) + 1;
      for (long i = i0; i <= i1; ++i) {
        double x = s * (i + o) - cx;
        double r = std::hypot(x, y);
        if (r > rin && r < rout) fn(i, k);
      }
    };
    if (in2 <= 0) {
      run(-xo, xo);
    } else {
      double xi = std::sqrt(in2);
      run(-xo, -xi);
      run(xi, xo);
    }
  }
}

// angular measure of directions e with 1/2 < |rho e1 - t e| < 3/2
double theta_measure(double rho, double t) {
  double lo = std::clamp((rho * rho + t * t - 9.0 / 4) / (2 * rho * t), -1.0, 1.0);
  double hi = std::clamp((rho * rho + t * t - 1.0 / 4) / (2 * rho * t), -1.0, 1.0);
  return 2 * (std::acos(lo) - std::acos(hi));
}

// sum over mu of overlap(mu, nu) G(|c - v_mu|) / |Q| in the continuum limit
struct ShellIntegral {
  std::vector<double> tt, wt;
  const GTable* G;
  ShellIntegral(const GTable& g, double wp) : G(&g) {
    std::vector<double> x, w;
    gauss_legendre(32, x, w);
    for (size_t i = 0; i < x.size(); ++i) tt.push_back(1 + wp * x[i]), wt.push_back(wp * w[i]);
  }
  cplx operator()(double rho) const {
    cplx b = 0;
    for (size_t i = 0; i < tt.size(); ++i) b += (*G)(tt[i]) * tt[i] * theta_measure(rho, tt[i]) * wt[i];
    return b;
  }
};

struct BoxDist {
  double lo, hi;
};
// min and max distance from point q to the cube [x, x+s] x [y, y+s]
BoxDist box_dist(double x, double y, double s, double qx, double qy) {
  double dx = std::max({x - qx, 0.0, qx - x - s}), dy = std::max({y - qy, 0.0, qy - y - s});
  double fx = std::max(std::abs(x - qx), std::abs(x + s - qx)), fy = std::max(std::abs(y - qy), std::abs(y + s - qy));
  return {std::hypot(dx, dy), std::hypot(fx, fy)};
}

// intersection points of the unit circles around 0 and v, and sin of the crossing angle
struct Crossing {
  double p[2][2];
  double sin_alpha;
};
Crossing unit_crossing(double vx, double vy) {
  double L = std::hypot(vx, vy);
  double h = std::sqrt(std::max(0.0, 1 - L * L / 4));
  Crossing c;
  for (int sgn = 0; sgn < 2; ++sgn) {
    double e = sgn ? 1 : -1;
    c.p[sgn][0] = vx / 2 - e * h * vy / L;
    c.p[sgn][1] = vy / 2 + e * h * vx / L;
  }
  double px = c.p[0][0], py = c.p[0][1];
  c.sin_alpha = std::abs(px * (py - vy) - py * (px - vx));
  return c;
}

std::array<double, 2> random_lattice_point(Rng& rng, double s, double r0, double r1) {
  std::uniform_real_distribution<double> U(0, 1);
  double r = std::sqrt(r0 * r0 + (r1 * r1 - r0 * r0) * U(rng)), a = 2 * pi * U(rng);
  return {s * std::round(r * std::cos(a) / s), s * std::round(r * std::sin(a) / s)};
}

bool in_I(double x, double y) {
  double r = std::hypot(x, y);
  return r > 0.5 && r < 1.5;
}

}  // namespace

std::vector<cplx> radial_kernel_table(const Cutoff& psi, int j, const std::vector<double>& radii, bool phase_on) {
  if (psi.inner < 0.5 - 1e-12 || psi.a > 2 + 1e-12)
    fail(bad_argument, "cutoff must be supported in 1/2 <= |xi| <= 2");
  double mx = 0;
  for (int i = 0; i <= 1000; ++i) {
    double v = psi(0.5 + 1.5 * i / 1000);
    if (v < 0) fail(bad_argument, "cutoff must be nonnegative");
    mx = std::max(mx, v);
  }
  if (mx == 0) fail(bad_argument, "cutoff vanishes identically");
  return radial_kernel(KernelSpec{psi, j, phase_on, {}}, 2, radii);
}

cplx GTable::operator()(double r) const {
  double x = r / dt;
  if (x <= 0) return v.front();
  size_t i = size_t(x);
  if (i + 1 >= v.size()) return v.back();
  double f = x - double(i);
  return v[i] + f * (v[i + 1] - v[i]);
}

double GTable::c3() const {
  double sj = std::ldexp(1.0, j), c = 0;
  for (size_t i = 0; i < v.size(); ++i)
    c = std::max(c, std::abs(v[i]) * std::pow(1 + sj * std::abs(1 - dt * double(i)), 3));
  return c * std::pow(sj, -1.5);
}

GTable make_g_table(const Cutoff& psi, int j, bool phase_on, double tmax, int per_scale) {
  GTable t;
  t.j = j;
  t.dt = std::ldexp(1.0, -j) / per_scale;
  size_t n = size_t(std::ceil(tmax / t.dt));
  std::vector<double> r(n);
  for (size_t i = 0; i < n; ++i) r[i] = t.dt * double(i);
  t.v = radial_kernel_table(psi, j, r, phase_on);
  return t;
}

PlateauReport plateau_check(const Cutoff& psi, const std::vector<int>& js, const std::vector<double>& ladder) {
  require(js.size() >= 2, "plateau check needs at least two scales");
  require(!ladder.empty(), "empty delta ladder");
  PlateauReport rep;
  rep.js = js;
  rep.ladder = ladder;
  const int P = 39;
  size_t L = ladder.size(), J = js.size();
  // values[j][delta][point]
  std::vector<std::vector<std::vector<cplx>>> val(J, std::vector<std::vector<cplx>>(L));
  cplx rot = std::polar(1.0, -rep.omega);
  for (size_t a = 0; a < J; ++a) {
    int j = js[a];
    std::vector<double> radii;
    for (double d : ladder)
      for (int p = 1; p <= P; ++p) radii.push_back(1 + d * std::ldexp(1.0, -j) * (-1 + 2.0 * p / (P + 1)));
    auto g = radial_kernel_table(psi, j, radii);
    double sc = std::pow(2.0, -1.5 * j);
    for (size_t b = 0; b < L; ++b)
      for (int p = 0; p < P; ++p) val[a][b].push_back(rot * sc * g[b * P + p]);
  }
  auto c0_at = [&](size_t a, size_t b) {
    double s = 0;
    for (auto& z : val[a][b]) s += z.real();
    return s / P;
  };
  rep.deviation.assign(L, std::vector<double>(J, 0));
  for (size_t b = 0; b < L; ++b) {
    double c0 = c0_at(J - 1, b);
    rep.c0.push_back(c0);
    for (size_t a = 0; a < J; ++a)
      for (auto& z : val[a][b]) rep.deviation[b][a] = std::max(rep.deviation[b][a], std::abs(z - c0) / c0);
  }
  // ladder is traversed from the widest shell; take the first that passes everywhere
  std::vector<size_t> order(L);
  for (size_t b = 0; b < L; ++b) order[b] = b;
  std::sort(order.begin(), order.end(), [&](size_t x, size_t y) { return ladder[x] > ladder[y]; });
  for (size_t b : order) {
    bool ok = rep.c0[b] > 0;
    for (size_t a = 0; a < J && ok; ++a) ok = rep.deviation[b][a] <= 0.1;
    if (ok) {
      rep.found = true;
      rep.delta = ladder[b];
      rep.c0_chosen = rep.c0[b];
      size_t first = J - 1;
      while (first > 0 && rep.deviation[b][first - 1] <= 0.1) --first;
      rep.j0 = js[first] - 1;
      double prev = c0_at(J - 2, b);
      rep.c0_top_two_rel = std::abs(prev - rep.c0[b]) / rep.c0[b];
      break;
    }
  }
  for (size_t q = 0; q + 1 < order.size(); ++q)
    for (size_t a = 0; a < J; ++a)
      if (rep.deviation[order[q]][a] < rep.deviation[order[q + 1]][a]) rep.monotone = false;
  return rep;
}

CountingFacts counting_facts(int j, double delta, double delta_prime, int mu_samples, int nu_samples,
                             uint64_t seed, int S) {
  if (delta_prime > delta / 8 * (1 + 1e-12)) fail(bad_argument, "delta' too large: need delta' <= delta/8");
  CountingFacts cf;
  cf.j = j;
  cf.delta = delta;
  cf.delta_prime = delta_prime;
  double s = delta_prime * std::ldexp(1.0, -j), wp = delta / 2 * std::ldexp(1.0, -j), w = delta * std::ldexp(1.0, -j);
  double sj2 = std::ldexp(1.0, 2 * j);

  // card I by rows
  long K = long(std::ceil(1.5 / s)) + 1;
  double count = 0;
  for (long k = -K; k <= K; ++k) {
    double y = s * k;
    if (std::abs(y) >= 1.5) continue;
    auto cnt = [&](double r) {  // #i with |s i| < sqrt(r^2 - y^2)
      double q = r * r - y * y;
      if (q <= 0) return 0.0;
      double x = std::sqrt(q) / s;
      long m = long(std::floor(x));
      if (double(m) == x) --m;
      return 2.0 * m + 1;
    };
    double outer = cnt(1.5), inner = cnt(0.5);
    // |v| > 1/2 strictly: points with |v| == 1/2 belong to neither
    double on_inner = 0;
    double q = 0.25 - y * y;
    if (q >= 0) {
      double x = std::sqrt(q) / s;
      if (std::floor(x) == x) on_inner = x == 0 ? 1 : 2;
    }
    count += outer - inner - on_inner;
  }
  cf.card_I = count;
  cf.card_I_ratio = count * s * s / (2 * pi);

  Rng rng(derive_seed(seed, {j, 11}));
  double f = s / S;
  // |E_mu| for interior mu
  int in_window = 0, in_raw = 0;
  for (int q = 0; q < mu_samples; ++q) {
    auto v = random_lattice_point(rng, s, 0.75, 1.25);
    auto cr = unit_crossing(v[0], v[1]);
    double hb = 2 * wp / std::sin(std::asin(std::min(1.0, cr.sin_alpha)) / 2) + s;
    long n = 0;
    for (int side = 0; side < 2; ++side) {
      long i0 = long(std::floor((cr.p[side][0] - hb) / f)), i1 = long(std::ceil((cr.p[side][0] + hb) / f));
      long k0 = long(std::floor((cr.p[side][1] - hb) / f)), k1 = long(std::ceil((cr.p[side][1] + hb) / f));
      for (long i = i0; i <= i1; ++i)
        for (long k = k0; k <= k1; ++k) {
          double x = f * (i + 0.5), y = f * (k + 0.5);
          if (std::abs(std::hypot(x, y) - 1) < wp && std::abs(std::hypot(x - v[0], y - v[1]) - 1) < wp) ++n;
        }
    }
    double E = double(n) * f * f * sj2;
    cf.E_scaled.push_back(E);
    double e2 = E / (delta * delta);
    if (e2 >= 0.125 && e2 <= 8) ++in_window;
    if (E >= 0.125 && E <= 8) ++in_raw;
  }
  cf.E_fraction_in_window = mu_samples ? double(in_window) / mu_samples : 0;
  cf.E_fraction_raw = mu_samples ? double(in_raw) / mu_samples : 0;

  // per-nu count of overlapping mu, for cubes inside V'
  std::uniform_real_distribution<double> U(0, 1);
  double total = 0;
  for (int q = 0; q < nu_samples; ++q) {
    double x0, y0;
    BoxDist bd;
    do {
      double a = 2 * pi * U(rng);
      x0 = s * std::floor(std::cos(a) / s);
      y0 = s * std::floor(std::sin(a) / s);
      bd = box_dist(x0, y0, s, 0, 0);
    } while (!(bd.lo > 1 - wp && bd.hi < 1 + wp));
    double cx = x0 + s / 2, cy = y0 + s / 2;
    long cnt = 0;
    annulus_points(s, 0, cx, cy, 1 - wp - s, 1 + wp + s, [&](long i, long k) {
      double vx = s * i, vy = s * k;
      if (!in_I(vx, vy)) return;
      int hits = 0;
      for (int a = 0; a < S; ++a)
        for (int b = 0; b < S; ++b)
          if (std::abs(std::hypot(x0 + f * (a + 0.5) - vx, y0 + f * (b + 0.5) - vy) - 1) < wp) ++hits;
      if (hits) ++cnt;
      cf.overlap_max_over_cell = std::max(cf.overlap_max_over_cell, double(hits) / (S * S));
    });
    total += double(cnt);
  }
  cf.overlap_count = nu_samples ? total / nu_samples : 0;

  // per-lambda count of admissible nu
  total = 0;
  for (int q = 0; q < nu_samples; ++q) {
    auto v = random_lattice_point(rng, s, 0.75, 1.25);
    auto cr = unit_crossing(v[0], v[1]);
    double hb = 2 * w / std::sin(std::asin(std::min(1.0, cr.sin_alpha)) / 2) + 2 * s;
    long cnt = 0;
    for (int side = 0; side < 2; ++side) {
      long i0 = long(std::floor((cr.p[side][0] - hb) / s)), i1 = long(std::ceil((cr.p[side][0] + hb) / s));
      long k0 = long(std::floor((cr.p[side][1] - hb) / s)), k1 = long(std::ceil((cr.p[side][1] + hb) / s));
      for (long i = i0; i <= i1; ++i)
        for (long k = k0; k <= k1; ++k) {
          double x = s * i, y = s * k;
          auto a = box_dist(x, y, s, 0, 0);
          if (!(a.lo > 1 - wp && a.hi < 1 + wp)) continue;
          auto b = box_dist(x, y, s, v[0], v[1]);
          if (b.lo > 1 - w && b.hi < 1 + w) ++cnt;
        }
    }
    total += double(cnt);
  }
  cf.admissible_count = nu_samples ? total / nu_samples : 0;
  return cf;
}

LhsResult evaluate_lhs(const Cutoff& psi, int j, const LhsOptions& opt) {
  if (opt.delta_prime > opt.delta / 8 * (1 + 1e-12)) fail(bad_argument, "delta' too large: need delta' <= delta/8");
  LhsResult res;
  res.j = j;
  double sj = std::ldexp(1.0, j);
  double s = opt.delta_prime / sj, wp = opt.delta / 2 / sj;
  GTable G = make_g_table(psi, j, opt.phase, 3.2, opt.table_per_scale);
  res.c3 = G.c3();
  ShellIntegral B(G, wp);

  std::vector<double> xr, wr;
  gauss_legendre(opt.nrc, xr, wr);
  std::vector<double> rc(opt.nrc), wrc(opt.nrc), A2(opt.nrc);
  for (int a = 0; a < opt.nrc; ++a) {
    rc[a] = 1 + wp * xr[a];
    wrc[a] = wp * wr[a];
    A2[a] = opt.zero_overlaps ? 0.0 : std::norm(sj * sj * G(rc[a]) * B(rc[a]));
  }
  // G(rho) B(rho) on a fine table for the tensor rule
  const int NT = 1024;
  double t0 = 1 - wp - s, t1 = 1 + wp + s;
  std::vector<cplx> GB(NT + 1);
  if (opt.tensor)
    for (int i = 0; i <= NT; ++i) {
      double r = t0 + (t1 - t0) * i / NT;
      GB[i] = opt.zero_overlaps ? cplx(0) : G(r) * B(r);
    }
  auto gb = [&](double r) {
    double x = (r - t0) / (t1 - t0) * NT;
    int i = std::clamp(int(x), 0, NT - 1);
    double f = x - i;
    return GB[i] + f * (GB[i + 1] - GB[i]);
  };
  double go = s / (2 * std::sqrt(3.0));
  const double off[4][2] = {{-go, -go}, {-go, go}, {go, -go}, {go, go}};

  int nphi = int(2 * pi * sj * opt.nphi_per);
  std::vector<double> cs(nphi), sn(nphi);
  for (int p = 0; p < nphi; ++p) {
    double ph = (p + 0.5) * 2 * pi / nphi;
    cs[p] = std::cos(ph);
    sn[p] = std::sin(ph);
  }
  std::vector<double> xq, wq;
  gauss_legendre(opt.nr, xq, wq);
  std::vector<double> Si(opt.nr), St(opt.nr);
  double c3sq = res.c3 * res.c3 * sj * sj * sj, dphi = 2 * pi / nphi;
  parallel_for(size_t(opt.nr), [&](size_t i) {
    double rho = 1 + 0.5 * xq[i];
    std::vector<double> in(nphi), tail(nphi);
    double si = 0, st = 0;
    for (int a = 0; a < opt.nrc; ++a) {
      for (int p = 0; p < nphi; ++p) {
        double dl = std::sqrt(rc[a] * rc[a] + rho * rho - 2 * rc[a] * rho * cs[p]);
        double dd = std::abs(dl - 1) * sj;
        in[p] = tail[p] = 0;
        if (dd < opt.T) {
          if (opt.tensor) {
            cplx u = 0;
            double cx = rc[a] * cs[p], cy = rc[a] * sn[p];
            for (auto& o : off) {
              double x = cx + o[0], y = cy + o[1];
              u += gb(std::hypot(x, y)) * G(std::hypot(x - rho, y));
            }
            in[p] = std::norm(u * sj * sj / 4.0);
          } else {
            in[p] = A2[a] * std::norm(G(dl));
          }
        } else {
          tail[p] = A2[a] * c3sq * std::pow(1 + dd, -6);
        }
      }
      si += wrc[a] * rc[a] * psum(in) * dphi;
      st += wrc[a] * rc[a] * psum(tail) * dphi;
    }
    Si[i] = si;
    St[i] = st;
  });
  std::vector<double> lo(opt.nr), up(opt.nr);
  for (int i = 0; i < opt.nr; ++i) {
    double rho = 1 + 0.5 * xq[i];
    lo[i] = std::sqrt(Si[i]) * rho * 0.5 * wq[i];
    up[i] = std::sqrt(Si[i] + St[i]) * rho * 0.5 * wq[i];
  }
  double L = 2 * pi * psum(lo) / s, U = 2 * pi * psum(up) / s;
  res.lhs = L;
  res.tail_bound = L > 0 ? (U - L) / L : 0;
  if (res.tail_bound > opt.tail_cap)
    fail(refused, "tail bound " + fmt17(res.tail_bound) + " exceeds the cap; increase T");
  return res;
}

LhsResult evaluate_lhs_exact(const Cutoff& psi, int j, const LhsOptions& opt, int S, bool quarter_turn) {
  LhsResult res;
  res.j = j;
  double sj = std::ldexp(1.0, j);
  double s = opt.delta_prime / sj, wp = opt.delta / 2 / sj;
  GTable G = make_g_table(psi, j, opt.phase, 3.2, opt.table_per_scale);
  res.c3 = G.c3();
  auto rot = [&](double& x, double& y) {
    if (!quarter_turn) return;
    double t = x;
    x = -y;
    y = t;
  };
  std::vector<std::array<double, 2>> lam;
  annulus_points(s, 0, 0, 0, 0.5, 1.5, [&](long i, long k) { lam.push_back({s * i, s * k}); });
  struct Nu {
    double cx, cy;
    cplx A;
  };
  std::vector<Nu> nus;
  double f = s / S;
  annulus_points(s, 0.5, 0, 0, 1 - wp - s, 1 + wp + s, [&](long i, long k) {
    double x0 = s * i, y0 = s * k;
    if (!in_I(x0, y0)) return;
    nus.push_back({x0 + s / 2, y0 + s / 2, 0});
  });
  parallel_for(nus.size(), [&](size_t q) {
    auto& nu = nus[q];
    double x0 = nu.cx - s / 2, y0 = nu.cy - s / 2;
    std::vector<std::array<double, 2>> pts;
    for (int a = 0; a < S; ++a)
      for (int b = 0; b < S; ++b) {
        double px = x0 + f * (a + 0.5), py = y0 + f * (b + 0.5);
        if (std::abs(std::hypot(px, py) - 1) < wp) pts.push_back({px, py});
      }
    if (pts.empty() || opt.zero_overlaps) return;
    cplx Bsum = 0;
    annulus_points(s, 0, nu.cx, nu.cy, 1 - wp - s, 1 + wp + s, [&](long i, long k) {
      double vx = s * i, vy = s * k;
      if (!in_I(vx, vy)) return;
      int hits = 0;
      for (auto& p : pts)
        if (std::abs(std::hypot(p[0] - vx, p[1] - vy) - 1) < wp) ++hits;
      if (hits) Bsum += double(hits) * f * f * G(std::hypot(nu.cx - vx, nu.cy - vy));
    });
    nu.A = sj * sj * s * s * G(std::hypot(nu.cx, nu.cy)) * Bsum;
  });
  if (quarter_turn) {
    for (auto& l : lam) rot(l[0], l[1]);
    for (auto& n : nus) rot(n.cx, n.cy);
    std::reverse(lam.begin(), lam.end());
    std::reverse(nus.begin(), nus.end());
  }
  std::vector<double> per(lam.size());
  parallel_for(lam.size(), [&](size_t l) {
    std::vector<double> t(nus.size(), 0.0);
    for (size_t q = 0; q < nus.size(); ++q) {
      double dl = std::hypot(nus[q].cx - lam[l][0], nus[q].cy - lam[l][1]);
      if (std::abs(dl - 1) * sj < opt.T) t[q] = std::norm(nus[q].A) * std::norm(G(dl));
    }
    per[l] = std::sqrt(psum(t));
  });
  res.lhs = psum(per);
  return res;
}

GrowthFit growth_slope_and_m_bound(const std::vector<int>& js, const std::vector<double>& lhs, int n) {
  if (js.size() < 4 || js.size() != lhs.size()) fail(bad_argument, "growth fit needs at least 4 scales");
  std::vector<double> x(js.begin(), js.end());
  GrowthFit g;
  g.slope = log2_slope(x, lhs);
  g.m_bound = 2 * n - g.slope;
  g.target = 2.5 * n + 0.5;
  return g;
}

KhintchineReport khintchine_mc_check(const Cutoff& psi, int j, const LhsOptions& opt, int trials, uint64_t seed,
                                     int lambdas, bool single_nu) {
  if (trials < 64) fail(bad_argument, "Khintchine check needs at least 64 trials");
  KhintchineReport rep;
  rep.j = j;
  rep.trials = trials;
  double sj = std::ldexp(1.0, j);
  double s = opt.delta_prime / sj, wp = opt.delta / 2 / sj;
  GTable G = make_g_table(psi, j, opt.phase, 3.2, opt.table_per_scale);
  ShellIntegral B(G, wp);
  struct Nu {
    double cx, cy;
    cplx A;
  };
  std::vector<Nu> nus;
  annulus_points(s, 0.5, 0, 0, 1 - wp, 1 + wp, [&](long i, long k) {
    double cx = s * (i + 0.5), cy = s * (k + 0.5), r = std::hypot(cx, cy);
    nus.push_back({cx, cy, sj * sj * s * s * G(r) * B(r)});
  });
  Rng rng(derive_seed(seed, {j, 21}));
  auto mc = [&](const std::vector<cplx>& u, int T, int64_t tag, double& mean, double& se) {
    std::vector<double> m(T);
    for (int t = 0; t < T; ++t) {
      Rng r(derive_seed(seed, {tag, t}));
      std::vector<cplx> terms(u.size());
      uint64_t bits = 0;
      for (size_t q = 0; q < u.size(); ++q) {
        if (q % 64 == 0) bits = r();
        terms[q] = (bits >> (q % 64)) & 1 ? u[q] : -u[q];
      }
      m[t] = std::abs(psum(terms));
    }
    mean = psum(m) / T;
    std::vector<double> d(T);
    for (int t = 0; t < T; ++t) d[t] = (m[t] - mean) * (m[t] - mean);
    se = std::sqrt(psum(d) / (T - 1) / T);
  };
  for (int l = 0; l < lambdas; ++l) {
    auto v = random_lattice_point(rng, s, 0.5, 1.5);
    std::vector<cplx> u;
    for (auto& nu : nus) {
      double dl = std::hypot(nu.cx - v[0], nu.cy - v[1]);
      if (std::abs(dl - 1) * sj < opt.T) u.push_back(nu.A * G(dl));
    }
    if (single_nu && !u.empty()) {
      size_t best = 0;
      for (size_t q = 1; q < u.size(); ++q)
        if (std::abs(u[q]) > std::abs(u[best])) best = q;
      u = {u[best]};
    }
    if (u.empty()) continue;
    std::vector<double> sq(u.size());
    for (size_t q = 0; q < u.size(); ++q) sq[q] = std::norm(u[q]);
    double norm = single_nu ? std::abs(u[0]) : std::sqrt(psum(sq));
    double mean, se, mean4, se4;
    mc(u, trials, 2 * l, mean, se);
    mc(u, 4 * trials, 2 * l + 1, mean4, se4);
    rep.ratio_per_lambda.push_back(mean / norm);
    rep.se_per_lambda.push_back(se / norm);
    rep.se_quadrupled.push_back(se4 / norm);
  }
  if (!rep.ratio_per_lambda.empty())
    rep.ratio = psum(rep.ratio_per_lambda) / double(rep.ratio_per_lambda.size());
  return rep;
}

}  // namespace wl
