#include "symbol.hpp"

#include <cmath>
#include <ostream>

#include "grid.hpp"

namespace wl {

namespace {

double sq(const double* x, int n) {
  double s = 0;
  for (int d = 0; d < n; ++d) s += x[d] * x[d];
  return s;
}

// all integer vectors with entries in [-A, A], lexicographic
std::vector<std::array<int, 3>> lattice(int n, int A) {
  std::vector<std::array<int, 3>> out;
  int side = 2 * A + 1;
  size_t total = 1;
  for (int d = 0; d < n; ++d) total *= side;
  out.reserve(total);
  for (size_t k = 0; k < total; ++k) {
    std::array<int, 3> a{0, 0, 0};
    size_t r = k;
    for (int d = n - 1; d >= 0; --d) {
      a[d] = int(r % side) - A;
      r /= side;
    }
    out.push_back(a);
  }
  return out;
}

double enorm(const std::array<int, 3>& a, int n) {
  double s = 0;
  for (int d = 0; d < n; ++d) s += double(a[d]) * a[d];
  return std::sqrt(s);
}

}  // namespace

BilinearSymbol make_symbol(SymbolKind kind, double m, uint64_t seed) {
  BilinearSymbol s;
  s.m = m;
  switch (kind) {
    case SymbolKind::constant:
      s.m = 0;
      s.label = "constant";
      s.eval = [](const double*, const double*, int) { return cplx(1, 0); };
      break;
    case SymbolKind::sjo:
      s.label = "sjo(" + fmt17(m) + ")";
      s.eval = [m](const double* x, const double* y, int n) {
        return cplx(std::pow(1 + sq(x, n) + sq(y, n), m / 2), 0);
      };
      break;
    case SymbolKind::homogeneous_cut: {
      s.label = "homogeneous_cut(" + fmt17(m) + ")";
      LittlewoodPaley lp(1);
      s.eval = [m, lp](const double* x, const double* y, int n) {
        double r2 = sq(x, n) + sq(y, n);
        if (r2 == 0) return cplx(0, 0);
        return cplx(lp.zeta(std::sqrt(r2)) * std::pow(r2, m / 2), 0);
      };
      break;
    }
    case SymbolKind::random_smooth: {
      s.label = "random_smooth(" + fmt17(m) + "," + std::to_string(seed) + ")";
      Rng rng(derive_seed(seed, {17}));
      std::uniform_real_distribution<double> U(-3, 3), P(0, 2 * pi), W(0, 1);
      const int K = 6;
      std::vector<std::array<double, 6>> w(K);
      std::vector<double> amp(K), ph(K);
      double tot = 0;
      for (int k = 0; k < K; ++k) {
        for (auto& c : w[k]) c = U(rng);
        amp[k] = W(rng);
        ph[k] = P(rng);
        tot += amp[k];
      }
      for (auto& a : amp) a /= 2 * tot;
      s.eval = [m, w, amp, ph](const double* x, const double* y, int n) {
        double r2 = 1 + sq(x, n) + sq(y, n), br = std::sqrt(r2);
        double p = 1;
        for (size_t k = 0; k < w.size(); ++k) {
          double t = ph[k];
          for (int d = 0; d < n; ++d) t += w[k][d] * x[d] / br + w[k][3 + d] * y[d] / br;
          p += amp[k] * std::cos(t);
        }
        return cplx(std::pow(r2, m / 2) * p, 0);
      };
      break;
    }
  }
  return s;
}

BilinearSymbol make_symbol(const std::string& kind, double m, uint64_t seed) {
  if (kind == "constant") return make_symbol(SymbolKind::constant, m, seed);
  if (kind == "sjo") return make_symbol(SymbolKind::sjo, m, seed);
  if (kind == "homogeneous_cut") return make_symbol(SymbolKind::homogeneous_cut, m, seed);
  if (kind == "random_smooth") return make_symbol(SymbolKind::random_smooth, m, seed);
  fail(bad_argument, "unknown symbol kind: " + kind);
}

double SeminormTable::max_at_order(int k) const {
  double mx = 0;
  for (size_t i = 0; i < alpha.size(); ++i) {
    int o = 0;
    for (int v : alpha[i]) o += v;
    if (o == k) mx = std::max(mx, C[i]);
  }
  return mx;
}

SeminormTable seminorm_estimate(const BilinearSymbol& s, int n, int max_order, double max_radius) {
  require(n >= 1 && n <= 3, "n must be 1..3");
  require(max_order >= 0 && max_order <= 4, "max_order must be in 0..4");
  int D = 2 * n;
  SeminormTable t;
  t.dim = D;
  // multi-indices by increasing order
  for (int o = 0; o <= max_order; ++o) {
    std::vector<int> al(D, 0);
    std::function<void(int, int)> rec = [&](int d, int left) {
      if (d == D - 1) {
        al[d] = left;
        t.alpha.push_back(al);
        return;
      }
      for (int v = left; v >= 0; --v) {
        al[d] = v;
        rec(d + 1, left - v);
      }
    };
    rec(0, o);
  }
  t.C.assign(t.alpha.size(), 0);
  std::vector<double> inner(t.alpha.size(), 0), outer(t.alpha.size(), 0);

  // directions: axes, main diagonal, and fixed pseudo-random ones
  std::vector<std::vector<double>> dirs;
  for (int d = 0; d < D; ++d) {
    std::vector<double> e(D, 0);
    e[d] = 1;
    dirs.push_back(e);
  }
  dirs.push_back(std::vector<double>(D, 1 / std::sqrt(double(D))));
  Rng rng(12345);
  std::normal_distribution<double> G;
  for (int k = 0; k < 6; ++k) {
    std::vector<double> e(D);
    double nn = 0;
    for (auto& c : e) c = G(rng), nn += c * c;
    for (auto& c : e) c /= std::sqrt(nn);
    dirs.push_back(e);
  }
  std::vector<double> radii{0};
  for (double r = 0.25; r <= max_radius * (1 + 1e-12); r *= std::sqrt(2.0)) radii.push_back(r);

  std::vector<double> z(D), zz(D);
  for (double r : radii) {
    double h = 0.02 * (1 + r);
    for (auto& e : dirs) {
      for (int d = 0; d < D; ++d) z[d] = r * e[d];
      for (size_t ia = 0; ia < t.alpha.size(); ++ia) {
        const auto& al = t.alpha[ia];
        // tensor central difference
        std::vector<int> idx(D, 0);
        double acc = 0;
        std::function<void(int, double)> rec = [&](int d, double w) {
          if (d == D) {
            cplx v = s(zz.data(), zz.data() + n, n);
            acc += w * v.real();
            return;
          }
          int k = al[d];
          double binom = 1;
          for (int l = 0; l <= k; ++l) {
            zz[d] = z[d] + (k / 2.0 - l) * h;
            rec(d + 1, w * ((l % 2) ? -binom : binom));
            binom = binom * (k - l) / (l + 1);
          }
        };
        rec(0, 1);
        int o = 0;
        for (int v : al) o += v;
        double val = std::abs(acc) / std::pow(h, o) * std::pow(1 + r, o - s.m);
        t.C[ia] = std::max(t.C[ia], val);
        if (r > max_radius / 2)
          outer[ia] = std::max(outer[ia], val);
        else
          inner[ia] = std::max(inner[ia], val);
      }
    }
  }
  for (size_t ia = 0; ia < t.alpha.size(); ++ia) {
    if (outer[ia] > 4 * inner[ia] && outer[ia] > 1e-6) {
      int o = 0;
      for (int v : t.alpha[ia]) o += v;
      t.violation = "order violated at |alpha| = " + std::to_string(o);
      break;
    }
  }
  return t;
}

double CMWindow::psi_w(double r) const {
  ClosedStep st{step_sigma};
  return st((r - psi_inner) / (0.5 - psi_inner)) * (1 - st((r - 2) / (outer - 2)));
}

double CMWindow::phi_w(double r) const {
  ClosedStep st{step_sigma};
  return 1 - st((r - 2) / (outer - 2));
}

std::vector<CMBlock> cm_blocks(int j_max) {
  std::vector<CMBlock> out;
  for (int j = 3; j <= j_max; ++j)
    out.push_back({CMRegion::I, 0, j, std::ldexp(1.0, -j), std::ldexp(1.0, -j + 3), false, true});
  for (int j = 3; j <= j_max; ++j)
    out.push_back({CMRegion::II, 0, j, std::ldexp(1.0, -j + 3), std::ldexp(1.0, -j), true, false});
  for (int ell = -2; ell <= 2; ++ell)
    for (int j = std::max(0, ell); j <= j_max; ++j)
      out.push_back({CMRegion::III, ell, j, std::ldexp(1.0, -j), std::ldexp(1.0, -j + ell), j == 0,
                     j - ell == 0});
  return out;
}

double ProductSymbolExpansion::mask1(const CMBlock& b, double r) const {
  return b.ball1 ? lp.phi(r * b.s1) : lp.psi(r * b.s1);
}
double ProductSymbolExpansion::mask2(const CMBlock& b, double r) const {
  return b.ball2 ? lp.phi(r * b.s2) : lp.psi(r * b.s2);
}

cplx ProductSymbolExpansion::eval(const double* xi, const double* eta) const {
  double rx = std::sqrt(sq(xi, n)), ry = std::sqrt(sq(eta, n));
  cplx total = 0;
  int side = 2 * A + 1;
  std::vector<cplx> ea(n * side), eb(n * side);
  for (size_t bi = 0; bi < blocks.size(); ++bi) {
    const auto& b = blocks[bi];
    double w = mask1(b, rx) * mask2(b, ry);
    if (w == 0) continue;
    for (int d = 0; d < n; ++d)
      for (int k = -A; k <= A; ++k) {
        ea[d * side + k + A] = std::polar(1.0, k * b.s1 * xi[d]);
        eb[d * side + k + A] = std::polar(1.0, k * b.s2 * eta[d]);
      }
    cplx acc = 0;
    for (size_t t = block_start[bi]; t < block_start[bi + 1]; ++t) {
      const auto& e = terms[t];
      cplx ph = 1;
      for (int d = 0; d < n; ++d) ph *= ea[d * side + e.a[d] + A] * eb[d * side + e.b[d] + A];
      acc += e.c * ph;
    }
    total += acc * w;
  }
  return total;
}

std::vector<cplx> cm_block_coefficients(const BilinearSymbol& s, const CMBlock& blk, int n, int A, int M,
                                        const CMWindow& w) {
  require(n >= 1 && n <= 2, "coefficient expansion supports n = 1, 2");
  if (M < 8 * A)
    fail(guard_violation, "period box under-resolved: " + std::to_string(M) + " samples per axis < 8A = " +
                              std::to_string(8 * A));
  int D = 2 * n;
  size_t Mn = 1;
  for (int d = 0; d < n; ++d) Mn *= M;
  // half-grids: u (and v) sampled at 2 pi k / M, signed, FFT order
  std::vector<std::array<double, 3>> pts(Mn);
  std::vector<double> w1(Mn), w2(Mn);
  for (size_t k = 0; k < Mn; ++k) {
    size_t r = k;
    std::array<double, 3> u{0, 0, 0};
    for (int d = n - 1; d >= 0; --d) {
      u[d] = 2 * pi * signed_index(int(r % M), M) / M;
      r /= M;
    }
    pts[k] = u;
    double ru = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
    w1[k] = blk.ball1 ? w.phi_w(ru) : w.psi_w(ru);
    w2[k] = blk.ball2 ? w.phi_w(ru) : w.psi_w(ru);
  }
  std::vector<cplx> F(Mn * Mn, 0);
  double norm = 1 / std::pow(double(M), D);
  parallel_for(Mn, [&](size_t ku) {
    if (w1[ku] == 0) return;
    double xi[3], eta[3];
    for (int d = 0; d < n; ++d) xi[d] = pts[ku][d] / blk.s1;
    for (size_t kv = 0; kv < Mn; ++kv) {
      if (w2[kv] == 0) continue;
      for (int d = 0; d < n; ++d) eta[d] = pts[kv][d] / blk.s2;
      F[ku * Mn + kv] = s(xi, eta, n) * (w1[ku] * w2[kv] * norm);
    }
  });
  std::vector<int> dims(D, M);
  fft_rank(D, dims.data(), F.data(), -1);
  auto lat = lattice(n, A);
  std::vector<cplx> out;
  out.reserve(lat.size() * lat.size());
  auto flat = [&](const std::array<int, 3>& a) {
    size_t k = 0;
    for (int d = 0; d < n; ++d) k = k * M + size_t((a[d] + M) % M);
    return k;
  };
  for (auto& a : lat)
    for (auto& b : lat) out.push_back(F[flat(a) * Mn + flat(b)]);
  return out;
}

ProductSymbolExpansion cm_decompose(const BilinearSymbol& s, const LittlewoodPaley& lp, int n,
                                    const CMOptions& opt, const CMWindow& w) {
  require(opt.A >= 1, "A must be >= 1");
  require(opt.j_max >= 3, "j_max must be >= 3");
  ProductSymbolExpansion e;
  e.n = n;
  e.j_max = opt.j_max;
  e.A = opt.A;
  e.M = opt.samples_per_axis ? opt.samples_per_axis : 8 * opt.A;
  e.window = w;
  e.lp = lp;
  e.L_report = opt.L_report;
  for (auto& b : cm_blocks(opt.j_max)) {
    if (opt.only_region_I && b.region != CMRegion::I) continue;
    if (b.j < opt.j_min) continue;
    e.blocks.push_back(b);
  }
  std::vector<std::vector<cplx>> coef(e.blocks.size());
  parallel_for(e.blocks.size(), [&](size_t i) {
    coef[i] = cm_block_coefficients(s, e.blocks[i], n, e.A, e.M, w);
  });
  auto lat = lattice(n, e.A);
  for (size_t i = 0; i < e.blocks.size(); ++i) {
    e.block_start.push_back(e.terms.size());
    const auto& b = e.blocks[i];
    size_t k = 0;
    for (auto& a : lat)
      for (auto& bb : lat) {
        ExpansionTerm t{b.region, b.ell, b.j, a, bb, coef[i][k++]};
        double bound = std::abs(t.c) * std::pow(2.0, -b.j * s.m) * std::pow(1 + enorm(a, n), e.L_report) *
                       std::pow(1 + enorm(bb, n), e.L_report);
        e.decay_C = std::max(e.decay_C, bound);
        e.terms.push_back(t);
      }
  }
  e.block_start.push_back(e.terms.size());
  return e;
}

double AxisCoefficients::tail_constant(double L) const {
  double mx = 0;
  for (size_t i = 0; i < c.size(); ++i) mx = std::max(mx, std::abs(c[i]) * std::pow(1 + enorm(a[i], n), L));
  return mx;
}

AxisCoefficients cm_axis_coefficients(const BilinearSymbol& s, int j, int n, int A, const CMWindow& w, int Mv) {
  require(n >= 1 && n <= 2, "coefficient expansion supports n = 1, 2");
  int M = 8 * A;
  double s1 = std::ldexp(1.0, -j), s2 = std::ldexp(1.0, -j + 3);
  auto grid = [&](int m, std::vector<std::array<double, 3>>& p) {
    size_t tot = 1;
    for (int d = 0; d < n; ++d) tot *= m;
    p.resize(tot);
    for (size_t k = 0; k < tot; ++k) {
      size_t r = k;
      std::array<double, 3> u{0, 0, 0};
      for (int d = n - 1; d >= 0; --d) {
        u[d] = 2 * pi * signed_index(int(r % m), m) / m;
        r /= m;
      }
      p[k] = u;
    }
  };
  std::vector<std::array<double, 3>> up, vp;
  grid(M, up);
  grid(Mv, vp);
  std::vector<double> wv(vp.size());
  for (size_t k = 0; k < vp.size(); ++k)
    wv[k] = w.phi_w(std::sqrt(vp[k][0] * vp[k][0] + vp[k][1] * vp[k][1])) / double(vp.size());
  std::vector<cplx> F(up.size(), 0);
  parallel_for(up.size(), [&](size_t ku) {
    double ru = std::sqrt(up[ku][0] * up[ku][0] + up[ku][1] * up[ku][1]);
    double w1 = w.psi_w(ru);
    if (w1 == 0) return;
    double xi[3], eta[3];
    for (int d = 0; d < n; ++d) xi[d] = up[ku][d] / s1;
    std::vector<cplx> terms;
    terms.reserve(vp.size());
    for (size_t kv = 0; kv < vp.size(); ++kv) {
      if (wv[kv] == 0) continue;
      for (int d = 0; d < n; ++d) eta[d] = vp[kv][d] / s2;
      terms.push_back(s(xi, eta, n) * wv[kv]);
    }
    F[ku] = psum(terms) * (w1 / double(up.size()));
  });
  std::vector<int> dims(n, M);
  fft_rank(n, dims.data(), F.data(), -1);
  AxisCoefficients out;
  out.n = n;
  out.A = A;
  out.a = lattice(n, A);
  for (auto& a : out.a) {
    size_t k = 0;
    for (int d = 0; d < n; ++d) k = k * M + size_t((a[d] + M) % M);
    out.c.push_back(F[k]);
  }
  return out;
}

double region_mask_sum(const LittlewoodPaley& lp, const double* xi, const double* eta, int n, int j_max) {
  ProductSymbolExpansion e;
  e.lp = lp;
  double rx = std::sqrt(sq(xi, n)), ry = std::sqrt(sq(eta, n));
  std::vector<double> parts;
  for (auto& b : cm_blocks(j_max)) parts.push_back(e.mask1(b, rx) * e.mask2(b, ry));
  return psum(parts);
}

ReconstructionReport reconstruct_symbol(const ProductSymbolExpansion& e, const BilinearSymbol& s,
                                        const std::vector<std::array<double, 6>>& pts, double mask_floor) {
  ReconstructionReport rep;
  rep.values.resize(pts.size());
  std::vector<double> err(pts.size(), -1);
  parallel_for(pts.size(), [&](size_t i) {
    const double* xi = pts[i].data();
    const double* eta = pts[i].data() + 3;
    rep.values[i] = e.eval(xi, eta);
    double rx = std::sqrt(sq(xi, e.n)), ry = std::sqrt(sq(eta, e.n));
    double mask = 0;
    for (auto& b : e.blocks) mask += e.mask1(b, rx) * e.mask2(b, ry);
    if (mask < mask_floor) return;
    cplx target = s(xi, eta, e.n) * mask;
    err[i] = std::abs(rep.values[i] - target) / std::abs(target);
  });
  for (double v : err)
    if (v >= 0) {
      rep.max_rel_error = std::max(rep.max_rel_error, v);
      ++rep.points_used;
    }
  return rep;
}

void write_expansion_csv(const ProductSymbolExpansion& e, std::ostream& os) {
  const char* names[] = {"I", "II", "III"};
  os << "region,ell,j";
  for (int d = 0; d < e.n; ++d) os << ",a" << d;
  for (int d = 0; d < e.n; ++d) os << ",b" << d;
  os << ",re,im\n";
  for (auto& t : e.terms) {
    os << names[int(t.region)] << ',' << t.ell << ',' << t.j;
    for (int d = 0; d < e.n; ++d) os << ',' << t.a[d];
    for (int d = 0; d < e.n; ++d) os << ',' << t.b[d];
    os << ',' << fmt17(t.c.real()) << ',' << fmt17(t.c.imag()) << '\n';
  }
}

}  // namespace wl
