#include "trilinear.hpp"

#include <cmath>
#include <map>

namespace wl {

namespace {

void same_grid(const SpatialField& a, const SpatialField& b) {
  if (!(a.grid == b.grid) || a.v.size() != b.v.size()) fail(bad_argument, "grid mismatch");
}

}  // namespace

SpatialField apply_multiplier(const SpatialField& f, const std::function<cplx(const std::array<double, 3>&)>& m) {
  auto F = to_spectral(f);
  for_each_point(f.grid, f.grid.dk(), [&](size_t k, const std::array<double, 3>& xi) { F.v[k] *= m(xi); });
  return from_spectral(F);
}

SpatialField apply_half_wave(const Cutoff& theta, int j, bool phase_on, const SpatialField& f, double phase_sign) {
  check_guard(f.grid, theta.a, j);
  double s = std::ldexp(1.0, -j);
  return apply_multiplier(f, [&](const std::array<double, 3>& xi) {
    double r = norm3(xi);
    double t = theta(s * r);
    return phase_on ? std::polar(t, phase_sign * r) : cplx(t);
  });
}

SpatialField apply_bilinear(const ProductSymbolExpansion& e, const SpatialField& f, const SpatialField& g) {
  same_grid(f, g);
  if (f.grid.dim != e.n) fail(bad_argument, "expansion dimension differs from the grid");
  auto Fh = to_spectral(f), Gh = to_spectral(g);
  const GridSpec& gr = f.grid;
  size_t P = gr.size();
  SpatialField out = zeros(gr);

  auto piece = [&](const SpectralField& H, double scale, bool first, const CMBlock& b, const std::array<int, 3>& a) {
    SpectralField M{gr, H.v};
    for_each_point(gr, gr.dk(), [&](size_t k, const std::array<double, 3>& xi) {
      double r = norm3(xi);
      double w = first ? e.mask1(b, r) : e.mask2(b, r);
      double ph = 0;
      for (int d = 0; d < gr.dim; ++d) ph += a[d] * scale * xi[d];
      M.v[k] *= w == 0 ? cplx(0) : std::polar(w, ph);
    });
    return from_spectral(M).v;
  };

  for (size_t bi = 0; bi < e.blocks.size(); ++bi) {
    const auto& b = e.blocks[bi];
    std::map<std::array<int, 3>, std::vector<cplx>> Fa, Gb;
    for (size_t t = e.block_start[bi]; t < e.block_start[bi + 1]; ++t) {
      const auto& term = e.terms[t];
      if (!Fa.count(term.a)) Fa[term.a] = piece(Fh, b.s1, true, b, term.a);
      if (!Gb.count(term.b)) Gb[term.b] = piece(Gh, b.s2, false, b, term.b);
    }
    // group by a: out += F_a * sum_b c_ab G_b
    std::map<std::array<int, 3>, std::vector<cplx>> H;
    for (size_t t = e.block_start[bi]; t < e.block_start[bi + 1]; ++t) {
      const auto& term = e.terms[t];
      auto& acc = H[term.a];
      if (acc.empty()) acc.assign(P, 0);
      const auto& G = Gb[term.b];
      for (size_t k = 0; k < P; ++k) acc[k] += term.c * G[k];
    }
    for (auto& [a, acc] : H) {
      const auto& F = Fa[a];
      for (size_t k = 0; k < P; ++k) out.v[k] += F[k] * acc[k];
    }
  }
  return out;
}

SpatialField apply_bilinear_dense(const BilinearSymbol& s, const SpatialField& f, const SpatialField& g,
                                  const std::vector<size_t>* xi_set, const std::vector<size_t>* eta_set,
                                  size_t cap) {
  same_grid(f, g);
  const GridSpec& gr = f.grid;
  size_t P = gr.size();
  std::vector<size_t> all;
  if (!xi_set || !eta_set) {
    all.resize(P);
    for (size_t k = 0; k < P; ++k) all[k] = k;
  }
  const auto& S1 = xi_set ? *xi_set : all;
  const auto& S2 = eta_set ? *eta_set : all;
  if (double(S1.size()) * double(S2.size()) > double(cap))
    fail(refused, "dense bilinear sum over " + std::to_string(S1.size() * S2.size()) +
                      " frequency pairs exceeds the cap of " + std::to_string(cap));
  auto Fh = to_spectral(f), Gh = to_spectral(g);
  auto lc = lattice_coords(gr);
  int n = gr.dim;
  double dk = gr.dk();
  // per-xi partial sums land in private rows, then reduce in fixed order
  std::vector<std::vector<cplx>> rows(S1.size());
  parallel_for(S1.size(), [&](size_t i) {
    size_t k = S1[i];
    if (Fh.v[k] == cplx(0)) return;
    double xi[3], eta[3];
    for (int d = 0; d < n; ++d) xi[d] = dk * lc[k][d];
    std::vector<cplx> row(P, 0);
    for (size_t l : S2) {
      if (Gh.v[l] == cplx(0)) continue;
      for (int d = 0; d < n; ++d) eta[d] = dk * lc[l][d];
      std::array<int, 3> m{lc[k][0] + lc[l][0], lc[k][1] + lc[l][1], lc[k][2] + lc[l][2]};
      row[flat_index(gr, m)] += s(xi, eta, n) * Fh.v[k] * Gh.v[l];
    }
    rows[i] = std::move(row);
  });
  SpectralField T{gr, std::vector<cplx>(P, 0)};
  double norm = 1 / std::pow(gr.X, n);
  for (auto& row : rows) {
    if (row.empty()) continue;
    for (size_t m = 0; m < P; ++m) T.v[m] += row[m];
  }
  for (auto& z : T.v) z *= norm;
  return from_spectral(T);
}

CutoffTriple make_triple(const Cutoff& t1, const Cutoff& t2, const Cutoff& t3) {
  CutoffTriple tr{t1, t2, t3, false};
  double hi = t1.a + t2.a;
  double lo = std::max({0.0, t1.inner - t2.a, t2.inner - t1.a});
  bool ok = true;
  const int samples = 8192;
  for (int i = 0; i <= samples && ok; ++i) {
    double r = lo + (hi - lo) * i / samples;
    ok = std::abs(t3(r) - 1) < 1e-12;
  }
  tr.support_condition_met = ok;
  return tr;
}

cplx pair_integral(const SpatialField& u, const SpatialField& v) {
  same_grid(u, v);
  std::vector<cplx> t(u.v.size());
  for (size_t k = 0; k < t.size(); ++k) t[k] = u.v[k] * v.v[k];
  return psum(t) * u.grid.cell();
}

cplx trilinear_form(const CutoffTriple& tr, int j, bool phase_on, const SpatialField& f, const SpatialField& g,
                    const SpatialField& h) {
  same_grid(f, g);
  same_grid(f, h);
  auto a = apply_half_wave(tr.t1, j, phase_on, f);
  auto b = apply_half_wave(tr.t2, j, phase_on, g);
  auto c = apply_half_wave(tr.t3, j, phase_on, h);
  std::vector<cplx> t(a.v.size());
  for (size_t k = 0; k < t.size(); ++k) t[k] = a.v[k] * b.v[k] * c.v[k];
  return psum(t) * f.grid.cell();
}

SpatialField random_field(const GridSpec& g, uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> N01;
  SpatialField f = zeros(g);
  for (auto& z : f.v) z = N01(rng);
  return f;
}

DualityReport duality_residual(const CutoffTriple& tr, int j, int trials, uint64_t seed, const GridSpec& g,
                               bool allow_violated) {
  if (!tr.support_condition_met && !allow_violated)
    fail(refused, "support condition theta3(-zeta) = 1 on supp theta1 + supp theta2 does not hold");
  require(trials >= 1, "trials must be positive");
  check_guard(g, tr.t3.a, j);
  double s = std::ldexp(1.0, -j);
  // the sum set must not wrap around the lattice
  if ((tr.t1.a + tr.t2.a) / s >= g.nyquist()) fail(guard_violation, "sum of supports exceeds the lattice");
  std::vector<size_t> S1, S2;
  for_each_point(g, g.dk(), [&](size_t k, const std::array<double, 3>& xi) {
    double r = norm3(xi) * s;
    if (tr.t1(r) != 0) S1.push_back(k);
    if (tr.t2(r) != 0) S2.push_back(k);
  });
  Cutoff t1 = tr.t1, t2 = tr.t2;
  BilinearSymbol sig;
  sig.label = "duality";
  sig.eval = [t1, t2, s](const double* xi, const double* eta, int n) {
    double a = 0, b = 0, c = 0;
    for (int d = 0; d < n; ++d) {
      a += xi[d] * xi[d];
      b += eta[d] * eta[d];
      c += (xi[d] + eta[d]) * (xi[d] + eta[d]);
    }
    a = std::sqrt(a), b = std::sqrt(b), c = std::sqrt(c);
    return std::polar(t1(s * a) * t2(s * b), a + b + c);
  };
  DualityReport rep;
  rep.condition_met = tr.support_condition_met;
  for (int t = 0; t < trials; ++t) {
    auto f = random_field(g, derive_seed(seed, {t, 1}));
    auto gg = random_field(g, derive_seed(seed, {t, 2}));
    auto h = random_field(g, derive_seed(seed, {t, 3}));
    auto T = apply_bilinear_dense(sig, f, gg, &S1, &S2);
    cplx lhs = pair_integral(T, h);
    cplx rhs = trilinear_form(tr, j, true, f, gg, h);
    double r = std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    rep.lhs.push_back(lhs);
    rep.rhs.push_back(rhs);
    rep.per_trial.push_back(r);
    rep.residual = std::max(rep.residual, r);
  }
  return rep;
}

}  // namespace wl
