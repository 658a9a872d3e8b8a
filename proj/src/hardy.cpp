#include "hardy.hpp"

#include <cmath>
#include <map>

#include "kernel.hpp"
#include "trilinear.hpp"

namespace wl {

namespace {

const char* kSplits[4] = {"00", "01", "10", "11"};

void finish_atom(SpatialField& h, double r) {
  const GridSpec& g = h.grid;
  std::vector<size_t> sup;
  for_each_point(g, g.h(), [&](size_t k, const std::array<double, 3>& x) {
    if (norm3(x) <= r)
      sup.push_back(k);
    else
      h.v[k] = 0;
  });
  if (r < 1) {
    std::vector<cplx> vals;
    for (size_t k : sup) vals.push_back(h.v[k]);
    cplx mean = psum(vals) / double(sup.size());
    for (size_t k : sup) h.v[k] -= mean;
  }
  double mx = 0;
  for (size_t k : sup) mx = std::max(mx, std::abs(h.v[k]));
  if (mx == 0) fail(bad_argument, "atom profile vanishes on its support");
  double s = std::pow(r, -g.dim) / mx;
  for (size_t k : sup) h.v[k] *= s;
}

void check_atom_radius(double r, const GridSpec& g) {
  if (!(r > 0 && r <= 1)) fail(bad_argument, "atom radius must lie in (0, 1]");
  if (r < 4 * g.h()) fail(guard_violation, "atom radius under-resolved: r < 4 cells");
  if (r >= g.X / 2) fail(region_exceeds_box, "region exceeds box");
}

double l1_product(const std::vector<cplx>& a, const std::vector<cplx>& b, const std::vector<cplx>& c,
                  const std::vector<char>& mask, double cell) {
  std::vector<double> t(a.size(), 0.0);
  for (size_t k = 0; k < a.size(); ++k)
    if (mask[k]) t[k] = std::abs(a[k] * b[k] * c[k]);
  return psum(t) * cell;
}

std::vector<char> radial_mask(const GridSpec& g, double lo, double hi) {
  std::vector<char> m(g.size(), 0);
  for_each_point(g, g.h(), [&](size_t k, const std::array<double, 3>& x) {
    double r = norm3(x);
    m[k] = r >= lo && r < hi;
  });
  return m;
}

SpatialField family_field(const std::string& fam, const GridSpec& g, uint64_t seed) {
  SpatialField f = zeros(g);
  if (fam == "const") {
    for (auto& z : f.v) z = 1;
  } else if (fam == "rand") {
    Rng rng(seed);
    for (auto& z : f.v) z = (rng() >> 63) ? 1.0 : -1.0;
  } else if (fam == "phase") {
    auto u = random_field(g, seed);
    u = apply_multiplier(u, [](const std::array<double, 3>& xi) { return cplx(norm3(xi) < 1 ? 1.0 : 0.0); });
    double s2 = 0;
    for (auto& z : u.v) s2 += std::norm(z.real());
    double sd = std::sqrt(s2 / double(u.v.size()));
    for (size_t k = 0; k < f.v.size(); ++k) f.v[k] = std::polar(1.0, 2 * pi * u.v[k].real() / sd);
  } else {
    fail(bad_argument, "unknown f family: " + fam);
  }
  return f;
}

SpatialField masked(const SpatialField& f, const std::vector<char>& m, bool inside) {
  SpatialField out = f;
  for (size_t k = 0; k < out.v.size(); ++k)
    if (bool(m[k]) != inside) out.v[k] = 0;
  return out;
}


// Phase of S^* applied to a random-phase multiple of |S h| on the ball of radius 4, inside radius 10.
SpatialField focus_field(const Cutoff& theta, int j, const SpatialField& Sh, uint64_t seed) {
  const GridSpec& g = Sh.grid;
  Rng rng(seed);
  std::uniform_real_distribution<double> U(0, 1);
  SpatialField v = zeros(g);
  auto b4 = radial_mask(g, 0, 4);
  for (size_t k = 0; k < v.v.size(); ++k) {
    double ph = 2 * pi * U(rng);
    if (b4[k]) v.v[k] = std::polar(std::abs(Sh.v[k]), ph);
  }
  auto b10 = radial_mask(g, 0, 10);
  auto phase_of = [&](SpatialField& p) {
    for (size_t k = 0; k < p.v.size(); ++k) {
      double a = std::abs(p.v[k]);
      p.v[k] = b10[k] ? (a > 1e-300 ? p.v[k] / a : cplx(1)) : cplx(1);
    }
  };
  auto p = apply_half_wave(theta, j, true, v, -1);
  phase_of(p);
  return p;
}


std::vector<SplitRow> best_over_families(const std::vector<SplitRow>& rows) {
  std::map<std::tuple<std::string, int, int, std::string>, SplitRow> m;
  for (const auto& r : rows) {
    auto key = std::make_tuple(r.atom, r.j, r.k, r.split);
    auto it = m.find(key);
    if (it == m.end() || r.norm > it->second.norm) {
      SplitRow b = r;
      b.family = "max";
      m[key] = b;
    }
  }
  std::vector<SplitRow> out;
  for (auto& [k, v] : m) out.push_back(v);
  return out;
}

}  // namespace

AtomProfile atom_profile_from_string(const std::string& s) {
  if (s == "plateau") return AtomProfile::plateau;
  if (s == "odd_bump") return AtomProfile::odd_bump;
  if (s == "random_signed") return AtomProfile::random_signed;
  if (s == "sign_dipole") return AtomProfile::sign_dipole;
  if (s == "matched") return AtomProfile::matched;
  fail(bad_argument, "unknown atom profile: " + s);
}

std::string to_string(AtomProfile p) {
  switch (p) {
    case AtomProfile::plateau: return "plateau";
    case AtomProfile::odd_bump: return "odd_bump";
    case AtomProfile::random_signed: return "random_signed";
    case AtomProfile::sign_dipole: return "sign_dipole";
    case AtomProfile::matched: return "matched";
  }
  return "?";
}

SpatialField make_atom(const AtomSpec& spec, const GridSpec& g) {
  double r = spec.r;
  check_atom_radius(r, g);
  SpatialField h = zeros(g);
  Rng rng(spec.seed);
  switch (spec.profile) {
    case AtomProfile::plateau:
      if (r < 1) fail(bad_argument, "plateau atom has nonzero mean; use r = 1");
      for (auto& z : h.v) z = 1;
      break;
    case AtomProfile::odd_bump:
      for_each_point(g, g.h(), [&](size_t k, const std::array<double, 3>& x) {
        double t = norm3(x) / r;
        h.v[k] = t < 1 ? x[0] / r * std::exp(1 - 1 / (1 - t * t)) : 0.0;
      });
      break;
    case AtomProfile::random_signed:
      for (auto& z : h.v) z = (rng() >> 63) ? 1.0 : -1.0;
      break;
    case AtomProfile::sign_dipole:
      for_each_point(g, g.h(), [&](size_t k, const std::array<double, 3>& x) {
        h.v[k] = x[0] > 0 ? 1.0 : x[0] < 0 ? -1.0 : 0.0;
      });
      break;
    case AtomProfile::matched:
      fail(bad_argument, "matched atoms need a kernel; use make_matched_atom");
  }
  finish_atom(h, r);
  return h;
}

SpatialField make_matched_atom(double r, const SpatialField& K, const std::array<double, 3>& x0) {
  const GridSpec& g = K.grid;
  check_atom_radius(r, g);
  std::array<int, 3> i0{0, 0, 0};
  for (int d = 0; d < g.dim; ++d) i0[d] = int(std::lround(x0[d] / g.h()));
  auto lc = lattice_coords(g);
  SpatialField h = zeros(g);
  for (size_t k = 0; k < h.v.size(); ++k) {
    std::array<int, 3> m{i0[0] - lc[k][0], i0[1] - lc[k][1], i0[2] - lc[k][2]};
    h.v[k] = K.v[flat_index(g, m)];
  }
  // mean-removed kernel, then its conjugate phase
  auto sup = radial_mask(g, 0, std::nextafter(r, 2.0));
  if (r < 1) {
    std::vector<cplx> vals;
    for (size_t k = 0; k < sup.size(); ++k)
      if (sup[k]) vals.push_back(h.v[k]);
    cplx mean = psum(vals) / double(vals.size());
    for (auto& z : h.v) z -= mean;
  }
  for (auto& z : h.v) {
    double a = std::abs(z);
    z = a > 1e-300 ? std::conj(z) / a : cplx(0);
  }
  finish_atom(h, r);
  return h;
}

AtomScan atom_sup_scan(const Cutoff& theta3, const std::vector<int>& js, const std::vector<double>& rs,
                       const GridSpec& g) {
  AtomScan out;
  int n = g.dim;
  for (int j : js) {
    check_guard(g, theta3.a, j);
    auto K = compute_kernel(KernelSpec{theta3, j, true, {}}, g).samples;
    double sj = std::ldexp(1.0, j);
    for (double r : rs) {
      double bound = std::pow(sj, (n + 1) / 2.0) * std::min(sj * r, 1 / (sj * r));
      auto add = [&](const std::string& name, const SpatialField& h) {
        auto S = apply_half_wave(theta3, j, true, h);
        double sup = 0;
        for (auto& z : S.v) sup = std::max(sup, std::abs(z));
        out.rows.push_back({j, r, name, sup, bound, sup / bound});
      };
      if (r == 1) add("plateau", make_atom({r, AtomProfile::plateau, 0}, g));
      add("sign_dipole", make_atom({r, AtomProfile::sign_dipole, 0}, g));
      double best = 0;
      for (double rho : {1 - 1 / sj, 1 - 0.5 / sj, 1.0, 1 + 0.5 / sj, 0.5}) {
        auto S = apply_half_wave(theta3, j, true, make_matched_atom(r, K, {rho, 0, 0}));
        for (auto& z : S.v) best = std::max(best, std::abs(z));
      }
      out.rows.push_back({j, r, "matched", best, bound, best / bound});
      AtomRow b{j, r, "max", 0, bound, 0};
      for (auto it = out.rows.rbegin(); it != out.rows.rend() && it->j == j && it->r == r; ++it)
        if (it->sup > b.sup) b.sup = it->sup;
      b.ratio = b.sup / bound;
      out.best.push_back(b);
    }
  }
  double lo = 1e300, hi = 0;
  for (auto& b : out.best) lo = std::min(lo, b.ratio), hi = std::max(hi, b.ratio);
  out.spread = hi / lo;
  return out;
}

AnnulusScan annulus_decay_scan(const Cutoff& theta, const std::vector<int>& js, const std::vector<int>& ks,
                               const std::vector<std::string>& families, const GridSpec& g, uint64_t seed) {
  require(!ks.empty() && !js.empty(), "empty scan");
  int kmax = *std::max_element(ks.begin(), ks.end());
  if (g.X < 4 * std::ldexp(1.0, kmax + 1)) fail(region_exceeds_box, "box too small for k_max");
  AnnulusScan out;
  double cell = g.cell();
  for (int j : js) {
    check_guard(g, theta.a, j);
    auto Sh = apply_half_wave(theta, j, true, make_atom({1, AtomProfile::plateau, 0}, g));
    for (size_t fi = 0; fi < families.size(); ++fi) {
      const auto& fam = families[fi];
      if (fam == "focus") fail(bad_argument, "the focus family is defined for the ball scan only");
      auto f = family_field(fam, g, derive_seed(seed, {1, j, int64_t(fi)}));
      auto Sf = apply_half_wave(theta, j, true, f);
      for (int k : ks) {
        double split_r = 10 * std::ldexp(1.0, k);
        auto Ek = radial_mask(g, std::ldexp(1.0, k), std::ldexp(1.0, k + 1));
        SpatialField S0 = Sf, S1 = zeros(g);
        if (split_r < g.X / 2) {
          S0 = apply_half_wave(theta, j, true, masked(f, radial_mask(g, 0, split_r), true));
          for (size_t q = 0; q < S1.v.size(); ++q) S1.v[q] = Sf.v[q] - S0.v[q];
        }
        const std::vector<cplx>* parts[2] = {&S0.v, &S1.v};
        double sum = 0;
        for (int s = 0; s < 4; ++s) {
          double v = l1_product(*parts[s / 2], *parts[s % 2], Sh.v, Ek, cell);
          sum += v;
          out.rows.push_back({j, k, kSplits[s], fam, "plateau", 1.0, v});
        }
        double whole = l1_product(Sf.v, Sf.v, Sh.v, Ek, cell);
        out.triangle_gap = std::max(out.triangle_gap, whole - sum);
      }
    }
  }
  out.best = best_over_families(out.rows);
  for (int j : js)
    for (int s = 0; s < 4; ++s) {
      std::vector<double> x, y;
      for (auto& b : out.best)
        if (b.j == j && b.split == kSplits[s]) x.push_back(b.k), y.push_back(b.norm);
      double sl = x.size() >= 2 ? log2_slope(x, y) : 0;
      out.slopes.push_back({kSplits[s], sl});
      out.slope_j.push_back(j);
    }
  return out;
}

BallScan ball_growth_scan(const Cutoff& theta, const std::vector<int>& js, const std::vector<std::string>& families,
                          const GridSpec& g, uint64_t seed, double track_c) {
  if (g.X < 44) fail(region_exceeds_box, "box too small for the ball scan (X >= 44 required)");
  BallScan out;
  double cell = g.cell();
  int n = g.dim;
  auto b4 = radial_mask(g, 0, 4);
  auto b10 = radial_mask(g, 0, 10);
  for (int j : js) {
    check_guard(g, theta.a, j);
    std::vector<SpatialField> Sh(2);
    double r[2];
    for (int fixed = 0; fixed < 2; ++fixed) {
      r[fixed] = fixed ? 1.0 : track_c * std::ldexp(1.0, -j);
      auto h = fixed ? make_atom({r[fixed], AtomProfile::plateau, 0}, g)
                     : make_atom({r[fixed], AtomProfile::sign_dipole, 0}, g);
      Sh[fixed] = apply_half_wave(theta, j, true, h);
    }
    auto emit = [&](int fixed, const std::string& fam, const SpatialField& S0, const SpatialField& S1) {
      const std::vector<cplx>* parts[2] = {&S0.v, &S1.v};
      for (int s = 0; s < 4; ++s)
        out.rows.push_back({j, 0, kSplits[s], fam, fixed ? "fixed" : "track", r[fixed],
                            l1_product(*parts[s / 2], *parts[s % 2], Sh[fixed].v, b4, cell)});
    };
    for (size_t fi = 0; fi < families.size(); ++fi) {
      const auto& fam = families[fi];
      if (fam == "focus") {
        for (int fixed = 0; fixed < 2; ++fixed) {
          auto f = focus_field(theta, j, Sh[fixed], derive_seed(seed, {2, j, fixed, int64_t(fi)}));
          auto S0 = apply_half_wave(theta, j, true, masked(f, b10, true));
          auto S1 = apply_half_wave(theta, j, true, masked(f, b10, false));
          emit(fixed, fam, S0, S1);
        }
      } else {
        // independent of the atom: shared by both
        auto f = family_field(fam, g, derive_seed(seed, {2, j, int64_t(fi)}));
        auto S0 = apply_half_wave(theta, j, true, masked(f, b10, true));
        auto S1 = apply_half_wave(theta, j, true, masked(f, b10, false));
        for (int fixed = 0; fixed < 2; ++fixed) emit(fixed, fam, S0, S1);
      }
    }
  }
  out.best = best_over_families(out.rows);
  for (int s = 0; s < 4; ++s) {
    std::vector<double> x, y;
    for (auto& b : out.best)
      if (b.atom == "track" && b.split == kSplits[s]) x.push_back(b.j), y.push_back(b.norm);
    out.slopes.push_back({kSplits[s], x.size() >= 2 ? log2_slope(x, y) : 0});
  }
  double acc = 0;
  for (int j : js) {
    double tot = 0;
    for (auto& b : out.best)
      if (b.atom == "fixed" && b.j == j) tot += b.norm;
    acc += tot * std::pow(2.0, -j * (n + 1) / 2.0);
    out.partial_sums.push_back(acc);
  }
  size_t L = out.partial_sums.size();
  if (L >= 3) out.cauchy_increase = (out.partial_sums[L - 1] - out.partial_sums[L - 3]) / out.partial_sums[L - 1];
  return out;
}

}  // namespace wl
