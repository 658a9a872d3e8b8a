#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <limits>

#include "bench.hpp"
#include "hardy.hpp"
#include "kernel.hpp"
#include "lowerbound.hpp"
#include "trilinear.hpp"

using namespace wl;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Composite Simpson on [a, b] with n (even) panels.
template <class F>
double simpson(F&& f, double a, double b, int n) {
  double h = (b - a) / n, s = f(a) + f(b);
  for (int k = 1; k < n; ++k) s += f(a + k * h) * (k % 2 ? 4 : 2);
  return s * h / 3;
}

double max_abs(const std::vector<cplx>& v) {
  double m = 0;
  for (auto z : v) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace

TEST_CASE("smooth step matches direct quadrature of the bump") {
  BumpStep step(1.0);
  auto bump = [](double t) { return t <= 0 || t >= 1 ? 0.0 : std::exp(-1 / (t * (1 - t))); };
  double Z = simpson(bump, 0, 1, 20000);
  for (double t : {0.1, 0.3, 0.5, 0.77, 0.95}) CHECK(step(t) == doctest::Approx(simpson(bump, 0, t, 20000) / Z).epsilon(1e-9));
  CHECK(step(-0.5) == 0);
  CHECK(step(1.5) == 1);
}

TEST_CASE("littlewood-paley pieces telescope and live on dyadic annuli") {
  LittlewoodPaley lp(1);
  for (double r : {0.01, 0.4, 0.9, 1.3, 3.7, 100.0, 3000.0}) {
    double acc = 0;
    for (int k = 0; k <= 12; ++k) {
      acc += lp.psi_j(k, r);
      CHECK(std::abs(acc - lp.phi_scaled(k, r)) < 1e-13);
    }
  }
  CHECK(lp.psi(0.49) == 0);
  CHECK(lp.psi(2.01) == 0);
  CHECK(lp.phi(1.0) == 1);
  CHECK(lp.phi(2.0) == 0);
  CHECK(lp.psi(1.0) > 0.99);
}

TEST_CASE("cutoffs by name") {
  LittlewoodPaley lp(1);
  CHECK(cutoff_by_name(lp, "phi:4").a == 8);
  CHECK(cutoff_by_name(lp, "bump").inner == 0.5);
  CHECK_THROWS_AS(cutoff_by_name(lp, "phi:x"), Error);
  CHECK_THROWS_AS(cutoff_by_name(lp, "nope"), Error);
}

TEST_CASE("grid transform of a gaussian matches the closed form") {
  auto g = make_grid(2, 128, 20);
  SpatialField f = zeros(g);
  for_each_point(g, g.h(), [&](size_t k, const std::array<double, 3>& x) {
    f.v[k] = std::exp(-(x[0] * x[0] + x[1] * x[1]) / 2);
  });
  auto F = to_spectral(f);
  double err = 0;
  for_each_point(g, g.dk(), [&](size_t k, const std::array<double, 3>& xi) {
    double exact = 2 * pi * std::exp(-(xi[0] * xi[0] + xi[1] * xi[1]) / 2);
    err = std::max(err, std::abs(F.v[k] - exact));
  });
  CHECK(err < 1e-12);
  auto back = from_spectral(F);
  double rt = 0;
  for (size_t k = 0; k < f.v.size(); ++k) rt = std::max(rt, std::abs(back.v[k] - f.v[k]));
  CHECK(rt < 1e-14);
}

TEST_CASE("holder and norms on the grid") {
  auto g = make_grid(2, 64, 4);
  auto f = random_field(g, 1), h = random_field(g, 2);
  SpatialField fh = zeros(g);
  for (size_t k = 0; k < fh.v.size(); ++k) fh.v[k] = f.v[k] * h.v[k];
  double l1 = lp_norm(fh, 1, Region::Whole());
  CHECK(l1 <= lp_norm(f, 2, Region::Whole()) * lp_norm(h, 2, Region::Whole()) * (1 + 1e-14));
  CHECK(l1 <= lp_norm(f, 1, Region::Whole()) * lp_norm(h, kInf, Region::Whole()) * (1 + 1e-14));
  CHECK_THROWS_AS(check_region(g, Region::Ball(3)), Error);
  CHECK_THROWS_AS(check_guard(g, 2, 6), Error);
}

TEST_CASE("one-dimensional kernel matches direct oscillatory quadrature") {
  auto th = cutoff_annular_bump();
  int j = 3;
  auto g = make_grid(1, 1024, 64);
  auto K = compute_kernel(KernelSpec{th, j, true, {}}, g);
  // K(x) = (1/pi) int_0^inf e^{i s} theta(2^-j s) cos(x s) ds over the support [2^{j-1}, 2^{j+1}]
  std::vector<double> gx, gw;
  gauss_legendre(24, gx, gw);
  double a = std::ldexp(0.5, j), b = std::ldexp(2.0, j);
  int panels = 400;
  auto direct = [&](double x) {
    cplx acc = 0;
    double w = (b - a) / panels;
    for (int p = 0; p < panels; ++p)
      for (size_t q = 0; q < gx.size(); ++q) {
        double s = a + w * (p + 0.5 * (gx[q] + 1));
        acc += 0.5 * w * gw[q] * std::exp(cplx(0, s)) * th(std::ldexp(s, -j)) * std::cos(x * s);
      }
    return acc / pi;
  };
  double err = 0;
  for (int i : {0, 3, 16, 17, 20, 40, 100, 1000}) {
    double x = g.h() * signed_index(i, g.N);
    err = std::max(err, std::abs(K.samples.v[i] - direct(x)));
  }
  CHECK(err / max_abs(K.samples.v) < 1e-8);
}

TEST_CASE("plancherel identity on the lattice and in the continuum") {
  auto th = cutoff_annular_bump();
  auto g = make_grid(2, 512, 16);
  for (int j : {3, 4}) {
    auto K = compute_kernel(KernelSpec{th, j, true, {}}, g);
    double l2 = lp_norm(K.samples, 2, Region::Whole());
    CHECK(l2 == doctest::Approx(plancherel_l2_lattice(th, j, g)).epsilon(1e-12));
    // continuum: (2 pi)^-1 2^j (int theta(s)^2 2 pi s ds)^(1/2) by Simpson
    double I = simpson([&](double s) { return th(s) * th(s) * 2 * pi * s; }, 0.5, 2, 4000);
    CHECK(plancherel_l2(th, j, 2) == doctest::Approx(std::ldexp(1.0, j) * std::sqrt(I) / (2 * pi)).epsilon(1e-9));
  }
}

TEST_CASE("spherical nets are separated and covering") {
  for (int dn : {2, 3}) {
    auto net = build_spherical_net(4, dn);
    double md = kInf;
    for (size_t a = 0; a < net.points.size(); ++a)
      for (size_t b = 0; b < a; ++b) {
        auto& p = net.points[a];
        auto& q = net.points[b];
        md = std::min(md, std::hypot(p[0] - q[0], p[1] - q[1], p[2] - q[2]));
      }
    CHECK(md >= net.separation);
    CHECK(net_min_distance(net) == md);
    double cover = 0;
    auto nearest = [&](const std::array<double, 3>& d) {
      double m = kInf;
      for (auto& p : net.points) m = std::min(m, std::hypot(p[0] - d[0], p[1] - d[1], p[2] - d[2]));
      return m;
    };
    if (dn == 2) {
      for (int k = 0; k < 20000; ++k) cover = std::max(cover, nearest({std::cos(2 * pi * k / 20000), std::sin(2 * pi * k / 20000), 0}));
    } else {
      for (int a = 0; a <= 200; ++a)
        for (int b = 0; b < 400; ++b) {
          double th = pi * a / 200, ph = 2 * pi * b / 400;
          cover = std::max(cover, nearest({std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)}));
        }
    }
    CHECK(cover <= net.separation);
  }
}

TEST_CASE("dense bilinear sum reduces to products for constant and separable symbols") {
  auto g = make_grid(1, 64, 2 * pi);
  auto f = random_field(g, 3), h = random_field(g, 4);
  auto one = make_symbol("constant", 0);
  auto T = apply_bilinear_dense(one, f, h);
  double err = 0;
  for (size_t k = 0; k < f.v.size(); ++k) err = std::max(err, std::abs(T.v[k] - f.v[k] * h.v[k]));
  CHECK(err < 1e-12);

  auto m1 = [](double x) { return cplx(std::cos(x), 1 / (1 + x * x)); };
  auto m2 = [](double y) { return cplx(std::exp(-y * y / 50), 0); };
  BilinearSymbol sep{0, "sep", [&](const double* x, const double* y, int) { return m1(x[0]) * m2(y[0]); }};
  auto S = apply_bilinear_dense(sep, f, h);
  auto Mf = apply_multiplier(f, [&](const std::array<double, 3>& x) { return m1(x[0]); });
  auto Mh = apply_multiplier(h, [&](const std::array<double, 3>& y) { return m2(y[0]); });
  err = 0;
  for (size_t k = 0; k < f.v.size(); ++k) err = std::max(err, std::abs(S.v[k] - Mf.v[k] * Mh.v[k]));
  CHECK(err < 1e-12);
}

TEST_CASE("expansion path agrees with the dense path for the same multiplier") {
  LittlewoodPaley lp(1);
  CMOptions o;
  o.j_max = 3;
  o.A = 6;
  auto s = make_symbol("sjo", -1);
  auto e = cm_decompose(s, lp, 1, o);
  BilinearSymbol rec{-1, "rec", [&](const double* x, const double* y, int) { return e.eval(x, y); }};
  auto g = make_grid(1, 32, 2 * pi);
  auto f = random_field(g, 5), h = random_field(g, 6);
  auto a = apply_bilinear(e, f, h);
  auto b = apply_bilinear_dense(rec, f, h);
  double num = 0;
  for (size_t k = 0; k < a.v.size(); ++k) num = std::max(num, std::abs(a.v[k] - b.v[k]));
  CHECK(num / max_abs(b.v) < 1e-10);
}

TEST_CASE("half-wave propagator is unitary and inverted by the opposite sign") {
  LittlewoodPaley lp(1);
  auto g = make_grid(2, 64, 8);
  auto f = random_field(g, 7);
  auto phi = cutoff_phi(lp);
  auto plain = apply_half_wave(phi, 2, false, f);
  auto fwd = apply_half_wave(cutoff_phi(lp, 2), 2, true, plain, 1);
  auto back = apply_half_wave(cutoff_phi(lp, 2), 2, true, fwd, -1);
  CHECK(lp_norm(fwd, 2, Region::Whole()) == doctest::Approx(lp_norm(plain, 2, Region::Whole())).epsilon(1e-12));
  double err = 0;
  for (size_t k = 0; k < f.v.size(); ++k) err = std::max(err, std::abs(back.v[k] - plain.v[k]));
  CHECK(err < 1e-12 * max_abs(plain.v) + 1e-14);
}

TEST_CASE("duality holds under the support condition and fails without it") {
  LittlewoodPaley lp(1);
  auto psi = cutoff_psi(lp);
  auto g = make_grid(2, 128, 4);
  auto good = make_triple(psi, psi, cutoff_phi(lp, 4));
  CHECK(good.support_condition_met);
  CHECK(duality_residual(good, 3, 2, 11, g).residual < 1e-10);
  auto bad = make_triple(psi, psi, cutoff_phi(lp, 2));
  CHECK_FALSE(bad.support_condition_met);
  CHECK_THROWS_AS(duality_residual(bad, 3, 2, 11, g), Error);
  CHECK(duality_residual(bad, 3, 2, 11, g, true).residual > 1e-6);
}

TEST_CASE("atoms are supported, normalized and mean-free") {
  auto g = make_grid(2, 256, 8);
  for (auto prof : {AtomProfile::odd_bump, AtomProfile::random_signed, AtomProfile::sign_dipole}) {
    double r = 0.25;
    auto h = make_atom(AtomSpec{r, prof, 3}, g);
    double mx = 0, outside = 0;
    cplx mean = 0;
    for_each_point(g, g.h(), [&](size_t k, const std::array<double, 3>& x) {
      mx = std::max(mx, std::abs(h.v[k]));
      if (norm3(x) > r) outside = std::max(outside, std::abs(h.v[k]));
      mean += h.v[k];
    });
    CHECK(outside == 0);
    CHECK(mx == doctest::Approx(1 / (r * r)).epsilon(1e-12));
    CHECK(std::abs(mean) < 1e-9 * mx);
  }
  CHECK_THROWS_AS(make_atom(AtomSpec{0.05, AtomProfile::sign_dipole, 0}, g), Error);
  CHECK_THROWS_AS(make_atom(AtomSpec{0.5, AtomProfile::plateau, 0}, g), Error);
}

TEST_CASE("lower-bound counting and lattice identities") {
  auto th = cutoff_annular_bump();
  auto c = counting_facts(5, 1.0 / 16, 1.0 / 128, 100, 2, 1);
  CHECK(c.card_I_ratio == doctest::Approx(1).epsilon(0.05));
  CHECK(c.overlap_max_over_cell <= 1);
  LhsOptions o;
  o.delta = 1;
  o.delta_prime = 1.0 / 8;
  auto e = evaluate_lhs_exact(th, 2, o);
  auto q = evaluate_lhs_exact(th, 2, o, 4, true);
  CHECK(e.lhs > 0);
  CHECK(std::abs(q.lhs - e.lhs) <= 1e-12 * e.lhs);
  LhsOptions z = o;
  z.zero_overlaps = true;
  CHECK(evaluate_lhs(th, 2, z).lhs == 0);
  auto k = khintchine_mc_check(th, 3, o, 64, 9, 2, true);
  CHECK(k.ratio == doctest::Approx(1).epsilon(1e-12));
  CHECK_THROWS_AS(growth_slope_and_m_bound({4, 5, 6}, {1, 2, 3}), Error);
}

TEST_CASE("growth fit recovers a planted power law") {
  std::vector<int> js{4, 5, 6, 7};
  std::vector<double> v;
  for (int j : js) v.push_back(3 * std::pow(2.0, 5.5 * j));
  auto f = growth_slope_and_m_bound(js, v, 2);
  CHECK(f.slope == doctest::Approx(5.5).epsilon(1e-12));
  CHECK(f.target == 5.5);
}

TEST_CASE("bench config is fail-closed") {
  BenchConfig c;
  CHECK(c.integer("dim") == 2);
  c.parse("# comment\nkernel.N = 1024   # trailing\n\nthreshold.kernel_slope_p2 = 9, 10\n");
  CHECK(c.integer("kernel.N") == 1024);
  CHECK(c.window("kernel_slope_p2").first == 9);
  CHECK_THROWS_AS(c.set("kernel.M", "3"), Error);
  CHECK_THROWS_AS(c.set("threshold.nope", "0,1"), Error);
  CHECK_THROWS_AS(c.set("kernel.N", "big"), Error);
  CHECK_THROWS_AS(c.parse("dim 2\n"), Error);
  for (auto& k : config_keys()) CHECK_NOTHROW(c.str(k.key));
}

TEST_CASE("every record carries an anchor and a criterion") {
  for (auto& r : record_specs()) {
    CHECK(std::string(r.anchor).size() > 0);
    CHECK(std::string(r.criterion).rfind("C", 0) == 0);
    CHECK(r.lo <= r.hi);
  }
}

TEST_CASE("partition suite report and empty report") {
  BenchConfig c;
  auto r = run_bench(c, {"partition"});
  REQUIRE(r.suites.size() == 1);
  CHECK(r.all_pass());
  CHECK(summary_json(r).find("\"partition_identity_residual\"") != std::string::npos);
  auto dir = std::filesystem::temp_directory_path() / "wavelab_empty_report";
  std::filesystem::remove_all(dir);
  write_report(BenchReport{}, dir.string());
  CHECK_FALSE(std::filesystem::exists(dir));
  CHECK_THROWS_AS(run_bench(c, {"nosuch"}), Error);
}
