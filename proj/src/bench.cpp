#include "bench.hpp"

#include <fftw3.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "hardy.hpp"
#include "json.hpp"
#include "kernel.hpp"
#include "lowerbound.hpp"
#include "symbol.hpp"
#include "trilinear.hpp"

namespace wl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

const std::vector<ConfigKey> kKeys = {
    {"dim", "2", "spatial dimension n"},
    {"seed", "12345", "base seed; every random draw derives from it"},
    {"j_min", "", "overrides the main j range of every suite when set"},
    {"j_max", "", "overrides the main j range of every suite when set"},
    {"suite.partition", "1", "run with 'all'"},
    {"suite.cm", "1", "run with 'all'"},
    {"suite.kernel", "1", "run with 'all'"},
    {"suite.trilinear", "1", "run with 'all'"},
    {"suite.hardy", "1", "run with 'all'"},
    {"suite.lowerbound", "1", "run with 'all'"},
    {"partition.points", "10000", "random frequencies per check"},
    {"partition.k_max", "12", "largest k in the telescoping check"},
    {"partition.sharpness", "1", "sharpness of the smooth step"},
    {"cm.j_min", "4", "first scale of the decay fit"},
    {"cm.j_max", "10", "last scale of the decay fit"},
    {"cm.A", "8", "coefficient truncation |a|, |b| <= A"},
    {"cm.tail_j", "6", "scale of the tail-stability check"},
    {"cm.tail_A", "32", "truncation doubled to 2 tail_A"},
    {"kernel.N", "2048", "grid points per axis"},
    {"kernel.X", "16", "period box side"},
    {"kernel.j_min", "4", "first scale"},
    {"kernel.j_max", "7", "last scale"},
    {"kernel.far_N", "2048", "grid for far-field and low-frequency constants"},
    {"kernel.far_X", "8", "box for far-field and low-frequency constants"},
    {"kernel.far_j_min", "4", "first scale of the far-field check"},
    {"kernel.far_j_max", "8", "last scale of the far-field check"},
    {"kernel.angular_j", "6", "scale of the angular decomposition and nets"},
    {"kernel.cover_samples", "10000", "random directions for the covering radius"},
    {"trilinear.N", "256", "grid points per axis for the duality check"},
    {"trilinear.X", "4", "box side for the duality check"},
    {"trilinear.j", "4", "scale of the duality check"},
    {"trilinear.trials", "8", "random triples (f, g, h)"},
    {"trilinear.oracle_N", "64", "n = 1 grid for the dense oracle"},
    {"trilinear.oracle_A", "8", "expansion truncation for the oracle"},
    {"trilinear.oracle_j_max", "4", "expansion scales for the oracle"},
    {"hardy.atom_N", "2048", "grid for the atom scan"},
    {"hardy.atom_X", "8", "box for the atom scan"},
    {"hardy.atom_j_min", "3", "first scale of the atom scan"},
    {"hardy.atom_j_max", "7", "last scale of the atom scan"},
    {"hardy.annulus_N", "4096", "grid for the annulus scan"},
    {"hardy.annulus_X", "256", "box for the annulus scan"},
    {"hardy.annulus_j_min", "3", "first scale of the annulus scan"},
    {"hardy.annulus_j_max", "4", "last scale of the annulus scan"},
    {"hardy.k_min", "1", "first annulus index"},
    {"hardy.k_max", "3", "last annulus index"},
    {"hardy.ball_N", "4096", "grid for the ball growth scan"},
    {"hardy.ball_X", "44", "box for the ball growth scan"},
    {"hardy.ball_j_min", "3", "first scale of the ball scan"},
    {"hardy.ball_j_max", "7", "last scale of the ball scan"},
    {"hardy.track_c", "8", "tracking atom radius in units of 2^-j"},
    {"lowerbound.j_min", "4", "first scale of the growth fit"},
    {"lowerbound.j_max", "7", "last scale of the growth fit"},
    {"lowerbound.plateau_j_min", "9", "first scale of the plateau search"},
    {"lowerbound.plateau_j_max", "12", "last scale of the plateau search"},
    {"lowerbound.count_j_min", "5", "first scale of the counting facts"},
    {"lowerbound.count_j_max", "8", "last scale of the counting facts"},
    {"lowerbound.mu_samples", "500", "sampled interior cells per counting scale"},
    {"lowerbound.delta_ratio", "8", "delta / delta'"},
    {"lowerbound.T", "32", "lambda window half-width in units of 2^-j"},
    {"lowerbound.refine_j", "6", "scale of the quadrature refinement"},
    {"lowerbound.exact_j_max", "3", "largest scale of the exact lattice comparison"},
    {"lowerbound.khintchine_j", "5", "scale of the random-sign check"},
    {"lowerbound.khintchine_trials", "256", "sign draws per lambda"},
};

const std::vector<RecordSpec> kRecords = {
    {"partition_identity_residual", "partition", "C1", "telescoping partition identity", "exact identity", 0, 1e-13},
    {"partition_runtime_s", "partition", "C1", "partition evaluation cost", "harness budget", 0, 1},
    {"cm_slope_m0", "cm", "C2", "coefficient decay in j, order 0", "stated rate", -0.15, 0.15},
    {"cm_slope_m1", "cm", "C2", "coefficient decay in j, order -1", "stated rate", -1.15, -0.85},
    {"cm_slope_m1p5", "cm", "C2", "coefficient decay in j, order -3/2", "stated rate", -1.65, -1.35},
    {"cm_tail_ratio_m0", "cm", "C2", "(1+|a|)^-4 tail under doubled truncation, order 0", "stability check", 0.8, 1.25},
    {"cm_tail_ratio_m1", "cm", "C2", "(1+|a|)^-4 tail under doubled truncation, order -1", "stability check", 0.8, 1.25},
    {"cm_tail_ratio_m1p5", "cm", "C2", "(1+|a|)^-4 tail under doubled truncation, order -3/2", "stability check", 0.8, 1.25},
    {"cm_runtime_s", "cm", "C2", "coefficient decay cost", "harness budget", 0, 60},
    {"kernel_slope_p1", "kernel", "C3", "L^1 growth of the localized wave kernel", "stated rate", 0.25, 0.75},
    {"kernel_slope_p2", "kernel", "C3", "L^2 growth of the localized wave kernel", "stated rate", 0.85, 1.15},
    {"kernel_slope_pinf", "kernel", "C3", "sup growth of the localized wave kernel", "stated rate", 1.35, 1.65},
    {"kernel_plancherel_rel", "kernel", "C3", "L^2 norm against Plancherel", "closed form", 0, 1e-10},
    {"kernel_slope_pinf_phase_off", "kernel", "C3", "sup growth without the phase", "control", 1.9, 2.1},
    {"kernel_radial_vs_grid", "kernel", "C3", "radial quadrature against grid FFT", "independent method", 0, 1e-6},
    {"kernel_envelope_ratio", "kernel", "C4", "envelope constant across scales", "stated bound", 1, 3},
    {"kernel_far_ratio", "kernel", "C4", "far-field constant across scales", "stated bound", 1, 3},
    {"kernel_low_ratio", "kernel", "C4", "low-frequency constant across scales", "stated bound", 1, 3},
    {"kernel_plain_far_slope", "kernel", "C4", "far field of the phase-free kernel", "control", -kInf, 0},
    {"kernel_net2_separation", "kernel", "C5", "net separation on the circle", "construction", 1, kInf},
    {"kernel_net2_covering", "kernel", "C5", "net covering on the circle", "construction", 0, 1},
    {"kernel_net2_cardinality", "kernel", "C5", "net size on the circle", "stated count", 0.25, 4},
    {"kernel_net3_separation", "kernel", "C5", "net separation on the sphere", "construction", 1, kInf},
    {"kernel_net3_covering", "kernel", "C5", "net covering on the sphere", "construction", 0, 1},
    {"kernel_net3_cardinality", "kernel", "C5", "net size on the sphere", "stated count", 0.25, 4},
    {"kernel_angular_reconstruction", "kernel", "C5", "angular pieces sum to the kernel", "exact identity", 0, 1e-10},
    {"kernel_angular_partition", "kernel", "C5", "angular cutoffs sum to one", "exact identity", 0, 1e-12},
    {"kernel_angular_support", "kernel", "C5", "spectral support of one angular piece", "stated count", 1, 8},
    {"kernel_angular_envelope_spread", "kernel", "C5", "envelope constant across angular pieces", "stated bound", 1, 3},
    {"trilinear_duality_residual", "trilinear", "C6", "duality of the bilinear pairing", "exact identity", 0, 1e-10},
    {"trilinear_violated_residual", "trilinear", "C6", "duality with the support condition broken", "control", 1e-6, kInf},
    {"trilinear_runtime_s", "trilinear", "C6", "duality check cost", "harness budget", 0, 30},
    {"trilinear_oracle_rel", "trilinear", "C7", "expansion path against dense summation", "independent method", 0, 1e-8},
    {"hardy_atom_spread", "hardy", "C8", "atom estimate across scales and radii", "stated bound", 1, 10},
    {"hardy_annulus_slope_00", "hardy", "C9", "annulus decay, near-near split", "stated rate", -kInf, -0.7},
    {"hardy_annulus_slope_11", "hardy", "C9", "annulus decay, far-far split", "stated rate", -kInf, -2.5},
    {"hardy_triangle_gap", "hardy", "C9", "split pieces dominate the whole", "exact identity", -kInf, 1e-9},
    {"hardy_ball_slope_00", "hardy", "C9", "ball growth, near-near split", "stated rate", 1.2, 1.8},
    {"hardy_ball_slope_01", "hardy", "C9", "ball growth, near-far split", "stated rate", 0.7, 1.3},
    {"hardy_ball_slope_10", "hardy", "C9", "ball growth, far-near split", "stated rate", 0.7, 1.3},
    {"hardy_ball_slope_11", "hardy", "C9", "ball growth, far-far split", "stated rate", 0.2, 0.8},
    {"hardy_ball_cauchy", "hardy", "C9", "weighted partial sums converge", "stated bound", 0, 0.05},
    {"lb_plateau_deviation", "lowerbound", "C10", "kernel plateau on the unit sphere", "stated bound", 0, 0.1},
    {"lb_plateau_c0_drift", "lowerbound", "C10", "plateau constant across the top scales", "stability check", 0, 0.05},
    {"lb_E_fraction", "lowerbound", "C11", "size of the sphere intersections", "stated count", 0.9, 1},
    {"lb_overlap_slope", "lowerbound", "C11", "overlap count growth", "stated rate", 0.8, 1.2},
    {"lb_admissible_slope", "lowerbound", "C11", "admissible count growth", "stated rate", -0.3, 0.3},
    {"lb_overlap_per_cell", "lowerbound", "C11", "overlap bounded by the cell", "exact identity", 0, 1},
    {"lb_exact_agreement", "lowerbound", "C12", "continuum sum against lattice enumeration", "independent method", 0, 0.05},
    {"lb_quarter_turn", "lowerbound", "C12", "lattice sum under a quarter turn", "exact identity", 0, 1e-12},
    {"lb_growth_slope", "lowerbound", "C12", "growth of the lower-bound sum", "stated rate", 5.1, 5.9},
    {"lb_implied_m", "lowerbound", "C12", "order bound implied by the growth", "stated bound", -kInf, -1.1},
    {"lb_tail_bound", "lowerbound", "C12", "truncated lambda tail", "harness cap", 0, 0.05},
    {"lb_refinement", "lowerbound", "C12", "quadrature refinement", "harness cap", 0, 0.05},
    {"lb_phase_free_gap", "lowerbound", "C12", "phase-free control below the phased growth", "control", 1, kInf},
    {"lb_khintchine_ratio", "lowerbound", "C12", "random signs against the square function", "stated bound", 0.5, 2},
    {"lb_khintchine_se_ratio", "lowerbound", "C12", "standard error under quadrupled trials", "stated rate", 1.5, 2.7},
};

const std::vector<std::string> kSuites = {"partition", "cm", "kernel", "trilinear", "hardy", "lowerbound"};

const RecordSpec* find_spec(const std::string& name) {
  for (auto& r : kRecords)
    if (name == r.name) return &r;
  return nullptr;
}

const ConfigKey* find_key(const std::string& key) {
  for (auto& k : kKeys)
    if (key == k.key) return &k;
  return nullptr;
}

double parse_number(const std::string& s, const std::string& what) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != 0) fail(bad_argument, "bad number '" + s + "' for " + what);
  return v;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

std::vector<int> range(int a, int b) {
  require(a <= b, "empty j range " + std::to_string(a) + ".." + std::to_string(b));
  std::vector<int> v;
  for (int j = a; j <= b; ++j) v.push_back(j);
  return v;
}

double max_over(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }
double min_over(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }
double spread(const std::vector<double>& v) { return max_over(v) / min_over(v); }

// Refuses grids that would not fit in memory at desk scale.
GridSpec checked_grid(int n, int N, double X, const std::string& suite) {
  double pts = std::pow(double(N), n);
  if (pts > double(size_t(1) << 24))
    fail(not_supported, suite + " suite grid N=" + std::to_string(N) + " in n=" + std::to_string(n) +
                            " exceeds the desk-scale budget");
  return make_grid(n, N, X);
}

void require_dim(int n, std::initializer_list<int> ok, const std::string& suite) {
  for (int d : ok)
    if (d == n) return;
  fail(not_supported, suite + " suite does not support n=" + std::to_string(n));
}

struct Ctx {
  const BenchConfig& cfg;
  SuiteReport& rep;
  int n;
  // Adds a gated record; shift moves both ends of the default window (dimension-dependent laws).
  void rec(const std::string& name, double measured, double shift = 0) {
    const RecordSpec* s = find_spec(name);
    if (!s) fail(bad_argument, "unregistered record " + name);
    auto w = cfg.window(name);
    if (w.first == s->lo && w.second == s->hi) w = {w.first + shift, w.second + shift};
    Record r{rep.suite, name, s->criterion, s->anchor, s->source, measured, w.first, w.second, false};
    r.pass = std::isfinite(measured) && measured >= r.lo && measured <= r.hi;
    rep.records.push_back(r);
  }
  int i(const std::string& k) const { return cfg.integer(rep.suite + "." + k); }
  double d(const std::string& k) const { return cfg.num(rep.suite + "." + k); }
};

// Log-scale table with a reference line of the given slope through the first point.
Table slope_plot(const std::string& name, const std::string& xname, const std::vector<double>& x,
                 const std::vector<double>& y, double ref_slope) {
  Table t{name, {xname, "log2_value", "reference"}, {}};
  double y0 = std::log2(y[0]);
  for (size_t k = 0; k < x.size(); ++k) t.add({x[k], std::log2(y[k]), y0 + ref_slope * (x[k] - x[0])});
  return t;
}

void suite_partition(Ctx& c) {
  auto t0 = Clock::now();
  int pts = c.i("points"), kmax = c.i("k_max");
  require(pts > 0 && kmax >= 0, "partition.points and partition.k_max must be positive");
  LittlewoodPaley lp(c.d("sharpness"));
  Rng rng(derive_seed(c.cfg.seed(), {1}));
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ud(-4, kmax + 2);
  std::vector<double> worst(kmax + 1, 0);
  std::vector<double> xi(c.n);
  for (int p = 0; p < pts; ++p) {
    double s = 0;
    for (auto& x : xi) x = nd(rng), s += x * x;
    double r = std::exp2(ud(rng)) / std::sqrt(s);
    for (auto& x : xi) x *= r;
    double acc = 0;
    for (int k = 0; k <= kmax; ++k) {
      acc += eval_component(lp, Component::psi_j, k, xi.data(), c.n);
      double e = std::abs(acc - eval_component(lp, Component::varphi_scaled, k, xi.data(), c.n));
      worst[k] = std::max(worst[k], e);
    }
  }
  double rt = since(t0);
  Table t{"partition", {"n", "k", "points", "max_residual"}, {}};
  for (int k = 0; k <= kmax; ++k) t.add({c.n, k, pts, worst[k]});
  c.rep.csv.push_back(t);
  c.rec("partition_identity_residual", max_over(worst));
  c.rec("partition_runtime_s", rt);
}

void suite_cm(Ctx& c) {
  require_dim(c.n, {1, 2}, "cm");
  auto t0 = Clock::now();
  LittlewoodPaley lp(1);
  const std::vector<std::pair<double, std::string>> orders = {{0, "m0"}, {-1, "m1"}, {-1.5, "m1p5"}};
  Table coef{"cm_coefficients", {"n", "m", "j", "max_abs_c", "terms"}, {}};
  Table tail{"cm_tail", {"n", "m", "j", "A", "tail_constant"}, {}};
  std::vector<Table> plots;
  for (auto& [m, tag] : orders) {
    auto s = make_symbol("sjo", m);
    CMOptions o;
    o.j_min = c.i("j_min");
    o.j_max = c.i("j_max");
    o.A = c.i("A");
    o.only_region_I = true;
    require(o.j_max - o.j_min >= 2, "cm needs at least three scales");
    auto e = cm_decompose(s, lp, c.n, o);
    std::vector<double> x, y;
    for (size_t b = 0; b < e.blocks.size(); ++b) {
      if (e.blocks[b].region != CMRegion::I || e.blocks[b].j < o.j_min) continue;
      double mx = 0;
      for (size_t t = e.block_start[b]; t < e.block_start[b + 1]; ++t) mx = std::max(mx, std::abs(e.terms[t].c));
      x.push_back(e.blocks[b].j);
      y.push_back(mx);
      coef.add({c.n, m, e.blocks[b].j, mx, e.block_start[b + 1] - e.block_start[b]});
    }
    c.rec("cm_slope_" + tag, log2_slope(x, y));
    plots.push_back(slope_plot("cm_decay_" + tag, "j", x, y, m));
    int tj = c.i("tail_j"), A = c.i("tail_A");
    double t1 = cm_axis_coefficients(s, tj, c.n, A, CMWindow{}).tail_constant(4);
    double t2 = cm_axis_coefficients(s, tj, c.n, 2 * A, CMWindow{}).tail_constant(4);
    tail.add({c.n, m, tj, A, t1});
    tail.add({c.n, m, tj, 2 * A, t2});
    c.rec("cm_tail_ratio_" + tag, t2 / t1);
  }
  c.rep.csv.push_back(coef);
  c.rep.csv.push_back(tail);
  c.rep.plots = plots;
  c.rec("cm_runtime_s", since(t0));
}

void suite_kernel(Ctx& c) {
  require_dim(c.n, {1, 2}, "kernel");
  auto g = checked_grid(c.n, c.i("N"), c.d("X"), "kernel");
  auto js = range(c.i("j_min"), c.i("j_max"));
  require(js.size() >= 3, "kernel slopes need at least three scales");
  auto th = cutoff_annular_bump();
  LittlewoodPaley lp(1);
  for (int j : js) check_guard(g, th.a, j);
  double half = (c.n + 1) / 2.0;

  Table lp_t{"kernel_lp", {"n", "j", "p", "phase", "norm"}, {}};
  const std::vector<std::pair<double, std::string>> ps = {{1, "p1"}, {2, "p2"}, {kInf, "pinf"}};
  std::vector<double> l2;
  for (auto& [p, tag] : ps) {
    auto s = lp_slope_scan(th, p, js, true, g);
    for (size_t k = 0; k < js.size(); ++k) lp_t.add({c.n, js[k], p, 1, s.norms[k]});
    double target = half - (std::isinf(p) ? 0 : 1 / p);
    c.rec("kernel_slope_" + tag, s.slope, half - 1.5);
    c.rep.plots.push_back(slope_plot("kernel_lp_slope_" + tag, "j", s.j, s.norms, target));
    if (p == 2) l2 = s.norms;
  }
  double prel = 0;
  for (size_t k = 0; k < js.size(); ++k) {
    double exact = plancherel_l2(th, js[k], c.n);
    prel = std::max(prel, std::abs(l2[k] - exact) / exact);
  }
  c.rec("kernel_plancherel_rel", prel);
  auto off = lp_slope_scan(th, kInf, js, false, g);
  for (size_t k = 0; k < js.size(); ++k) lp_t.add({c.n, js[k], kInf, 0, off.norms[k]});
  c.rec("kernel_slope_pinf_phase_off", off.slope, c.n - 2.0);
  c.rep.csv.push_back(lp_t);

  int ja = c.i("angular_j");
  check_guard(g, th.a, ja);
  {
    KernelSpec spec{th, ja, true, {}};
    auto K = compute_kernel(spec, g);
    double mx = 0;
    for (auto v : K.samples.v) mx = std::max(mx, std::abs(v));
    Rng rng(derive_seed(c.cfg.seed(), {3, 1}));
    std::uniform_int_distribution<size_t> U(0, g.size() - 1);
    auto coords = lattice_coords(g);
    std::vector<double> rr;
    std::vector<size_t> idx;
    for (int s = 0; s < 100; ++s) {
      size_t k = U(rng);
      double r2 = 0;
      for (int d = 0; d < c.n; ++d) r2 += std::pow(g.h() * coords[k][d], 2);
      idx.push_back(k);
      rr.push_back(std::sqrt(r2));
    }
    auto R = radial_kernel(spec, c.n, rr);
    double md = 0;
    for (size_t s = 0; s < idx.size(); ++s) md = std::max(md, std::abs(R[s] - K.samples.v[idx[s]]));
    c.rec("kernel_radial_vs_grid", md / mx);
  }
  if (c.n != 2) return;

  Table env{"kernel_envelope", {"n", "j", "c3", "argmax_radius", "peak_radius"}, {}};
  std::vector<double> c3;
  for (int j : js) {
    auto K = compute_kernel(KernelSpec{th, j, true, {}}, g);
    auto e = envelope_constant(K, 3);
    c3.push_back(e.c);
    env.add({c.n, j, e.c, e.argmax_radius, e.peak_radius});
  }
  c.rep.csv.push_back(env);
  c.rec("kernel_envelope_ratio", spread(c3));
  {
    // radial profile across the unit sphere
    KernelSpec spec{th, ja, true, {}};
    double sj = std::ldexp(1.0, ja);
    std::vector<double> rr;
    for (int k = 0; k < 128; ++k) rr.push_back(1 + (k * 0.5) / sj);
    auto R = radial_kernel(spec, 2, rr);
    auto K = compute_kernel(spec, g);
    double cj = envelope_constant(K, 3).c;
    Table t{"kernel_envelope_profile", {"t", "scaled_abs_kernel", "reference"}, {}};
    for (size_t k = 0; k < rr.size(); ++k) {
      double tt = sj * (rr[k] - 1);
      t.add({tt, std::abs(R[k]) * std::pow(sj, -1.5), cj * std::pow(1 + tt, -3)});
    }
    c.rep.plots.push_back(t);
  }

  auto gf = checked_grid(2, c.i("far_N"), c.d("far_X"), "kernel");
  auto phi = cutoff_phi(lp);
  auto fjs = range(c.i("far_j_min"), c.i("far_j_max"));
  for (int j : fjs) check_guard(gf, phi.a, j);
  Table far{"kernel_far", {"n", "j", "far", "low", "plain_far"}, {}};
  std::vector<double> fv, lv, pv, fx;
  for (int j : fjs) {
    auto f = far_field_and_lowfreq_check(phi, lp, j, gf);
    double p = plain_far_field(phi, j, gf);
    fv.push_back(f.far);
    lv.push_back(f.low);
    pv.push_back(p);
    fx.push_back(j);
    far.add({2, j, f.far, f.low, p});
  }
  c.rep.csv.push_back(far);
  c.rec("kernel_far_ratio", spread(fv));
  c.rec("kernel_low_ratio", spread(lv));
  c.rec("kernel_plain_far_slope", log2_slope(fx, pv));

  Table nets{"kernel_nets", {"n", "j", "points", "separation", "min_distance", "covering_radius", "cardinality_ratio"}, {}};
  for (int dn : {2, 3}) {
    auto net = build_spherical_net(ja, dn);
    double md = net_min_distance(net);
    double cr = net_covering_radius(net, c.i("cover_samples"), derive_seed(c.cfg.seed(), {3, 2, dn}));
    double card = net.points.size() / (sphere_area(dn) * std::pow(std::ldexp(1.0, ja), (dn - 1) / 2.0));
    nets.add({dn, ja, net.points.size(), net.separation, md, cr, card});
    std::string tag = "kernel_net" + std::to_string(dn) + "_";
    c.rec(tag + "separation", md / net.separation);
    c.rec(tag + "covering", cr / net.separation);
    c.rec(tag + "cardinality", card);
  }
  c.rep.csv.push_back(nets);

  auto net = build_spherical_net(ja, 2);
  auto ar = angular_decompose(th, ja, net, g);
  double ref = std::pow(std::ldexp(1.0, ja), 1.5), worst = 1;
  Table ang{"kernel_angular", {"n", "j", "nu", "envelope", "support_measure", "support_ratio"}, {}};
  for (size_t nu = 0; nu < ar.envelope.size(); ++nu) {
    double q = ar.support_measure[nu] / ref;
    worst = std::max(worst, std::max(q, 1 / q));
    ang.add({2, ja, nu, ar.envelope[nu], ar.support_measure[nu], q});
  }
  c.rep.csv.push_back(ang);
  c.rec("kernel_angular_reconstruction", ar.reconstruction_rel_l2);
  c.rec("kernel_angular_partition", ar.partition_residual);
  c.rec("kernel_angular_support", worst);
  c.rec("kernel_angular_envelope_spread", spread(ar.envelope));
}

void suite_trilinear(Ctx& c) {
  require_dim(c.n, {1, 2}, "trilinear");
  LittlewoodPaley lp(1);
  auto psi = cutoff_psi(lp);
  auto g = checked_grid(c.n, c.i("N"), c.d("X"), "trilinear");
  int j = c.i("j"), trials = c.i("trials");
  check_guard(g, 8, j);
  auto t0 = Clock::now();
  auto good = make_triple(psi, psi, cutoff_phi(lp, 4));
  auto bad = make_triple(psi, psi, cutoff_phi(lp, 2));
  uint64_t seed = derive_seed(c.cfg.seed(), {4});
  auto rg = duality_residual(good, j, trials, seed, g);
  double rt = since(t0);
  auto rb = duality_residual(bad, j, trials, seed, g, true);
  Table du{"trilinear_duality", {"n", "j", "case", "trial", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "residual"}, {}};
  for (auto* r : {&rg, &rb})
    for (size_t t = 0; t < r->per_trial.size(); ++t)
      du.add({c.n, j, r == &rg ? "condition_met" : "violated", t, r->lhs[t].real(), r->lhs[t].imag(),
              r->rhs[t].real(), r->rhs[t].imag(), r->per_trial[t]});
  c.rep.csv.push_back(du);
  c.rec("trilinear_duality_residual", rg.residual);
  c.rec("trilinear_violated_residual", rb.residual);
  c.rec("trilinear_runtime_s", rt);

  // n = 1 oracle matrix: symbols x field pairs
  auto g1 = make_grid(1, c.i("oracle_N"), 2 * pi);
  CMOptions o;
  o.j_max = c.i("oracle_j_max");
  o.A = c.i("oracle_A");
  const std::vector<std::pair<std::string, double>> syms = {
      {"constant", 0}, {"sjo", 0}, {"sjo", -1}, {"sjo", -1.5}, {"random_smooth", -1}};
  Table orc{"trilinear_oracle", {"symbol", "m", "pair", "max_abs_dense", "rel_error"}, {}};
  double worst = 0;
  for (size_t si = 0; si < syms.size(); ++si) {
    auto s = make_symbol(syms[si].first, syms[si].second, derive_seed(c.cfg.seed(), {4, 2, int64_t(si)}));
    auto e = cm_decompose(s, lp, 1, o);
    BilinearSymbol rec{s.m, "expansion", [&e](const double* x, const double* y, int) { return e.eval(x, y); }};
    for (int pair = 0; pair < 2; ++pair) {
      auto f = random_field(g1, derive_seed(c.cfg.seed(), {4, 3, int64_t(si), pair, 0}));
      auto h = random_field(g1, derive_seed(c.cfg.seed(), {4, 3, int64_t(si), pair, 1}));
      auto a = apply_bilinear(e, f, h);
      auto b = apply_bilinear_dense(rec, f, h);
      double num = 0, den = 0;
      for (size_t k = 0; k < a.v.size(); ++k) {
        num = std::max(num, std::abs(a.v[k] - b.v[k]));
        den = std::max(den, std::abs(b.v[k]));
      }
      double rel = num / den;
      worst = std::max(worst, rel);
      orc.add({syms[si].first, syms[si].second, pair, den, rel});
    }
  }
  c.rep.csv.push_back(orc);
  c.rec("trilinear_oracle_rel", worst);
}

double ball_law(const std::string& split) {
  if (split == "00") return 1.5;
  if (split == "11") return 0.5;
  return 1;
}

void suite_hardy(Ctx& c) {
  require_dim(c.n, {2}, "hardy");
  LittlewoodPaley lp(1);
  uint64_t seed = derive_seed(c.cfg.seed(), {5});
  Table t{"hardy", {"n", "j", "k", "split", "family", "r", "norm", "bound", "ratio"}, {}};
  const double nan = std::numeric_limits<double>::quiet_NaN();

  auto ga = checked_grid(2, c.i("atom_N"), c.d("atom_X"), "hardy");
  auto theta3 = cutoff_phi(lp, 2);
  auto ajs = range(c.i("atom_j_min"), c.i("atom_j_max"));
  for (int j : ajs) check_guard(ga, theta3.a, j);
  auto as = atom_sup_scan(theta3, ajs, {1, 0.25, 1.0 / 16}, ga);
  for (auto& r : as.rows) t.add({2, r.j, 0, "atom", r.profile, r.r, r.sup, r.bound, r.ratio});
  for (auto& r : as.best) t.add({2, r.j, 0, "atom", "max", r.r, r.sup, r.bound, r.ratio});
  c.rec("hardy_atom_spread", as.spread);

  auto theta = cutoff_phi(lp);
  auto gn = checked_grid(2, c.i("annulus_N"), c.d("annulus_X"), "hardy");
  auto njs = range(c.i("annulus_j_min"), c.i("annulus_j_max"));
  for (int j : njs) check_guard(gn, theta.a, j);
  auto an = annulus_decay_scan(theta, njs, range(c.i("k_min"), c.i("k_max")), {"const", "rand"}, gn, seed);
  for (auto& r : an.rows) t.add({2, r.j, r.k, r.split, r.family, r.r, r.norm, nan, nan});
  for (auto& r : an.best) t.add({2, r.j, r.k, r.split, "max", r.r, r.norm, nan, nan});
  double s00 = -kInf, s11 = -kInf;
  for (size_t k = 0; k < an.slopes.size(); ++k) {
    if (an.slopes[k].split == "00") s00 = std::max(s00, an.slopes[k].slope);
    if (an.slopes[k].split == "11") s11 = std::max(s11, an.slopes[k].slope);
  }
  c.rec("hardy_annulus_slope_00", s00);
  c.rec("hardy_annulus_slope_11", s11);
  c.rec("hardy_triangle_gap", an.triangle_gap);
  for (const char* sp : {"00", "11"}) {
    std::vector<double> x, y;
    for (auto& b : an.best)
      if (b.j == njs[0] && b.split == sp) x.push_back(b.k), y.push_back(b.norm);
    c.rep.plots.push_back(slope_plot(std::string("hardy_annulus_") + sp, "k", x, y, sp[0] == '0' ? -0.7 : -2.5));
  }

  auto gb = checked_grid(2, c.i("ball_N"), c.d("ball_X"), "hardy");
  auto bjs = range(c.i("ball_j_min"), c.i("ball_j_max"));
  for (int j : bjs) check_guard(gb, theta.a, j);
  auto bs = ball_growth_scan(theta, bjs, {"const", "focus"}, gb, seed, c.d("track_c"));
  for (auto& r : bs.rows) {
    double bound = r.atom == "track" ? std::pow(2.0, ball_law(r.split) * r.j) : nan;
    t.add({2, r.j, 0, r.split, r.family + ":" + r.atom, r.r, r.norm, bound, r.norm / bound});
  }
  for (auto& s : bs.slopes) {
    c.rec("hardy_ball_slope_" + s.split, s.slope);
    std::vector<double> x, y;
    for (auto& b : bs.best)
      if (b.atom == "track" && b.split == s.split) x.push_back(b.j), y.push_back(b.norm);
    c.rep.plots.push_back(slope_plot("hardy_ball_" + s.split, "j", x, y, ball_law(s.split)));
  }
  Table ps{"hardy_partial_sums", {"n", "j", "partial_sum"}, {}};
  for (size_t k = 0; k < bs.partial_sums.size(); ++k) ps.add({2, bjs[k], bs.partial_sums[k]});
  c.rec("hardy_ball_cauchy", bs.cauchy_increase);
  c.rep.csv.push_back(t);
  c.rep.csv.push_back(ps);
}

void suite_lowerbound(Ctx& c) {
  require_dim(c.n, {2}, "lowerbound");
  auto th = cutoff_annular_bump();
  uint64_t seed = derive_seed(c.cfg.seed(), {6});

  auto pjs = range(c.i("plateau_j_min"), c.i("plateau_j_max"));
  require(pjs.size() >= 2, "plateau needs at least two scales");
  auto pl = plateau_check(th, pjs);
  Table pt{"lowerbound_plateau", {"delta", "j", "deviation", "c0"}, {}};
  double best = kInf;
  for (size_t b = 0; b < pl.ladder.size(); ++b) {
    for (size_t k = 0; k < pjs.size(); ++k) pt.add({pl.ladder[b], pjs[k], pl.deviation[b][k], pl.c0[b]});
    best = std::min(best, max_over(pl.deviation[b]));
  }
  c.rep.csv.push_back(pt);
  double delta = pl.found ? pl.delta : 1.0 / 16;
  double dev = best;
  if (pl.found)
    for (size_t b = 0; b < pl.ladder.size(); ++b)
      if (pl.ladder[b] == pl.delta) dev = max_over(pl.deviation[b]);
  c.rec("lb_plateau_deviation", dev);
  c.rec("lb_plateau_c0_drift", pl.found ? pl.c0_top_two_rel : kInf);

  LhsOptions o;
  o.delta = delta;
  o.delta_prime = delta / c.d("delta_ratio");
  o.T = c.d("T");

  auto cjs = range(c.i("count_j_min"), c.i("count_j_max"));
  require(cjs.size() >= 2, "counting facts need at least two scales");
  Table ct{"lowerbound_counting",
           {"j", "delta", "delta_prime", "card_I_ratio", "E_fraction", "E_fraction_raw", "overlap_count",
            "admissible_count", "overlap_per_cell"},
           {}};
  std::vector<double> cx, ov, ad;
  double efrac = 1, cell = 0;
  for (int j : cjs) {
    auto f = counting_facts(j, o.delta, o.delta_prime, c.i("mu_samples"), 4, derive_seed(seed, {1, j}));
    ct.add({j, o.delta, o.delta_prime, f.card_I_ratio, f.E_fraction_in_window, f.E_fraction_raw, f.overlap_count,
            f.admissible_count, f.overlap_max_over_cell});
    cx.push_back(j);
    ov.push_back(f.overlap_count);
    ad.push_back(f.admissible_count);
    efrac = std::min(efrac, f.E_fraction_in_window);
    cell = std::max(cell, f.overlap_max_over_cell);
  }
  c.rep.csv.push_back(ct);
  c.rec("lb_E_fraction", efrac);
  c.rec("lb_overlap_slope", log2_slope(cx, ov));
  c.rec("lb_admissible_slope", log2_slope(cx, ad));
  c.rec("lb_overlap_per_cell", cell);

  LhsOptions small;
  small.delta = 1;
  small.delta_prime = 1.0 / 8;
  Table vt{"lowerbound_exact", {"j", "delta", "delta_prime", "exact", "quarter_turn", "continuum", "ratio"}, {}};
  double agree = 0, turn = 0;
  for (int j = 2; j <= c.i("exact_j_max"); ++j) {
    auto e = evaluate_lhs_exact(th, j, small);
    auto q = evaluate_lhs_exact(th, j, small, 4, true);
    auto cc = evaluate_lhs(th, j, small);
    vt.add({j, small.delta, small.delta_prime, e.lhs, q.lhs, cc.lhs, cc.lhs / e.lhs});
    agree = std::max(agree, std::abs(cc.lhs / e.lhs - 1));
    turn = std::max(turn, std::abs(q.lhs - e.lhs) / e.lhs);
  }
  c.rep.csv.push_back(vt);
  c.rec("lb_exact_agreement", agree);
  c.rec("lb_quarter_turn", turn);

  auto js = range(c.i("j_min"), c.i("j_max"));
  std::vector<LhsResult> res;
  std::vector<double> lhs;
  double tail = 0;
  for (int j : js) {
    res.push_back(evaluate_lhs(th, j, o));
    lhs.push_back(res.back().lhs);
    tail = std::max(tail, res.back().tail_bound);
  }
  auto fit = growth_slope_and_m_bound(js, lhs, 2);
  Table gt{"lowerbound", {"n", "j", "delta", "delta_prime", "lhs", "tail_bound", "slope", "implied_m"}, {}};
  for (auto& r : res) gt.add({2, r.j, o.delta, o.delta_prime, r.lhs, r.tail_bound, fit.slope, fit.m_bound});
  c.rep.csv.push_back(gt);
  std::vector<double> jx(js.begin(), js.end());
  c.rep.plots.push_back(slope_plot("lowerbound_growth", "j", jx, lhs, fit.target));
  c.rec("lb_growth_slope", fit.slope);
  c.rec("lb_implied_m", fit.m_bound);
  c.rec("lb_tail_bound", tail);

  int rj = c.i("refine_j");
  auto base = evaluate_lhs(th, rj, o);
  LhsOptions tens = o;
  tens.tensor = true;
  LhsOptions dbl = o;
  dbl.nrc *= 2;
  dbl.nr *= 2;
  dbl.nphi_per *= 2;
  dbl.table_per_scale *= 2;
  double r1 = std::abs(evaluate_lhs(th, rj, tens).lhs - base.lhs) / base.lhs;
  double r2 = std::abs(evaluate_lhs(th, rj, dbl).lhs - base.lhs) / base.lhs;
  c.rec("lb_refinement", std::max(r1, r2));

  Table cn{"lowerbound_control", {"n", "j", "delta", "delta_prime", "lhs", "tail_bound", "slope"}, {}};
  std::vector<double> ctl;
  std::vector<LhsResult> cres;
  for (int j : js) {
    LhsOptions p = o;
    p.phase = false;
    p.T = std::ldexp(2.0, j);
    cres.push_back(evaluate_lhs(th, j, p));
    ctl.push_back(cres.back().lhs);
  }
  double cslope = growth_slope_and_m_bound(js, ctl, 2).slope;
  for (auto& r : cres) cn.add({2, r.j, o.delta, o.delta_prime, r.lhs, r.tail_bound, cslope});
  c.rep.csv.push_back(cn);
  c.rec("lb_phase_free_gap", fit.slope - cslope);

  int kj = c.i("khintchine_j");
  auto kh = khintchine_mc_check(th, kj, o, c.i("khintchine_trials"), derive_seed(seed, {2}));
  Table kt{"lowerbound_khintchine", {"j", "lambda", "ratio", "se", "se_quadrupled"}, {}};
  double se_ratio = 0;
  for (size_t k = 0; k < kh.ratio_per_lambda.size(); ++k) {
    kt.add({kj, k, kh.ratio_per_lambda[k], kh.se_per_lambda[k], kh.se_quadrupled[k]});
    se_ratio += kh.se_per_lambda[k] / kh.se_quadrupled[k];
  }
  c.rep.csv.push_back(kt);
  c.rec("lb_khintchine_ratio", kh.ratio);
  c.rec("lb_khintchine_se_ratio", se_ratio / kh.ratio_per_lambda.size());
}

}  // namespace

void Table::add(std::initializer_list<Cell> cells) {
  std::vector<std::string> r;
  for (auto& c : cells) r.push_back(c.s);
  rows.push_back(std::move(r));
}

bool BenchReport::all_pass() const { return failures().empty(); }

std::vector<const Record*> BenchReport::failures() const {
  std::vector<const Record*> out;
  for (auto& s : suites)
    for (auto& r : s.records)
      if (!r.pass) out.push_back(&r);
  return out;
}

size_t BenchReport::record_count() const {
  size_t n = 0;
  for (auto& s : suites) n += s.records.size();
  return n;
}

const std::vector<ConfigKey>& config_keys() { return kKeys; }
const std::vector<RecordSpec>& record_specs() { return kRecords; }
const std::vector<std::string>& suite_names() { return kSuites; }

BenchConfig::BenchConfig() {
  for (auto& k : kKeys) values_[k.key] = k.value;
  for (auto& r : kRecords) windows_[r.name] = {r.lo, r.hi};
}

void BenchConfig::set(const std::string& key, const std::string& value) {
  if (key.rfind("threshold.", 0) == 0) {
    std::string name = key.substr(10);
    if (!find_spec(name)) fail(bad_argument, "unknown threshold record '" + name + "'");
    auto comma = value.find(',');
    if (comma == std::string::npos) fail(bad_argument, "threshold." + name + " needs lo,hi");
    double lo = parse_number(trim(value.substr(0, comma)), key);
    double hi = parse_number(trim(value.substr(comma + 1)), key);
    if (!(lo <= hi)) fail(bad_argument, "threshold." + name + " has lo > hi");
    windows_[name] = {lo, hi};
    return;
  }
  if (!find_key(key)) fail(bad_argument, "unknown config key '" + key + "'");
  values_[key] = value;
  if (key == "dim" || key == "seed" || key == "j_min" || key == "j_max" || key.rfind("suite.", 0) == 0) {
    if (!value.empty()) integer(key);
  } else {
    num(key);
  }
}

void BenchConfig::parse(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) fail(bad_argument, origin + ":" + std::to_string(no) + ": expected key = value");
    try {
      set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const Error& e) {
      fail(e.code, origin + ":" + std::to_string(no) + ": " + e.what());
    }
  }
}

void BenchConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(io_failure, "cannot read config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  parse(ss.str(), path);
}

const std::string& BenchConfig::str(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) fail(bad_argument, "unknown config key '" + key + "'");
  return it->second;
}

double BenchConfig::num(const std::string& key) const { return parse_number(str(key), key); }

int BenchConfig::integer(const std::string& key) const {
  const std::string& s = str(key);
  char* end = nullptr;
  long v = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || *end != 0) fail(bad_argument, "bad integer '" + s + "' for " + key);
  return int(v);
}

uint64_t BenchConfig::seed() const {
  const std::string& s = str("seed");
  char* end = nullptr;
  unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (s.empty() || *end != 0) fail(bad_argument, "bad seed '" + s + "'");
  return v;
}

bool BenchConfig::enabled(const std::string& suite) const { return integer("suite." + suite) != 0; }

std::pair<double, double> BenchConfig::window(const std::string& record) const {
  auto it = windows_.find(record);
  if (it == windows_.end()) fail(bad_argument, "unknown record '" + record + "'");
  return it->second;
}

SuiteReport run_suite(const BenchConfig& base, const std::string& suite) {
  if (std::find(kSuites.begin(), kSuites.end(), suite) == kSuites.end())
    fail(bad_argument, "unknown suite '" + suite + "'");
  BenchConfig cfg = base;
  // global j override onto the main range of each suite
  const std::map<std::string, std::vector<std::string>> main_range = {
      {"partition", {"", "partition.k_max"}},
      {"cm", {"cm.j_min", "cm.j_max"}},
      {"kernel", {"kernel.j_min", "kernel.j_max"}},
      {"trilinear", {"", "trilinear.j"}},
      {"hardy", {"hardy.ball_j_min", "hardy.ball_j_max"}},
      {"lowerbound", {"lowerbound.j_min", "lowerbound.j_max"}},
  };
  auto& keys = main_range.at(suite);
  if (!base.str("j_min").empty() && !keys[0].empty()) cfg.set(keys[0], base.str("j_min"));
  if (!base.str("j_max").empty()) cfg.set(keys[1], base.str("j_max"));

  SuiteReport rep;
  rep.suite = suite;
  int n = cfg.integer("dim");
  if (n < 1 || n > 3) fail(bad_argument, "dim must be 1, 2 or 3");
  Ctx c{cfg, rep, n};
  auto t0 = Clock::now();
  if (suite == "partition") suite_partition(c);
  if (suite == "cm") suite_cm(c);
  if (suite == "kernel") suite_kernel(c);
  if (suite == "trilinear") suite_trilinear(c);
  if (suite == "hardy") suite_hardy(c);
  if (suite == "lowerbound") suite_lowerbound(c);
  rep.runtime = since(t0);
  return rep;
}

BenchReport run_bench(const BenchConfig& cfg, const std::vector<std::string>& suites) {
  BenchReport r;
  r.dim = cfg.integer("dim");
  r.seed = cfg.seed();
  auto t0 = Clock::now();
  std::vector<std::string> order;
  for (auto& s : suites) {
    if (s == "all") {
      for (auto& k : kSuites)
        if (cfg.enabled(k)) order.push_back(k);
    } else {
      order.push_back(s);
    }
  }
  for (auto& s : order)
    if (std::find(kSuites.begin(), kSuites.end(), s) == kSuites.end()) fail(bad_argument, "unknown suite '" + s + "'");
  for (auto& k : kSuites)
    if (std::find(order.begin(), order.end(), k) != order.end()) r.suites.push_back(run_suite(cfg, k));
  r.runtime = since(t0);
  return r;
}

std::string table_text(const Table& t, char sep) {
  std::string out;
  for (size_t k = 0; k < t.header.size(); ++k) out += (k ? std::string(1, sep) : "") + t.header[k];
  out += '\n';
  for (auto& row : t.rows) {
    for (size_t k = 0; k < row.size(); ++k) out += (k ? std::string(1, sep) : "") + row[k];
    out += '\n';
  }
  return out;
}

std::string summary_json(const BenchReport& r) {
  using nlohmann::ordered_json;
  auto num = [](double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); };
  ordered_json j;
  j["environment"] = {{"compiler", __VERSION__},
                      {"fftw", std::string(fftw_version)},
                      {"jobs", jobs()},
                      {"dim", r.dim},
                      {"seed", r.seed}};
  ordered_json suites = ordered_json::object();
  for (auto& s : r.suites) {
    ordered_json recs = ordered_json::array();
    for (auto& rec : s.records) {
      double expected = std::isfinite(rec.lo) && std::isfinite(rec.hi) ? (rec.lo + rec.hi) / 2
                        : std::isfinite(rec.hi)                        ? rec.hi
                                                                       : rec.lo;
      double tol = std::isfinite(rec.lo) && std::isfinite(rec.hi) ? (rec.hi - rec.lo) / 2 : kInf;
      recs.push_back({{"name", rec.name},
                      {"anchor", rec.anchor},
                      {"provenance", rec.source},
                      {"criterion", rec.criterion},
                      {"measured", num(rec.measured)},
                      {"expected", num(expected)},
                      {"tol", num(tol)},
                      {"window", {num(rec.lo), num(rec.hi)}},
                      {"pass", rec.pass}});
    }
    suites[s.suite] = {{"runtime_s", s.runtime}, {"records", recs}};
  }
  j["suites"] = suites;
  j["runtime_s"] = r.runtime;
  j["all_pass"] = r.all_pass();
  return j.dump(2) + "\n";
}

namespace {
void write_text(const std::filesystem::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary);
  out << s;
  if (!out) fail(io_failure, "cannot write " + p.string());
}
}  // namespace

size_t write_plots(const BenchReport& r, const std::string& dir) {
  size_t count = 0;
  for (auto& s : r.suites)
    for (auto& t : s.plots) {
      if (!count) std::filesystem::create_directories(dir);
      write_text(std::filesystem::path(dir) / (t.name + ".tsv"), table_text(t, '\t'));
      ++count;
    }
  return count;
}

void write_report(const BenchReport& r, const std::string& dir) {
  if (r.suites.empty()) return;
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(io_failure, "cannot create " + dir + ": " + ec.message());
  for (auto& s : r.suites)
    for (auto& t : s.csv) write_text(fs::path(dir) / (t.name + ".csv"), table_text(t, ','));
  write_text(fs::path(dir) / "summary.json", summary_json(r));
  write_plots(r, (fs::path(dir) / "plots").string());
}

}  // namespace wl
