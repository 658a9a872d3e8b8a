#include "grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <limits>
#include <mutex>

namespace wl {

namespace {
std::mutex planner_mutex;
bool pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

size_t GridSpec::size() const {
  size_t s = 1;
  for (int d = 0; d < dim; ++d) s *= size_t(N);
  return s;
}

double GridSpec::cell() const { return std::pow(h(), dim); }

GridSpec make_grid(int dim, int N, double X) {
  if (dim < 1 || dim > 3) fail(bad_argument, "dim must be 1, 2 or 3");
  if (N < 2 || N % 2) fail(bad_argument, "points_per_axis must be even");
  if (!pow2(N)) fail(bad_argument, "points_per_axis must be a power of two");
  if (!(X > 0) || !std::isfinite(X)) fail(bad_argument, "box_length must be positive");
  return {dim, N, X};
}

std::vector<std::array<int, 3>> lattice_coords(const GridSpec& g) {
  std::vector<std::array<int, 3>> c(g.size());
  for_each_point(g, 1.0, [&](size_t k, const std::array<double, 3>& x) {
    c[k] = {int(x[0]), int(x[1]), int(x[2])};
  });
  return c;
}

size_t flat_index(const GridSpec& g, const std::array<int, 3>& m) {
  size_t k = 0;
  for (int d = 0; d < g.dim; ++d) {
    int i = ((m[d] % g.N) + g.N) % g.N;
    k = k * g.N + size_t(i);
  }
  return k;
}

SpatialField zeros(const GridSpec& g) { return {g, std::vector<cplx>(g.size())}; }

void fft_inplace(const GridSpec& g, std::vector<cplx>& a, int sign) {
  int n[3] = {g.N, g.N, g.N};
  fft_rank(g.dim, n, a.data(), sign);
}

void fft_rank(int rank, const int* n, cplx* data, int sign) {
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lk(planner_mutex);
    plan = fftw_plan_dft(rank, n, p, p, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lk(planner_mutex);
  fftw_destroy_plan(plan);
}

SpectralField to_spectral(const SpatialField& f) {
  SpectralField F{f.grid, f.v};
  fft_inplace(f.grid, F.v, -1);
  double s = f.grid.cell();
  for (auto& z : F.v) z *= s;
  return F;
}

SpatialField from_spectral(const SpectralField& F) {
  SpatialField f{F.grid, F.v};
  fft_inplace(F.grid, f.v, +1);
  double s = 1 / std::pow(F.grid.X, F.grid.dim);
  for (auto& z : f.v) z *= s;
  return f;
}

Region Region::Ball(double r, std::array<double, 3> c) {
  require(r >= 0, "ball radius must be nonnegative");
  Region g;
  g.kind = ball;
  g.outer = r;
  g.center = c;
  return g;
}

Region Region::Annulus(double a, double b) {
  require(a >= 0 && a < b, "annulus needs 0 <= inner < outer");
  Region g;
  g.kind = annulus;
  g.inner = a;
  g.outer = b;
  return g;
}

Region Region::Shell(int k) {
  Region g = Annulus(std::ldexp(1.0, k), std::ldexp(1.0, k + 1));
  g.kind = shell;
  return g;
}

bool Region::contains(const std::array<double, 3>& x) const {
  if (kind == whole) return true;
  std::array<double, 3> d{x[0] - center[0], x[1] - center[1], x[2] - center[2]};
  double r = norm3(d);
  if (kind == ball) return r < outer;
  return r >= inner && r < outer;
}

void check_region(const GridSpec& g, const Region& r) {
  if (r.kind == Region::whole) return;
  double reach = r.outer;
  for (int d = 0; d < g.dim; ++d) reach = std::max(reach, std::abs(r.center[d]) + r.outer);
  if (reach > g.X / 2) fail(region_exceeds_box, "region exceeds box");
}

double lp_norm_abs(const GridSpec& g, const std::vector<double>& a, double p, const Region& r) {
  require(p >= 1, "p must be in [1, inf]");
  check_region(g, r);
  bool inf = std::isinf(p);
  std::vector<double> terms(a.size(), 0.0);
  double mx = 0;
  for_each_point(g, g.h(), [&](size_t k, const std::array<double, 3>& x) {
    if (!r.contains(x)) return;
    if (inf)
      mx = std::max(mx, a[k]);
    else
      terms[k] = p == 1 ? a[k] : p == 2 ? a[k] * a[k] : std::pow(a[k], p);
  });
  if (inf) return mx;
  double s = psum(terms) * g.cell();
  return p == 1 ? s : p == 2 ? std::sqrt(s) : std::pow(s, 1 / p);
}

double lp_norm(const SpatialField& f, double p, const Region& r) {
  std::vector<double> a(f.v.size());
  for (size_t i = 0; i < a.size(); ++i) a[i] = std::abs(f.v[i]);
  return lp_norm_abs(f.grid, a, p, r);
}

bool guard_ok(const GridSpec& g, double a, int j) { return a * std::ldexp(1.0, j) < 0.9 * g.nyquist(); }

void check_guard(const GridSpec& g, double a, int j) {
  if (!guard_ok(g, a, j))
    fail(guard_violation, "aliasing guard violated at j=" + std::to_string(j) + " N=" +
                              std::to_string(g.N) + " X=" + fmt17(g.X));
}

}  // namespace wl
