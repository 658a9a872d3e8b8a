#include "common.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

namespace wl {

namespace {
template <class T>
T pairwise(const T* x, size_t n) {
  if (n <= 16) {
    T s{};
    for (size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  size_t h = n / 2;
  return pairwise(x, h) + pairwise(x + h, n - h);
}
int g_jobs = 1;
}  // namespace

double psum(const double* x, size_t n) { return pairwise(x, n); }
cplx psum(const cplx* x, size_t n) { return pairwise(x, n); }

LineFit linfit(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, "linfit needs at least two points");
  double n = x.size(), mx = 0, my = 0;
  for (size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
  mx /= n, my /= n;
  double sxy = 0, sxx = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  return f;
}

double log2_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> ly(y.size());
  for (size_t i = 0; i < y.size(); ++i) ly[i] = std::log2(y[i]);
  return linfit(x, ly).slope;
}

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t derive_seed(uint64_t base, std::initializer_list<int64_t> tags) {
  uint64_t s = splitmix64(base);
  for (auto t : tags) s = splitmix64(s ^ static_cast<uint64_t>(t));
  return s;
}

void set_jobs(int j) { g_jobs = j < 1 ? 1 : j; }
int jobs() { return g_jobs; }

void parallel_for(size_t count, const std::function<void(size_t)>& fn) {
  int nt = std::min<size_t>(g_jobs, count);
  if (nt <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr err;
  std::mutex m;
  std::vector<std::thread> pool;
  for (int t = 0; t < nt; ++t)
    pool.emplace_back([&] {
      for (size_t i; (i = next++) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(m);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0);
  w.assign(n, 0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(pi * (i + 0.75) / (n + 0.5)), dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = z;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
        p0 = p1, p1 = p2;
      }
      if (n == 1) p0 = 1, p1 = z;
      dp = n * (z * p1 - p0) / (z * z - 1);
      double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = -z, x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2 / ((1 - z * z) * dp * dp);
  }
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace wl
