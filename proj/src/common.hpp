#pragma once
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace wl {

using cplx = std::complex<double>;
constexpr double pi = 3.14159265358979323846;

enum ErrorCode : int {
  ok = 0,
  bad_argument = 1,
  guard_violation = 2,
  region_exceeds_box = 3,
  not_supported = 4,
  refused = 5,
  io_failure = 6,
};

struct Error : std::runtime_error {
  int code;
  Error(int c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

[[noreturn]] inline void fail(int code, const std::string& msg) { throw Error(code, msg); }
inline void require(bool cond, const std::string& msg) {
  if (!cond) fail(bad_argument, msg);
}

// Pairwise summation; order depends only on the length.
double psum(const double* x, size_t n);
cplx psum(const cplx* x, size_t n);
inline double psum(const std::vector<double>& v) { return psum(v.data(), v.size()); }
inline cplx psum(const std::vector<cplx>& v) { return psum(v.data(), v.size()); }

struct LineFit {
  double slope = 0, intercept = 0;
};
LineFit linfit(const std::vector<double>& x, const std::vector<double>& y);
// slope of log2(y) against x
double log2_slope(const std::vector<double>& x, const std::vector<double>& y);

uint64_t splitmix64(uint64_t x);
// Seed derived from a base seed and a list of integer tags.
uint64_t derive_seed(uint64_t base, std::initializer_list<int64_t> tags);
using Rng = std::mt19937_64;

// Runs fn(i) for i in [0, count) on up to jobs threads; results land in slot i.
void parallel_for(size_t count, const std::function<void(size_t)>& fn);
void set_jobs(int jobs);
int jobs();

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

std::string fmt17(double v);

}  // namespace wl
