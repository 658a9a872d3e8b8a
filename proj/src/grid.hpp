#pragma once
#include <array>
#include <cmath>

#include "common.hpp"

namespace wl {

struct GridSpec {
  int dim = 2;
  int N = 256;
  double X = 8;

  double h() const { return X / N; }
  double dk() const { return 2 * pi / X; }
  double nyquist() const { return pi * N / X; }
  size_t size() const;
  double cell() const;  // h^n
  bool operator==(const GridSpec& o) const { return dim == o.dim && N == o.N && X == o.X; }
};

GridSpec make_grid(int dim, int N, double X);

// Storage is FFT order on every axis: index i carries signed lattice index i < N/2 ? i : i - N.
inline int signed_index(int i, int N) { return i < N / 2 ? i : i - N; }
// Signed integer coordinates of every flat index, and the inverse (periodic).
std::vector<std::array<int, 3>> lattice_coords(const GridSpec& g);
size_t flat_index(const GridSpec& g, const std::array<int, 3>& m);

struct SpatialField {
  GridSpec grid;
  std::vector<cplx> v;
};
struct SpectralField {
  GridSpec grid;
  std::vector<cplx> v;
};

SpatialField zeros(const GridSpec& g);

// Visits every lattice point with its flat index and signed coordinates (scaled by step).
template <class F>
void for_each_point(const GridSpec& g, double step, F&& fn) {
  std::array<double, 3> c{0, 0, 0};
  int N = g.N;
  if (g.dim == 1) {
    for (int i = 0; i < N; ++i) {
      c[0] = step * signed_index(i, N);
      fn(size_t(i), c);
    }
  } else if (g.dim == 2) {
    size_t k = 0;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j, ++k) {
        c[0] = step * signed_index(i, N);
        c[1] = step * signed_index(j, N);
        fn(k, c);
      }
  } else {
    size_t k = 0;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        for (int l = 0; l < N; ++l, ++k) {
          c[0] = step * signed_index(i, N);
          c[1] = step * signed_index(j, N);
          c[2] = step * signed_index(l, N);
          fn(k, c);
        }
  }
}

inline double norm3(const std::array<double, 3>& c) {
  return std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
}

SpectralField to_spectral(const SpatialField& f);
SpatialField from_spectral(const SpectralField& F);
// In-place raw transforms without scaling; sign -1 forward, +1 inverse.
void fft_inplace(const GridSpec& g, std::vector<cplx>& a, int sign);
// Raw transform of arbitrary rank on a row-major array of extents n[0..rank).
void fft_rank(int rank, const int* n, cplx* data, int sign);

struct Region {
  enum Kind { whole, ball, annulus, shell } kind = whole;
  std::array<double, 3> center{0, 0, 0};
  double inner = 0, outer = 0;

  static Region Whole() { return {}; }
  static Region Ball(double r, std::array<double, 3> c = {0, 0, 0});
  static Region Annulus(double a, double b);
  static Region Shell(int k);
  bool contains(const std::array<double, 3>& x) const;
};

// Rejects regions that do not fit in [-X/2, X/2)^n.
void check_region(const GridSpec& g, const Region& r);
double lp_norm(const SpatialField& f, double p, const Region& r);
// Same as lp_norm for real sample weights |w|; p = infinity via std::numeric_limits.
double lp_norm_abs(const GridSpec& g, const std::vector<double>& absval, double p, const Region& r);

// Aliasing guard for a cutoff supported in |xi| <= a dilated by 2^j.
void check_guard(const GridSpec& g, double a, int j);
bool guard_ok(const GridSpec& g, double a, int j);

}  // namespace wl
