#pragma once
#include "grid.hpp"
#include "partition.hpp"

namespace wl {

enum class KernelMethod { grid_fft, radial_quadrature };

// Multiplier e^{i|xi|} theta(2^-j xi), optionally times an extra radial factor.
struct KernelSpec {
  Cutoff cutoff;
  int j = 4;
  bool phase_on = true;
  std::function<double(double)> extra;  // e.g. zeta or phi applied at |xi| (unscaled)
  cplx multiplier(double r) const;
  double support() const { return cutoff.a * std::ldexp(1.0, j); }
};

struct WaveKernel {
  KernelSpec spec;
  KernelMethod method = KernelMethod::grid_fft;
  SpatialField samples;        // grid_fft
  std::vector<double> radii;   // radial_quadrature
  std::vector<cplx> values;    // radial_quadrature
};

WaveKernel compute_kernel(const KernelSpec& spec, const GridSpec& g, KernelMethod method = KernelMethod::grid_fft,
                          const std::vector<double>& radii = {});

// Radial transform of the multiplier at the given radii (dimension n), unit panels with 16-node rule.
std::vector<cplx> radial_kernel(const KernelSpec& spec, int n, const std::vector<double>& radii);

struct EnvelopeResult {
  double c = 0;
  double argmax_radius = 0;
  double peak_radius = 0;  // where |K| itself is largest
};
EnvelopeResult envelope_constant(const WaveKernel& K, double N);

struct FarFieldResult {
  double far = 0;  // sup_{|x|>2} |K| |x|^{n+1}
  double low = 0;  // sup |K_low| (1+|x|)^{n+1}
};
// K uses e^{i|xi|} zeta(xi) theta(2^-j xi); K_low uses e^{i|xi|} phi(xi) theta(2^-j xi).
FarFieldResult far_field_and_lowfreq_check(const Cutoff& theta, const LittlewoodPaley& lp, int j,
                                           const GridSpec& g);
// sup_{|x|>2} |2^{jn} theta^vee(2^j x)| |x|^{n+1}
double plain_far_field(const Cutoff& theta, int j, const GridSpec& g);

struct SlopeScan {
  std::vector<double> j, norms;
  double slope = 0;
};
SlopeScan lp_slope_scan(const Cutoff& theta, double p, const std::vector<int>& js, bool phase_on,
                        const GridSpec& g);
// (2 pi)^{-n/2} 2^{jn/2} ||theta||_2 with the continuous norm by radial quadrature
double plancherel_l2(const Cutoff& theta, int j, int n);
// the discrete lattice version of the same identity
double plancherel_l2_lattice(const Cutoff& theta, int j, const GridSpec& g);

struct SphericalNet {
  int j = 0, n = 2;
  double separation = 0;
  std::vector<std::array<double, 3>> points;
};
SphericalNet build_spherical_net(int j, int n);
double net_min_distance(const SphericalNet& net);
// max over samples of the distance to the nearest net point
double net_covering_radius(const SphericalNet& net, int samples, uint64_t seed);
double sphere_area(int n);

struct AngularReport {
  int pieces = 0;
  double reconstruction_rel_l2 = 0;
  std::vector<double> envelope;          // per-nu best constant
  std::vector<double> support_measure;   // per-nu spectral support measure
  double partition_residual = 0;         // max |sum_nu chi_nu - 1| over sampled directions
};
double angular_cutoff(const SphericalNet& net, size_t nu, const std::array<double, 3>& dir);
AngularReport angular_decompose(const Cutoff& theta, int j, const SphericalNet& net, const GridSpec& g,
                                int L = 3);

}  // namespace wl
