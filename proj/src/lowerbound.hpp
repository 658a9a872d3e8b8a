#pragma once
#include "partition.hpp"

namespace wl {

// G_j(r) = (e^{i|xi|} psi(2^-j xi))^vee at |x| = r, n = 2; requires a nonnegative radial psi on [1/2, 2].
std::vector<cplx> radial_kernel_table(const Cutoff& psi, int j, const std::vector<double>& radii,
                                      bool phase_on = true);

// Uniform table of G_j on [0, tmax], spacing 2^-j / per_scale, linear interpolation.
struct GTable {
  int j = 0;
  double dt = 0;
  std::vector<cplx> v;
  cplx operator()(double r) const;
  // sup |G| (1 + 2^j |1 - t|)^3 2^{-1.5 j} over the table
  double c3() const;
};
GTable make_g_table(const Cutoff& psi, int j, bool phase_on = true, double tmax = 3.2, int per_scale = 64);

struct PlateauReport {
  double omega = pi / 4;
  std::vector<int> js;
  std::vector<double> ladder;
  std::vector<std::vector<double>> deviation;  // [ladder index][j index]
  std::vector<double> c0;                      // per ladder entry, from the largest j
  bool found = false;
  double delta = 0, c0_chosen = 0;
  int j0 = 0;
  double c0_top_two_rel = 0;  // |c0(j_max-1) - c0(j_max)| / c0(j_max) at the chosen delta
  bool monotone = true;       // deviation nondecreasing as delta doubles
};
PlateauReport plateau_check(const Cutoff& psi, const std::vector<int>& js,
                            const std::vector<double>& ladder = {1, 0.5, 0.25, 0.125, 0.0625, 0.03125});

struct CountingFacts {
  int j = 0;
  double delta = 0, delta_prime = 0;
  double card_I = 0, card_I_ratio = 0;  // ratio to 2 pi (delta' 2^-j)^-2
  std::vector<double> E_scaled;         // |E_mu| 2^{2j} for sampled interior mu
  double E_fraction_in_window = 0;      // fraction with |E_mu| 2^{2j} / delta^2 in [1/8, 8]
  double E_fraction_raw = 0;            // fraction with |E_mu| 2^{2j} in [1/8, 8]
  double overlap_count = 0;             // mean over sampled nu of card{mu : overlap > 0}
  double admissible_count = 0;          // mean over sampled lambda of admissible nu
  double overlap_max_over_cell = 0;     // max overlap / |Q| (must be <= 1)
};
CountingFacts counting_facts(int j, double delta, double delta_prime, int mu_samples, int nu_samples,
                             uint64_t seed, int subcells = 4);

struct LhsOptions {
  double delta = 1.0 / 16, delta_prime = 1.0 / 128;
  double T = 32;
  int nrc = 8, nr = 200, nphi_per = 64, table_per_scale = 64;
  bool tensor = false;  // 2x2 tensor rule in each cube instead of the midpoint
  bool phase = true;
  bool zero_overlaps = false;
  double tail_cap = 0.05;
};
struct LhsResult {
  int j = 0;
  double lhs = 0;
  double tail_bound = 0;  // relative
  double c3 = 0;
};
// Continuum evaluation of the sum over lambda of the l2_nu norms; refuses a tail bound above 5%.
LhsResult evaluate_lhs(const Cutoff& psi, int j, const LhsOptions& opt);
// Direct lattice enumeration (small j only).
LhsResult evaluate_lhs_exact(const Cutoff& psi, int j, const LhsOptions& opt, int subcells = 4,
                             bool quarter_turn = false);

struct GrowthFit {
  double slope = 0, m_bound = 0, target = 0;
};
GrowthFit growth_slope_and_m_bound(const std::vector<int>& js, const std::vector<double>& lhs, int n = 2);

struct KhintchineReport {
  int j = 0, trials = 0;
  std::vector<double> ratio_per_lambda, se_per_lambda, se_quadrupled;
  double ratio = 0;
};
KhintchineReport khintchine_mc_check(const Cutoff& psi, int j, const LhsOptions& opt, int trials, uint64_t seed,
                                     int lambdas = 8, bool single_nu = false);

}  // namespace wl
