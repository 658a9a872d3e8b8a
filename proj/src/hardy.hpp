#pragma once
#include "grid.hpp"
#include "partition.hpp"

namespace wl {

enum class AtomProfile { plateau, odd_bump, random_signed, sign_dipole, matched };
AtomProfile atom_profile_from_string(const std::string& s);
std::string to_string(AtomProfile p);

struct AtomSpec {
  double r = 1;
  AtomProfile profile = AtomProfile::plateau;
  uint64_t seed = 0;
};

// Supported in |x| <= r, max|h| = r^-n, discrete mean zero on the support when r < 1.
SpatialField make_atom(const AtomSpec& spec, const GridSpec& g);
// Conjugate phase of y -> K(x0 - y) on the support, so that S h peaks near x0.
SpatialField make_matched_atom(double r, const SpatialField& K, const std::array<double, 3>& x0);

struct AtomRow {
  int j = 0;
  double r = 0;
  std::string profile;
  double sup = 0, bound = 0, ratio = 0;
};
struct AtomScan {
  std::vector<AtomRow> rows;  // one per (j, r, profile)
  std::vector<AtomRow> best;  // max over profiles per (j, r)
  double spread = 0;          // max ratio / min ratio over best
};
AtomScan atom_sup_scan(const Cutoff& theta3, const std::vector<int>& js, const std::vector<double>& rs,
                       const GridSpec& g);

// f families: const, rand (seeded +-1 cells), phase (band-limited unit modulus), focus.
struct SplitRow {
  int j = 0, k = 0;
  std::string split, family, atom;
  double r = 0, norm = 0;
};
struct SplitSlope {
  std::string split;
  double slope = 0;
};

struct AnnulusScan {
  std::vector<SplitRow> rows;
  std::vector<SplitRow> best;      // max over families per (j, k, split)
  std::vector<SplitSlope> slopes;  // slope in k of best, per (j, split), j-major
  std::vector<int> slope_j;
  double triangle_gap = 0;         // max of unsplit - sum of splits (should be <= 0)
};
AnnulusScan annulus_decay_scan(const Cutoff& theta, const std::vector<int>& js, const std::vector<int>& ks,
                               const std::vector<std::string>& families, const GridSpec& g, uint64_t seed);

struct BallScan {
  std::vector<SplitRow> rows;
  std::vector<SplitRow> best;
  std::vector<SplitSlope> slopes;     // tracking atom, slope in j of best
  std::vector<double> partial_sums;   // fixed r = 1 atom, sum of 2^{-j(n+1)/2} totals
  double cauchy_increase = 0;         // (S_last - S_{last-2}) / S_last
};
// Tracking atom: sign dipole with r = track_c 2^-j; the Cauchy check uses an r = 1 plateau atom.
BallScan ball_growth_scan(const Cutoff& theta, const std::vector<int>& js, const std::vector<std::string>& families,
                          const GridSpec& g, uint64_t seed, double track_c = 8);

}  // namespace wl
