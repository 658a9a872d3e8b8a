#pragma once
#include <array>
#include <iosfwd>

#include "partition.hpp"

namespace wl {

struct BilinearSymbol {
  double m = 0;
  std::string label;
  // sigma(xi, eta) for xi, eta in R^n
  std::function<cplx(const double* xi, const double* eta, int n)> eval;
  cplx operator()(const double* xi, const double* eta, int n) const { return eval(xi, eta, n); }
};

enum class SymbolKind { constant, sjo, homogeneous_cut, random_smooth };
BilinearSymbol make_symbol(SymbolKind kind, double m = 0, uint64_t seed = 0);
BilinearSymbol make_symbol(const std::string& kind, double m = 0, uint64_t seed = 0);

struct SeminormTable {
  int dim = 0;  // 2n
  std::vector<std::vector<int>> alpha;
  std::vector<double> C;
  std::string violation;  // empty when the order looks consistent
  double max_at_order(int k) const;
};

SeminormTable seminorm_estimate(const BilinearSymbol& s, int n, int max_order, double max_radius = 1024);

// Periodization windows: psi~ = 1 on [1/2, 2], phi~ = 1 on [0, 2].
struct CMWindow {
  double step_sigma = 2;
  double psi_inner = 0.1;
  double outer = 2.6;
  double psi_w(double r) const;
  double phi_w(double r) const;
};

enum class CMRegion { I = 0, II = 1, III = 2 };

struct ExpansionTerm {
  CMRegion region;
  int ell = 0;
  int j = 0;
  std::array<int, 3> a{0, 0, 0}, b{0, 0, 0};
  cplx c;
};

// One (region, j, ell) block: modulation scales and outer masks.
struct CMBlock {
  CMRegion region;
  int ell = 0, j = 0;
  double s1 = 1, s2 = 1;   // xi-scale, eta-scale (arguments of the masks)
  bool ball1 = false, ball2 = false;  // mask is phi instead of psi
};

struct ProductSymbolExpansion {
  int n = 1;
  int j_max = 3;
  int A = 16;
  int M = 128;
  CMWindow window;
  LittlewoodPaley lp{1.0};
  std::vector<CMBlock> blocks;
  std::vector<ExpansionTerm> terms;  // ordered by (region, j, ell, a, b)
  std::vector<size_t> block_start;   // terms of blocks[i] are [block_start[i], block_start[i+1])
  double decay_C = 0;
  double L_report = 4;

  double mask1(const CMBlock& b, double r) const;
  double mask2(const CMBlock& b, double r) const;
  cplx eval(const double* xi, const double* eta) const;
};

std::vector<CMBlock> cm_blocks(int j_max);

struct CMOptions {
  int j_max = 8;
  int A = 16;
  int samples_per_axis = 0;  // 0 -> 8A
  double L_report = 4;
  int j_min = 0;
  bool only_region_I = false;
};

ProductSymbolExpansion cm_decompose(const BilinearSymbol& s, const LittlewoodPaley& lp, int n,
                                    const CMOptions& opt, const CMWindow& w = {});
// Coefficients c(a, b) of one block for |a|_inf, |b|_inf <= A, lexicographic in (a, b).
std::vector<cplx> cm_block_coefficients(const BilinearSymbol& s, const CMBlock& blk, int n, int A, int M,
                                        const CMWindow& w);
// c(a, 0) of region I at scale j for |a|_inf <= A, lexicographic in a (offset by A);
// the eta integral is done first on Mv points per axis.
struct AxisCoefficients {
  int n = 1, A = 0;
  std::vector<std::array<int, 3>> a;
  std::vector<cplx> c;
  // max over entries of |c(a,0)| (1+|a|)^L
  double tail_constant(double L) const;
};
AxisCoefficients cm_axis_coefficients(const BilinearSymbol& s, int j, int n, int A, const CMWindow& w,
                                      int Mv = 32);

double region_mask_sum(const LittlewoodPaley& lp, const double* xi, const double* eta, int n, int j_max);

struct ReconstructionReport {
  std::vector<cplx> values;
  double max_rel_error = 0;
  int points_used = 0;
};
ReconstructionReport reconstruct_symbol(const ProductSymbolExpansion& e, const BilinearSymbol& s,
                                        const std::vector<std::array<double, 6>>& pts,
                                        double mask_floor = 1e-3);

void write_expansion_csv(const ProductSymbolExpansion& e, std::ostream& os);

}  // namespace wl
