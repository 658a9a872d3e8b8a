#pragma once
#include "grid.hpp"
#include "symbol.hpp"

namespace wl {

// m(xi) applied spectrally; m receives the signed frequency vector.
SpatialField apply_multiplier(const SpatialField& f, const std::function<cplx(const std::array<double, 3>&)>& m);

// e^{i s|D|} theta(2^-j D) f with s = phase_sign when phase_on, else theta(2^-j D) f.
SpatialField apply_half_wave(const Cutoff& theta, int j, bool phase_on, const SpatialField& f,
                             double phase_sign = 1);

// Term-by-term: sum of products of two linear multipliers.
SpatialField apply_bilinear(const ProductSymbolExpansion& e, const SpatialField& f, const SpatialField& g);

// Brute-force double-frequency sum. Optional index lists restrict the xi and eta lattices.
constexpr size_t kDensePairCap = size_t(1) << 24;
SpatialField apply_bilinear_dense(const BilinearSymbol& s, const SpatialField& f, const SpatialField& g,
                                  const std::vector<size_t>* xi_set = nullptr,
                                  const std::vector<size_t>* eta_set = nullptr, size_t cap = kDensePairCap);

struct CutoffTriple {
  Cutoff t1, t2, t3;
  bool support_condition_met = false;
};
// Sets the flag by sampling theta3 over the sum set of the first two supports.
CutoffTriple make_triple(const Cutoff& t1, const Cutoff& t2, const Cutoff& t3);

cplx trilinear_form(const CutoffTriple& tr, int j, bool phase_on, const SpatialField& f, const SpatialField& g,
                    const SpatialField& h);

// Riemann sum of u v over the grid.
cplx pair_integral(const SpatialField& u, const SpatialField& v);

struct DualityReport {
  double residual = 0;
  std::vector<double> per_trial;
  std::vector<cplx> lhs, rhs;
  bool condition_met = false;
};
// max over trials of |int T_sigma_j(f,g) h - trilinear_form| / max(|lhs|, |rhs|).
// A triple without the support condition is refused unless allow_violated is set.
DualityReport duality_residual(const CutoffTriple& tr, int j, int trials, uint64_t seed, const GridSpec& g,
                               bool allow_violated = false);

SpatialField random_field(const GridSpec& g, uint64_t seed);

}  // namespace wl
