#pragma once
#include <array>
#include <memory>

#include "common.hpp"

namespace wl {

// Normalized integral of exp(-sigma/(t(1-t))) over [0, t]; 0 below 0, 1 above 1.
class BumpStep {
 public:
  explicit BumpStep(double sharpness, int nodes = 4096);
  double operator()(double t) const;
  double sharpness() const { return sigma_; }

 private:
  double sigma_;
  int n_;
  std::vector<double> s_, d1_, d2_;
};

// h(t)/(h(t)+h(1-t)) with h(t) = exp(-sigma/t).
struct ClosedStep {
  double sigma = 1;
  double operator()(double t) const;
};

class LittlewoodPaley {
 public:
  explicit LittlewoodPaley(double sharpness = 1);

  double g(double r) const { return 1 - (*step_)(r - 1); }
  double phi(double r) const { return g(r); }
  double zeta(double r) const { return 1 - g(r); }
  double psi(double r) const { return g(r) - g(2 * r); }
  double psi_j(int j, double r) const;
  double phi_scaled(int k, double r) const { return phi(std::ldexp(r, -k)); }
  double sharpness() const { return step_->sharpness(); }

 private:
  std::shared_ptr<BumpStep> step_;
};

LittlewoodPaley build_partition(double sharpness);

enum class Component { psi_j, varphi, zeta, varphi_scaled };
double eval_component(const LittlewoodPaley& lp, Component kind, int j, const double* xi, int dim);

// Radial cutoff theta(|xi|) supported in inner <= |xi| <= a.
struct Cutoff {
  std::string name;
  double a = 2;
  double inner = 0;
  std::function<double(double)> f;

  double operator()(double r) const { return f(r); }
  bool annular() const { return inner > 0; }
};

Cutoff cutoff_psi(const LittlewoodPaley& lp);
// phi(xi / c): equal to 1 on |xi| <= c, supported in |xi| <= 2c.
Cutoff cutoff_phi(const LittlewoodPaley& lp, double c = 1);
// exp(1 - 1/(1-u^2)), u = (2s - 2.5)/1.5, on 1/2 <= s <= 2.
Cutoff cutoff_annular_bump();

// "psi", "bump", "phi" or "phi:c".
Cutoff cutoff_by_name(const LittlewoodPaley& lp, const std::string& name);

// Sup norms of radial finite-difference derivatives of orders 0..M.
std::vector<double> radial_cm_norms(const Cutoff& c, int M, double step = 1e-2);

}  // namespace wl
