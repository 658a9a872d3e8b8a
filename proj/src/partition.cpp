#include "partition.hpp"

#include <cmath>
#include <cstdlib>

namespace wl {

BumpStep::BumpStep(double sharpness, int nodes) : sigma_(sharpness), n_(nodes) {
  if (!(sharpness > 0)) fail(bad_argument, "sharpness must be positive");
  auto b = [&](long double t) -> long double {
    if (t <= 0 || t >= 1) return 0;
    return std::exp(-(long double)sigma_ / (t * (1 - t)));
  };
  std::vector<double> gx, gw;
  gauss_legendre(12, gx, gw);
  std::vector<long double> cum(n_ + 1, 0);
  long double h = 1.0L / n_;
  for (int i = 0; i < n_; ++i) {
    long double s = 0, a = i * h;
    for (size_t q = 0; q < gx.size(); ++q) s += gw[q] * b(a + h * (gx[q] + 1) / 2);
    cum[i + 1] = cum[i] + s * h / 2;
  }
  long double Z = cum[n_];
  s_.resize(n_ + 1), d1_.resize(n_ + 1), d2_.resize(n_ + 1);
  for (int i = 0; i <= n_; ++i) {
    long double t = i * h, bt = b(t);
    s_[i] = double(cum[i] / Z);
    d1_[i] = double(bt / Z);
    d2_[i] = (bt == 0) ? 0.0 : double(bt * sigma_ * (1 - 2 * t) / ((t * (1 - t)) * (t * (1 - t))) / Z);
  }
  s_[0] = 0, s_[n_] = 1;
}

double BumpStep::operator()(double t) const {
  if (t <= 0) return 0;
  if (t >= 1) return 1;
  double x = t * n_;
  int i = std::min(int(x), n_ - 1);
  double u = x - i, v = 1 - u, H = 1.0 / n_;
  auto h0 = [](double u) { return 1 + u * u * u * (-10 + u * (15 - 6 * u)); };
  auto h1 = [](double u) { return u + u * u * u * (-6 + u * (8 - 3 * u)); };
  auto h2 = [](double u) { return u * u * (1 + u * (-3 + u * (3 - u))) / 2; };
  return s_[i] * h0(u) + s_[i + 1] * h0(v) + H * (d1_[i] * h1(u) - d1_[i + 1] * h1(v)) +
         H * H * (d2_[i] * h2(u) + d2_[i + 1] * h2(v));
}

double ClosedStep::operator()(double t) const {
  if (t <= 0) return 0;
  if (t >= 1) return 1;
  double a = std::exp(-sigma / t), b = std::exp(-sigma / (1 - t));
  return a / (a + b);
}

LittlewoodPaley::LittlewoodPaley(double sharpness) : step_(std::make_shared<BumpStep>(sharpness)) {}

double LittlewoodPaley::psi_j(int j, double r) const {
  if (j < 0) fail(bad_argument, "j must be nonnegative");
  return j == 0 ? phi(r) : psi(std::ldexp(r, -j));
}

LittlewoodPaley build_partition(double sharpness) { return LittlewoodPaley(sharpness); }

double eval_component(const LittlewoodPaley& lp, Component kind, int j, const double* xi, int dim) {
  double r = 0;
  for (int d = 0; d < dim; ++d) r += xi[d] * xi[d];
  r = std::sqrt(r);
  switch (kind) {
    case Component::psi_j: return lp.psi_j(j, r);
    case Component::varphi: return lp.phi(r);
    case Component::zeta: return lp.zeta(r);
    case Component::varphi_scaled:
      if (j < 0) fail(bad_argument, "k must be nonnegative");
      return lp.phi_scaled(j, r);
  }
  return 0;
}

Cutoff cutoff_psi(const LittlewoodPaley& lp) {
  return {"psi", 2, 0.5, [lp](double r) { return lp.psi(r); }};
}

Cutoff cutoff_phi(const LittlewoodPaley& lp, double c) {
  return {c == 1 ? "phi" : "phi(./" + fmt17(c) + ")", 2 * c, 0,
          [lp, c](double r) { return lp.phi(r / c); }};
}

Cutoff cutoff_annular_bump() {
  return {"annular_bump", 2, 0.5, [](double s) {
            double u = (2 * s - 2.5) / 1.5;
            if (std::abs(u) >= 1) return 0.0;
            return std::exp(1 - 1 / (1 - u * u));
          }};
}

Cutoff cutoff_by_name(const LittlewoodPaley& lp, const std::string& name) {
  if (name == "psi") return cutoff_psi(lp);
  if (name == "bump") return cutoff_annular_bump();
  if (name == "phi") return cutoff_phi(lp);
  if (name.rfind("phi:", 0) == 0) {
    char* end = nullptr;
    double c = std::strtod(name.c_str() + 4, &end);
    if (*end == 0 && c > 0) return cutoff_phi(lp, c);
  }
  fail(bad_argument, "unknown cutoff '" + name + "'");
}

std::vector<double> radial_cm_norms(const Cutoff& c, int M, double step) {
  std::vector<double> out(M + 1, 0);
  for (double r = 0; r <= c.a + 0.5; r += step / 4) {
    for (int m = 0; m <= M; ++m) {
      // central difference of order m
      double s = 0, binom = 1;
      for (int k = 0; k <= m; ++k) {
        double x = r + (m / 2.0 - k) * step;
        s += ((k % 2) ? -1 : 1) * binom * c(std::abs(x));
        binom = binom * (m - k) / (k + 1);
      }
      out[m] = std::max(out[m], std::abs(s) / std::pow(step, m));
    }
  }
  return out;
}

}  // namespace wl
