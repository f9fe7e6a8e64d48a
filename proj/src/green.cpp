#include "susygreen/green.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "susygreen/errors.hpp"

namespace susy {

GreenFunction::GreenFunction(WaveSolution fl, WaveSolution fr, Complex wronskian, KernelLabel label)
    : fl_(std::move(fl)), fr_(std::move(fr)), W_(wronskian), label_(label) {
  require_compatible(fl_, fr_);
  if (W_ == Complex(0.0)) throw DegenerateError("kernel with vanishing Wronskian");
}

Complex GreenFunction::operator()(double x, double y) const {
  const double lo = std::min(x, y), hi = std::max(x, y);
  const Complex kappa = energy().kappa();
  const Complex phase =
      std::exp(I * kappa * (static_cast<double>(fl_.phase_sign()) * lo + static_cast<double>(fr_.phase_sign()) * hi));
  return fl_.scaled(lo).f * fr_.scaled(hi).f * phase / W_;
}

Complex GreenFunction::dx(double x, double y) const {
  const Complex kappa = energy().kappa();
  const double sl = fl_.phase_sign(), sr = fr_.phase_sign();
  if (x < y) {
    return fl_.scaled(x).df * fr_.scaled(y).f * std::exp(I * kappa * (sl * x + sr * y)) / W_;
  }
  return fl_.scaled(y).f * fr_.scaled(x).df * std::exp(I * kappa * (sl * y + sr * x)) / W_;
}

GreenFunction assemble_green(const WaveSolution& fl, const WaveSolution& fr, KernelLabel label) {
  const auto profile = wronskian_profile(fr, fl);
  return GreenFunction(fl, fr, profile.W0, label);
}

Complex jump_value(const GreenFunction& G, double y, double step) {
  if (!(y - 2.0 * step > G.x_min() && y + 2.0 * step < G.x_max())) {
    throw DomainError("jump_check point must lie strictly inside the grid");
  }
  const Complex g0 = G(y, y);
  const Complex right = (-3.0 * g0 + 4.0 * G(y + step, y) - G(y + 2.0 * step, y)) / (2.0 * step);
  const Complex left = (3.0 * g0 - 4.0 * G(y - step, y) + G(y - 2.0 * step, y)) / (2.0 * step);
  return right - left;
}

double jump_check(const GreenFunction& G, double y, double step) { return jump_value(G, y, step).real(); }

double kernel_ode_residual(const GreenFunction& G, double x, double y, double step) {
  const Complex g = G(x, y);
  const Complex d2 = (-G(x + 2.0 * step, y) + 16.0 * G(x + step, y) - 30.0 * g + 16.0 * G(x - step, y) -
                      G(x - 2.0 * step, y)) /
                     (12.0 * step * step);
  const Complex r = -d2 + (G.potential()(x) - G.energy().energy()) * g;
  return std::abs(r) / std::abs(g);
}

Complex cosine_tail(double d, const EnergyPoint& E, double K, const QuadOptions& quad) {
  const Complex energy = E.energy();
  d = std::abs(d);
  const double inf = std::numeric_limits<double>::infinity();
  // Rotate k = K + it (for e^{ikd}) and k = K - it (for e^{-ikd}); no pole
  // of 1/(k^2 - E) lies in Re k >= K when K > |kappa|.
  auto upper = [&](double t) {
    const Complex k(K, t);
    return I * std::exp(I * k * d) / (k * k - energy);
  };
  auto lower = [&](double t) {
    const Complex k(K, -t);
    return -I * std::exp(-I * k * d) / (k * k - energy);
  };
  return 0.5 * (integrate(upper, 0.0, inf, quad) + integrate(lower, 0.0, inf, quad));
}

namespace {

Complex reconstruct_at(const SpectralModel& model, double x, double y, const EnergyPoint& E, double K,
                       const QuadOptions& quad) {
  const Complex energy = E.energy();
  Complex total = 0.0;
  for (const auto& b : model.bound_states) total += b.psi(x) * b.psi(y) / (b.energy - energy);

  auto integrand = [&](double k) -> Complex {
    Complex p = model.continuum(k, x, y);
    if (model.domain == Domain::FullLine) p += model.continuum(-k, x, y);
    return p / (k * k - energy);
  };
  double d_max = 1.0;
  const auto terms = model.asymptote(x, y);
  for (const auto& [c, d] : terms) d_max = std::max(d_max, std::abs(d));
  const auto breaks = panel_breaks(0.0, K, 0.5 * M_PI / d_max);
  total += integrate_panels(integrand, breaks, quad);
  for (const auto& [c, d] : terms) total += c * cosine_tail(d, E, K, quad);
  return total;
}

}  // namespace

Complex spectral_reconstruct(const SpectralModel& model, double x, double y, const EnergyPoint& E, double k_max,
                             const SpectralOptions& options) {
  if (!(k_max > 2.0 * std::abs(E.kappa()))) throw DomainError("k_max must exceed 2|kappa|");
  const Complex value = reconstruct_at(model, x, y, E, k_max, options.quad);
  const Complex extended = reconstruct_at(model, x, y, E, 2.0 * k_max, options.quad);
  if (std::abs(extended - value) > options.tol) {
    throw ConvergenceError("continuum integral not converged under k_max doubling");
  }
  return value;
}

}  // namespace susy
