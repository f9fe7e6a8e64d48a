#include "susygreen/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "susygreen/errors.hpp"
#include "susygreen/pipeline.hpp"
#include "susygreen/refmodels.hpp"

namespace susy {

namespace {

// |psi|^2 - |chi|^2 as a complex number so a stray imaginary part shows up.
Complex density_difference(const WaveSolution& psi, const WaveSolution& chi, double x) {
  const Complex p = psi.value(x), c = chi.value(x);
  return p * std::conj(p) - c * std::conj(c);
}

// Integral over the node intervals between nodes lo and hi.
Complex grid_integral(const WaveSolution& psi, const WaveSolution& chi, std::size_t lo, std::size_t hi) {
  const Grid& g = psi.grid();
  Complex sum = 0.0;
  auto f = [&](double x) { return density_difference(psi, chi, x); };
  for (std::size_t i = lo; i < hi; ++i) sum += gauss_legendre(f, g[i], g[i + 1], 7);
  return sum;
}

}  // namespace

double p_lambda_analytic(double a, double lam) { return a / (M_PI * (lam * lam + a * a)); }

DensityReport pk_fullline(double a, double k, const DensityOptions& options) {
  ScenarioSpec spec{Scenario::FreeToSoliton, a, options.grid};
  const Transformation t = make_transformation(spec);
  const DarbouxData& d = t.darboux;
  const Grid& g = d.grid();
  const auto psi = WaveSolution::from_function(
      g, EnergyPoint::on_cut(k), SolutionKind::Left, 0, d.V0(),
      [k](double x) {
        const Complex p = plane_wave(k, x);
        return std::pair{p, I * k * p};
      },
      "plane wave");
  const auto chi = normalize_chi(d, psi);

  const Complex full = grid_integral(psi, chi, 0, g.size() - 1);
  const Complex half = grid_integral(psi, chi, g.nearest(0.5 * g.x_min()), g.nearest(0.5 * g.x_max()));
  DensityReport r;
  r.model = "soliton";
  r.k = k;
  r.numeric_value = full.real();
  r.imag_residue = std::abs(full.imag());
  r.analytic_value = p_lambda_analytic(a, k);
  r.window_change = std::abs(full - half);
  if (r.window_change > options.tail_tol * (1.0 + std::abs(r.numeric_value))) {
    throw TailError("density integral changes by " + std::to_string(r.window_change) + " when the window is halved");
  }
  return r;
}

Complex stieltjes_forward(const std::function<double(double)>& P, const EnergyPoint& E, double k_max,
                          const QuadOptions& quad) {
  if (E.on_cut()) throw BranchError("Stieltjes transform needs E off the positive real axis");
  const Complex energy = E.energy();
  const double inf = std::numeric_limits<double>::infinity();
  auto f = [&](double k) -> Complex { return P(k) / (k * k - energy); };
  auto g = [&](double k) -> Complex { return P(-k) / (k * k - energy); };
  auto at = [&](double K) {
    auto breaks = panel_breaks(-K, K, 0.5);
    const double kr = std::abs(E.kappa().real());
    if (kr > 0.0 && kr < K) {
      breaks.push_back(kr);
      breaks.push_back(-kr);
      std::sort(breaks.begin(), breaks.end());
    }
    return integrate_panels(f, breaks, quad) + integrate(f, K, inf, quad) + integrate(g, K, inf, quad);
  };
  const Complex value = at(k_max);
  const Complex check = at(2.0 * k_max);
  if (std::abs(value - check) > 1e-10 * (1.0 + std::abs(value))) {
    throw ConvergenceError("Stieltjes integral not stable under k_max doubling");
  }
  return value;
}

Complex r_fullline(const EnergyPoint& E, double a) {
  const Complex k = E.kappa();
  return -1.0 / (k * k + I * a * k);
}

Complex r_halfline(const EnergyPoint& E, double a, bool as_printed) {
  const Complex k = E.kappa();
  if (as_printed) return 1.0 / (2.0 * (I * a * k - k * k));
  return -1.0 / (2.0 * (k * k + I * a * k));
}

JumpInversion stieltjes_inversion(const std::function<Complex(const EnergyPoint&)>& R, double lam, double tau0,
                                  int terms) {
  if (!(lam > 0.0)) throw DomainError("inversion point must lie on the positive real axis");
  if (!(tau0 > 0.0) || terms < 1) throw DomainError("invalid inversion schedule");
  std::vector<Complex> jumps;
  double tau = tau0;
  for (int j = 0; j < terms; ++j, tau *= 0.5) {
    jumps.push_back(R(momentum_of(Complex(lam, tau))) - R(momentum_of(Complex(lam, -tau))));
  }
  const auto ex = richardson_limit(jumps);
  const Complex rho = ex.value / (2.0 * M_PI * I);
  JumpInversion out;
  out.rho = rho.real();
  out.P = std::sqrt(lam) * out.rho;
  out.error = ex.error / (2.0 * M_PI);
  return out;
}

double pkA_halfline(double a, double k, double A) {
  const double s = std::sin(k * A);
  return (2.0 * a / std::tanh(a * A) * s * s - k * std::sin(2.0 * A * k)) / (M_PI * (k * k + a * a));
}

DensityReport pkA_numeric(double a, double k, double A, const DensityOptions& options) {
  if (!(A > 0.0) || !(k > 0.0)) throw DomainError("window and momentum must be positive");
  ScenarioSpec spec{Scenario::FreeHalfToCsch, a, options.grid};
  const double natural = options.grid.x_max > 0.0 ? options.grid.x_max : 20.0 / a;
  spec.grid.x_max = std::max(natural, A + 1.0);
  const Transformation t = make_transformation(spec);
  const DarbouxData& d = t.darboux;
  const Grid& g = d.grid();
  const auto psi = WaveSolution::from_function(
      g, EnergyPoint::on_cut(k), SolutionKind::Left, 0, d.V0(),
      [k](double x) { return std::pair{Complex(sine_wave(k, x)), Complex(std::sqrt(2.0 / M_PI) * k * std::cos(k * x))}; },
      "sine wave");
  const auto chi = normalize_chi(d, psi);

  const std::size_t j = g.interval_of(A);
  Complex sum = grid_integral(psi, chi, 0, j);
  auto f = [&](double x) { return density_difference(psi, chi, x); };
  if (A > g[j]) sum += gauss_legendre(f, g[j], A, 7);
  // [0, x0]: the integrand vanishes like x^2 at the origin.
  sum += g.x_min() * f(g.x_min()) / 3.0;

  DensityReport r;
  r.model = "csch";
  r.k = k;
  r.window_A = A;
  r.numeric_value = sum.real();
  r.imag_residue = std::abs(sum.imag());
  r.analytic_value = pkA_halfline(a, k, A);
  return r;
}

namespace {

Complex windowed_once(double a, const EnergyPoint& E, double A, const WindowedOptions& options) {
  const double limit = M_PI / (4.0 * A);
  const double panel = options.panel_length.value_or(limit);
  if (!(panel > 0.0) || panel > limit * (1.0 + 1e-12)) {
    throw OscillationError("k panels of length " + std::to_string(panel) + " under-resolve window A = " +
                           std::to_string(A));
  }
  const Complex energy = E.energy();
  auto f = [&](double k) -> Complex { return pkA_halfline(a, k, A) / (k * k - energy); };
  const auto breaks = panel_breaks(0.0, options.k_max, panel);
  Complex sum = integrate_panels(f, breaks, options.quad);
  // Beyond k_max: sin^2(kA) averages to 1/2 and k sin(2Ak) to 0.
  const double c = a / std::tanh(a * A);
  auto tail = [&](double k) -> Complex { return c / (M_PI * (k * k + a * a) * (k * k - energy)); };
  sum += integrate(tail, options.k_max, std::numeric_limits<double>::infinity(), options.quad);
  return sum;
}

}  // namespace

WindowedLimit stieltjes_windowed_limit(double a, const EnergyPoint& E, double A, const WindowedOptions& options) {
  if (!(a > 0.0) || !(A > 0.0)) throw DomainError("a and A must be positive");
  if (E.on_cut()) throw BranchError("windowed transform needs E off the positive real axis");
  WindowedLimit out{windowed_once(a, E, A, options), {}, {}};
  if (!options.diagnostics) return out;
  WindowedOptions wide = options;
  wide.panel_length.reset();
  out.doubled = windowed_once(a, E, 2.0 * A, wide);
  const double period = M_PI / a;
  Complex sum = 0.0;
  for (int j = 0; j < 8; ++j) sum += windowed_once(a, E, A + period * j / 8.0, wide);
  out.cesaro = sum / 8.0;
  return out;
}

}  // namespace susy
