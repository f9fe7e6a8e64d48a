#pragma once

#include <functional>
#include <optional>
#include <string>

#include "susygreen/darboux.hpp"
#include "susygreen/energy.hpp"
#include "susygreen/grid.hpp"
#include "susygreen/quadrature.hpp"

namespace susy {

struct DensityReport {
  std::string model;
  double k = 0.0;
  double numeric_value = 0.0;
  std::optional<double> analytic_value;
  std::optional<double> window_A;
  /// |Im| of the integrated |psi|^2 - |chi|^2 difference.
  double imag_residue = 0.0;
  /// Change of the numeric value when the window is halved.
  double window_change = 0.0;
};

struct DensityOptions {
  GridOptions grid{};
  /// Tolerance on window_change (TailError beyond it).
  double tail_tol = 1e-6;
};

/// P(k) = int (|psi_k|^2 - |chi_k|^2) dx for the free line -> soliton
/// transformation, with chi_k = (k^2 + a^2)^{-1/2} L psi_k built by the
/// Darboux machinery from sampled plane waves.
DensityReport pk_fullline(double a, double k, const DensityOptions& options = {});

/// a / (pi (lam^2 + a^2)).
double p_lambda_analytic(double a, double lam);

/// int_{-inf}^{inf} P(k) dk / (k^2 - E): panels on [-k_max, k_max] and
/// mapped Gauss-Kronrod on the infinite tails. Throws ConvergenceError if
/// doubling k_max moves the result by more than 1e-10 (1 + |R|).
Complex stieltjes_forward(const std::function<double(double)>& P, const EnergyPoint& E, double k_max = 50.0,
                          const QuadOptions& quad = {});

/// R(E) = -1/(kappa^2 + i a kappa), full line, case (ii).
Complex r_fullline(const EnergyPoint& E, double a);
/// Half-line windowed limit: 1/(2(i a kappa - kappa^2)) as printed, or
/// -1/(2(kappa^2 + i a kappa)) on the branch Im kappa > 0.
Complex r_halfline(const EnergyPoint& E, double a, bool as_printed = true);

struct JumpInversion {
  /// (1/2 pi i) [R(lam + i0) - R(lam - i0)].
  double rho = 0.0;
  /// sqrt(lam) rho: the density as a function of k = sqrt(lam).
  double P = 0.0;
  double error = 0.0;
};

/// Stieltjes inversion: the transform is sampled at lam +- i tau_j with
/// tau_j = tau0 / 2^j and the jump is Richardson-extrapolated to tau -> 0.
JumpInversion stieltjes_inversion(const std::function<Complex(const EnergyPoint&)>& R, double lam,
                                  double tau0 = 1e-2, int terms = 6);

/// [2a coth(aA) sin^2(kA) - k sin(2Ak)] / (pi (k^2 + a^2)).
double pkA_halfline(double a, double k, double A);

/// int_0^A (psi_k^2 - chi_k^2) dx for the free half line -> csch
/// transformation, chi_k from the Darboux machinery.
DensityReport pkA_numeric(double a, double k, double A, const DensityOptions& options = {});

struct WindowedLimit {
  Complex value;
  /// Same integral at 2A.
  Complex doubled;
  /// Mean over eight windows spread across one period pi/a in A.
  Complex cesaro;
};

struct WindowedOptions {
  double k_max = 50.0;
  /// Panel length in k; defaults to pi / (4A). Longer panels raise
  /// OscillationError.
  std::optional<double> panel_length;
  QuadOptions quad{1e-12, 6};
  bool diagnostics = true;
};

/// int_0^inf P(k, A) dk / (k^2 - E), panels no longer than pi/(4A) on
/// [0, k_max] and the oscillation-averaged tail beyond.
WindowedLimit stieltjes_windowed_limit(double a, const EnergyPoint& E, double A, const WindowedOptions& options = {});

}  // namespace susy
