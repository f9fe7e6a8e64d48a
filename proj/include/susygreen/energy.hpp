#pragma once

#include <complex>
#include <optional>

namespace susy {

using Complex = std::complex<double>;

inline constexpr Complex I{0.0, 1.0};

/// Complex energy E together with the momentum kappa, kappa^2 = E, on the
/// physical sheet Im(kappa) > 0. Units: hbar = 2m = 1.
///
/// Instances come from momentum_of() (strict physical sheet) or from
/// on_cut() (boundary value E = k^2 + i0 used for scattering states).
class EnergyPoint {
 public:
  Complex energy() const { return energy_; }
  Complex kappa() const { return kappa_; }
  /// True for boundary values on the continuous spectrum (Im kappa = 0).
  bool on_cut() const { return on_cut_; }

  /// E = k^2 approached from the upper half plane; kappa = k (k real).
  static EnergyPoint on_cut(double k);
  /// Builds the point from a momentum with Im(kappa) > 0.
  static EnergyPoint from_kappa(Complex kappa);

  friend EnergyPoint momentum_of(Complex E, std::optional<double> epsilon_shift);

 private:
  EnergyPoint(Complex E, Complex kappa, bool cut) : energy_(E), kappa_(kappa), on_cut_(cut) {}

  Complex energy_;
  Complex kappa_;
  bool on_cut_ = false;
};

/// Resolves sqrt(E) on the branch Im(kappa) > 0. When epsilon_shift is set,
/// E is first moved to E + i*epsilon_shift. Throws BranchError when no such
/// root exists (E on the nonnegative real axis).
EnergyPoint momentum_of(Complex E, std::optional<double> epsilon_shift = std::nullopt);

}  // namespace susy
