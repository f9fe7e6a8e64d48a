#include "susygreen/energy.hpp"

#include <cmath>
#include <string>

#include "susygreen/errors.hpp"

namespace susy {

EnergyPoint EnergyPoint::on_cut(double k) { return EnergyPoint(Complex(k * k, 0.0), Complex(k, 0.0), true); }

EnergyPoint EnergyPoint::from_kappa(Complex kappa) {
  if (!(kappa.imag() > 0.0)) {
    throw BranchError("momentum must satisfy Im(kappa) > 0");
  }
  return EnergyPoint(kappa * kappa, kappa, false);
}

EnergyPoint momentum_of(Complex E, std::optional<double> epsilon_shift) {
  if (epsilon_shift) {
    if (!(*epsilon_shift > 0.0)) {
      throw BranchError("epsilon shift must be positive");
    }
    E += Complex(0.0, *epsilon_shift);
  }
  if (!std::isfinite(E.real()) || !std::isfinite(E.imag())) {
    throw BranchError("energy is not finite");
  }
  Complex kappa = std::sqrt(E);
  if (kappa.imag() < 0.0) kappa = -kappa;
  if (!(kappa.imag() > 0.0)) {
    throw BranchError("energy on continuous spectrum: E = " + std::to_string(E.real()) +
                      " has no root with Im(kappa) > 0");
  }
  return EnergyPoint(E, kappa, false);
}

}  // namespace susy
