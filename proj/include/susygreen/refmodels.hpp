#pragma once

#include <string>
#include <utility>

#include "susygreen/energy.hpp"
#include "susygreen/green.hpp"
#include "susygreen/potential.hpp"

namespace susy {

enum class ModelId { FreeLine, FreeHalfLine, Soliton, Csch };

/// Solvable model; `a` is the well parameter of Soliton and Csch.
struct ReferenceModel {
  ModelId id = ModelId::FreeLine;
  double a = 1.0;
};

const char* to_string(ModelId id);
/// "free-line", "free-half-line", "soliton", "csch"; throws ConfigError.
ModelId parse_model(const std::string& name);

/// V: 0, 0, -2a^2 sech^2(ax), 2a^2 csch^2(ax).
Potential reference_potential(const ReferenceModel& m);

/// Closed-form left/right solutions (f, f') at complex momentum kappa, in
/// the same normalization as the solver: Jost f ~ exp(-/+ i kappa x) on the
/// line, f_l with f'(0) = 1 (free) or f_l ~ x^2 (csch) on the half line.
std::pair<Complex, Complex> reference_left(const ReferenceModel& m, Complex kappa, double x);
std::pair<Complex, Complex> reference_right(const ReferenceModel& m, Complex kappa, double x);
/// W(f_r, f_l) of the closed-form pair.
Complex reference_wronskian(const ReferenceModel& m, Complex kappa);

Complex reference_green(const ReferenceModel& m, double x, double y, const EnergyPoint& E);
/// Kernel as an analytic function of kappa, including the removable point
/// kappa = ia of the csch model.
Complex reference_green_kappa(const ReferenceModel& m, double x, double y, Complex kappa);

/// Normalized bound state of the soliton, sqrt(a/2) sech(ax).
double soliton_ground_state(double a, double x);
/// Soliton scattering state (-ik + a tanh(ax)) e^{ikx} / sqrt(2 pi (k^2 + a^2)).
Complex soliton_scattering(double a, double k, double x);
/// Free plane wave e^{ikx} / sqrt(2 pi).
Complex plane_wave(double k, double x);
/// Free half-line state sqrt(2/pi) sin(kx).
double sine_wave(double k, double x);
/// Csch scattering state sqrt(2/(pi(k^2+a^2))) [-k cos(kx) + a coth(ax) sin(kx)].
double csch_scattering(double a, double k, double x);

/// Bound and scattering states for the spectral representation.
SpectralModel spectral_model(const ReferenceModel& m);

/// Half-line -6a^2 sech^2(ax): one (odd) bound state at -a^2.
Potential deep_well_halfline(double a);
/// Its normalized ground state sqrt(3a) tanh(ax) sech(ax) and derivative.
std::pair<double, double> deep_well_ground_state(double a, double x);

}  // namespace susy
