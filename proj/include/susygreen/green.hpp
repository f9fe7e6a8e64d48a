#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "susygreen/quadrature.hpp"
#include "susygreen/wave.hpp"

namespace susy {

enum class KernelLabel { G0, G1 };

/// Resolvent kernel G(x, y, E) = f_l(min) f_r(max) / W of (h - E)^{-1}.
class GreenFunction {
 public:
  GreenFunction(WaveSolution fl, WaveSolution fr, Complex wronskian, KernelLabel label);

  Complex operator()(double x, double y) const;
  Complex diagonal(double x) const { return (*this)(x, x); }
  /// d/dx G(x, y) away from the diagonal, from the interpolant derivatives.
  Complex dx(double x, double y) const;

  const WaveSolution& left() const { return fl_; }
  const WaveSolution& right() const { return fr_; }
  Complex wronskian() const { return W_; }
  const EnergyPoint& energy() const { return fl_.energy(); }
  KernelLabel label() const { return label_; }
  const Potential& potential() const { return fl_.potential(); }
  double x_min() const { return fl_.grid().x_min(); }
  double x_max() const { return fl_.grid().x_max(); }

 private:
  WaveSolution fl_;
  WaveSolution fr_;
  Complex W_;
  KernelLabel label_;
};

/// Builds G from a left/right pair; W is taken from wronskian_profile.
GreenFunction assemble_green(const WaveSolution& fl, const WaveSolution& fr, KernelLabel label = KernelLabel::G0);

/// d_x G(x,y)|_{x=y+} - d_x G(x,y)|_{x=y-} by one-sided second-order
/// differences of the kernel values; equals -1 for a resolvent kernel.
Complex jump_value(const GreenFunction& G, double y, double step = 1e-4);
double jump_check(const GreenFunction& G, double y, double step = 1e-4);

/// |(-d_x^2 + V(x) - E) G(x, y)| / |G(x, y)| for x != y by a five-point
/// second difference.
double kernel_ode_residual(const GreenFunction& G, double x, double y, double step = 1e-3);

/// Closed-form eigenfunction data for the spectral representation
/// G = sum_n psi_n psi_n^* / (E_n - E) + int psi_k psi_k^* / (k^2 - E) dk.
struct SpectralModel {
  Domain domain = Domain::FullLine;
  struct BoundState {
    double energy;
    std::function<double(double)> psi;
  };
  std::vector<BoundState> bound_states;
  /// psi_k(x) psi_k(y)^*; k ranges over R (full line) or [0, inf) (half line).
  std::function<Complex(double k, double x, double y)> continuum;
  /// Large-k form of the continuum product summed over +-k (full line) or
  /// at k (half line): sum_j c_j cos(k d_j), as pairs (c_j, d_j).
  std::function<std::vector<std::pair<double, double>>(double x, double y)> asymptote;
};

struct SpectralOptions {
  /// Absolute tolerance on the change under k_max -> 2 k_max.
  double tol = 1e-4;
  QuadOptions quad{1e-11, 12};
};

/// Eigenfunction-expansion value of G(x, y, E), continuum cut at k_max and
/// completed by the contour-rotated asymptotic tail. Throws
/// ConvergenceError when doubling k_max moves the result by more than tol.
Complex spectral_reconstruct(const SpectralModel& model, double x, double y, const EnergyPoint& E, double k_max,
                             const SpectralOptions& options = {});

/// int_K^inf cos(k d) / (k^2 - E) dk for d >= 0 and K > |kappa|.
Complex cosine_tail(double d, const EnergyPoint& E, double K, const QuadOptions& quad = {});

}  // namespace susy
