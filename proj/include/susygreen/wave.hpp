#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "susygreen/energy.hpp"
#include "susygreen/grid.hpp"
#include "susygreen/potential.hpp"

namespace susy {

enum class SolutionKind { Left, Right };

/// What was imposed at the matching end.
struct BoundaryRecord {
  std::string description;
  double x = 0.0;
  Complex value;
  Complex derivative;
};

/// (f, f') multiplied by exp(-s i kappa x), s = phase_sign of the solution.
struct ScaledPair {
  Complex f;
  Complex df;
};

struct SolverOptions {
  /// Relative/absolute per-step tolerance of the integrator.
  double tol = 1e-10;
  /// Largest admissible |f| in the scaled representation.
  double overflow_cap = 1e250;
};

/// Node samples of a solution of (-d^2/dx^2 + V - E) f = 0.
///
/// Values are stored rescaled, f~ = f exp(-s i kappa x), with s = -1 for
/// left solutions and +1 for right solutions, so that products
/// f_l(x) f_r(y) with x <= y never overflow. s = 0 stores plain values.
struct WaveData {
  Grid grid;
  EnergyPoint energy;
  SolutionKind kind = SolutionKind::Left;
  int phase_sign = 0;
  std::vector<Complex> f;
  std::vector<Complex> df;
  /// V(x_i); carries f'' = (V - E) f for interpolation.
  std::vector<double> v;
  std::shared_ptr<const Potential> potential;
  BoundaryRecord boundary;
  std::vector<std::string> diagnostics;
};

class WaveSolution {
 public:
  explicit WaveSolution(WaveData data);

  const Grid& grid() const { return data_.grid; }
  const EnergyPoint& energy() const { return data_.energy; }
  SolutionKind kind() const { return data_.kind; }
  int phase_sign() const { return data_.phase_sign; }
  const Potential& potential() const { return *data_.potential; }
  std::shared_ptr<const Potential> potential_ptr() const { return data_.potential; }
  const BoundaryRecord& boundary() const { return data_.boundary; }
  const std::vector<std::string>& diagnostics() const { return data_.diagnostics; }
  const WaveData& data() const { return data_; }

  std::size_t size() const { return data_.f.size(); }
  ScaledPair scaled_node(std::size_t i) const { return {data_.f[i], data_.df[i]}; }
  double potential_node(std::size_t i) const { return data_.v[i]; }

  /// Scaled (f, f') at any x in [x_min, x_max] by quintic Hermite
  /// interpolation of (f, f', f'' = (V-E) f).
  ScaledPair scaled(double x) const;
  /// exp(s i kappa x): the factor removed from the stored values.
  Complex scale_factor(double x) const;
  Complex value(double x) const;
  Complex derivative(double x) const;

  /// max_i |f'(x_{i+1}) - f'(x_i) - int (V-E) f dx| over the intervals,
  /// with the integral taken on the Hermite interpolant (scaled values).
  double residual() const;
  /// Largest stored |f~|.
  double max_scaled_magnitude() const;

  /// Samples closed-form (f, f') at the nodes.
  static WaveSolution from_function(const Grid& grid, EnergyPoint energy, SolutionKind kind, int phase_sign,
                                    std::shared_ptr<const Potential> V,
                                    const std::function<std::pair<Complex, Complex>(double)>& fn,
                                    std::string description = "closed form");

 private:
  WaveData data_;
};

/// Left solution: f -> exp(-i kappa x) as x -> -inf on the full line;
/// f(0) = 0, f'(0) = 1 on the half line (or f ~ x^{l+1} at a c/x^2 origin).
WaveSolution solve_left(const Potential& V, const EnergyPoint& E, const Grid& grid, const SolverOptions& options = {});
/// Right solution: f -> exp(+i kappa x) as x -> +inf.
WaveSolution solve_right(const Potential& V, const EnergyPoint& E, const Grid& grid, const SolverOptions& options = {});

WaveSolution solve_left(std::shared_ptr<const Potential> V, const EnergyPoint& E, const Grid& grid,
                        const SolverOptions& options = {});
WaveSolution solve_right(std::shared_ptr<const Potential> V, const EnergyPoint& E, const Grid& grid,
                         const SolverOptions& options = {});

struct WronskianProfile {
  /// W(f_r, f_l) = f_r f_l' - f_r' f_l at the grid midpoint.
  Complex W0;
  /// max_i |W(x_i) - W0| / |W0|.
  double max_deviation = 0.0;
  std::vector<Complex> values;
};

/// Throws DegenerateError when |W0| < floor_factor * |kappa|, GridMismatch
/// when the solutions live on different grids or energies.
WronskianProfile wronskian_profile(const WaveSolution& fr, const WaveSolution& fl, double floor_factor = 1e-8);

/// Wronskian f g' - f' g at node i, with the stored scalings undone.
Complex wronskian_at_node(const WaveSolution& f, const WaveSolution& g, std::size_t i);

void require_compatible(const WaveSolution& a, const WaveSolution& b);

}  // namespace susy
