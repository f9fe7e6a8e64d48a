#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "susygreen/green.hpp"
#include "susygreen/wave.hpp"

namespace susy {

/// (i) delete the ground state, (ii) create a new ground state at alpha,
/// (iii) keep the spectrum.
enum class TransformCase { RemoveGroundState, AddGroundState, Isospectral };

const char* to_string(TransformCase c);

// Factorization solution u of (h0 - alpha) u = 0, selected by:
/// u = c_left f_l(x, alpha) + c_right f_r(x, alpha) on the full line.
struct JostCombination {
  double left = 1.0;
  double right = 1.0;
};
/// u = f_l(x, alpha) with u(0) = 0 on the half line.
struct HalfLineRegular {};
/// u = ground state of h0 at alpha = E0 (left and right solutions stitched
/// where both are integrated in their stable direction).
struct GroundState {};
/// u and u' given in closed form.
struct ClosedFormFactor {
  std::function<std::pair<double, double>(double)> u;
  std::string name = "closed form";
};
using FactorizationSpec = std::variant<JostCombination, HalfLineRegular, GroundState, ClosedFormFactor>;

struct DarbouxOptions {
  SolverOptions solver{};
  /// When set, a different classification raises CaseError.
  std::optional<TransformCase> expected_case;
};

/// SUSY transformation data: alpha, u on the grid, w = u'/u and the
/// partner potential V1 = V0 - 2w' with w' = (V0 - alpha) - w^2.
class DarbouxData {
 public:
  double alpha() const { return alpha_; }
  TransformCase transform_case() const { return case_; }
  const Grid& grid() const { return grid_; }
  const WaveSolution& factor() const { return *u_; }
  std::shared_ptr<const Potential> V0() const { return V0_; }
  std::shared_ptr<const Potential> V1() const { return V1_; }
  double w_node(std::size_t i) const { return w_[i]; }
  double dw_node(std::size_t i) const { return dw_[i]; }
  /// Superpotential anywhere in the grid range.
  double w(double x) const;
  /// Scaled residual of (h0 - alpha) u = 0.
  double factorization_residual() const;
  const SolverOptions& factor_solver() const { return solver_; }

  friend DarbouxData build_transform(const Potential&, double, const FactorizationSpec&, const Grid&,
                                     const DarbouxOptions&);

 private:
  DarbouxData(double alpha, TransformCase c, Grid grid) : alpha_(alpha), case_(c), grid_(std::move(grid)) {}

  double alpha_;
  TransformCase case_;
  Grid grid_;
  std::shared_ptr<const WaveSolution> u_;
  std::vector<double> w_;
  std::vector<double> dw_;
  std::shared_ptr<const Potential> V0_;
  std::shared_ptr<const Potential> V1_;
  std::function<std::pair<double, double>(double)> closed_u_;
  SolverOptions solver_;
};

/// Throws NodeError (u changes sign), CaseError (half line with u(0) != 0
/// or a request for a new ground state there; classification mismatch),
/// ThresholdError (alpha above the spectrum bottom).
DarbouxData build_transform(const Potential& V0, double alpha, const FactorizationSpec& u_spec, const Grid& grid,
                            const DarbouxOptions& options = {});

/// L f = -f' + w f with (L f)' = -f'' + w' f + w f' = (E - V0) f + w' f + w f'.
WaveSolution apply_L(const DarbouxData& d, const WaveSolution& s);
/// (E_n - alpha)^{-1/2} L psi; E_n defaults to the solution's energy.
WaveSolution normalize_chi(const DarbouxData& d, const WaveSolution& s, std::optional<Complex> E_n = std::nullopt);

/// G1 from the transformed pair L f_l0, L f_r0 with W1 = (E - alpha) W0.
GreenFunction green1_from_pair(const DarbouxData& d, const WaveSolution& fl0, const WaveSolution& fr0,
                               std::optional<Complex> W0 = std::nullopt);

/// Relative mismatch between the Wronskian profile of the transformed pair
/// and the asserted (E - alpha) W0.
double partner_wronskian_mismatch(const GreenFunction& G1);

/// G1(x, y, alpha) for cases (i)/(iii): d/dE of the numerator kernel
/// L_x L_y f_l0(min) f_r0(max) / W0 at E = alpha, by central differences
/// with steps h and h/2 combined to fourth order.
class RegularizedKernel {
 public:
  using Pair = std::pair<GreenFunction, GreenFunction>;
  RegularizedKernel(Pair coarse, Pair fine, double step)
      : coarse_(std::move(coarse)), fine_(std::move(fine)), step_(step) {}
  Complex operator()(double x, double y) const;
  double step() const { return step_; }

 private:
  Pair coarse_;
  Pair fine_;
  double step_;
};

RegularizedKernel green1_at_alpha(const DarbouxData& d, double h_E = 1e-4);

struct Extrapolation {
  Complex value;
  double error = 0.0;
};

/// Richardson extrapolation to delta -> 0 of samples taken at
/// delta_j = delta_0 / ratio^j, assuming a power series in delta.
Extrapolation richardson_limit(std::span<const Complex> samples, double ratio = 2.0);

/// lim_{E -> alpha-} G1(x, y, E) by Richardson extrapolation of
/// green1_from_pair along E = alpha - delta_0 2^{-j}, j < terms.
Extrapolation limit_at_alpha(const DarbouxData& d, double x, double y, double delta0 = 0.05, int terms = 6);

/// Coefficient of (alpha - E)^{-1} in G1(x, y, E) for case (ii):
/// extrapolated lim (alpha - E) G1. Throws CaseError outside case (ii),
/// ConvergenceError when the extrapolation does not settle.
Complex residue_at_alpha(const DarbouxData& d, double x, double y, std::span<const double> delta_E = {});

}  // namespace susy
