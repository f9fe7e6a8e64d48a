#pragma once

#include <array>
#include <optional>

#include "susygreen/darboux.hpp"
#include "susygreen/green.hpp"

namespace susy {

struct TraceOptions {
  /// Allowed change of the trace when the window is halved.
  double tail_tol = 1e-7;
  /// Allowed relative drift of asymptotic boundary products between
  /// x_max/2 and x_max.
  double asymptotic_tol = 1e-7;
};

struct TraceIntegral {
  Complex value;
  /// Analytic contribution beyond the grid ends.
  Complex tails;
  /// |value - value on the half window|.
  double window_change = 0.0;
};

/// int (G0(x,x) - G1(x,x)) dx over the domain. The grid part is integrated
/// exactly on the interpolants; beyond |x| = X the integrand is c e^{2i kappa |x|}
/// and contributes i D(X) / (2 kappa); on the half line the piece [0, x0] adds
/// x0 D(x0) / 2. Throws TailError when the half-window result differs by
/// more than tail_tol (1 + |value|).
TraceIntegral trace_numeric(const GreenFunction& G0, const GreenFunction& G1, const TraceOptions& options = {});

/// Boundary products (f_r0 f_l1) and (f_l0 f_r1) at both ends.
struct BoundaryProducts {
  Complex rl_a, rl_b;
  Complex lr_a, lr_b;
};

/// At an infinite end the product F H tends to A + B e^{+-2i kappa x}; the
/// constant A = (F H + F' H' / kappa^2) / 2 is taken. On the half line the
/// origin value is extrapolated in x^2 from the first two nodes.
/// Throws AsymptoticError when A at x_max/2 and x_max disagree.
BoundaryProducts boundary_products(const WaveSolution& fl0, const WaveSolution& fr0, const WaveSolution& fl1,
                                   const WaveSolution& fr1, const TraceOptions& options = {});

/// The four boundary forms of Q(E):
/// (f_r0 f_l1)|_a^b, (f_l0 f_r1)|_a^b, -W0 + (f_l0 f_r1)_b - (f_r0 f_l1)_a,
/// W0 + (f_r0 f_l1)_b - (f_l0 f_r1)_a.
std::array<Complex, 4> q_boundary(const WaveSolution& fl0, const WaveSolution& fr0, const WaveSolution& fl1,
                                  const WaveSolution& fr1, Complex W0, const TraceOptions& options = {});

/// max_i |f_l0 f_r1 - f_r0 f_l1 - W0| / |W0| over the nodes.
double cross_identity_check(const WaveSolution& fl0, const WaveSolution& fr0, const WaveSolution& fl1,
                            const WaveSolution& fr1);

struct TraceSplit {
  Complex discrete;
  Complex continuum;
};

/// 1/(alpha - E) and [(f_l0 f_r1)_b - (f_r0 f_l1)_a] / (W0 (E - alpha)).
TraceSplit split_trace(const EnergyPoint& E, double alpha, const BoundaryProducts& products, Complex W0);

/// delta/(kappa^2 + i a kappa) - delta/(kappa^2 + a^2), delta = +1, -1, 0
/// for cases (i), (ii), (iii).
Complex trace_closed_fullline(const EnergyPoint& E, double a, TransformCase c);

/// Sign of the i a kappa term in the half-line closed form. AsPrinted
/// carries -i a kappa; ImKappaPositive carries +i a kappa, the value the
/// half-line kernels integrate to on the branch Im kappa > 0.
enum class HalfLineConvention { AsPrinted, ImKappaPositive };

/// delta2/(2(kappa^2 -+ i a kappa)) - delta1/(kappa^2 + a^2) with
/// (delta1, delta2) = (1, 1) in case (i) and (0, -1) in case (iii).
/// Throws CaseError for case (ii).
Complex trace_closed_halfline(const EnergyPoint& E, double a, TransformCase c,
                              HalfLineConvention convention = HalfLineConvention::AsPrinted);

struct TraceReport {
  EnergyPoint E;
  double alpha = 0.0;
  TransformCase transform_case = TransformCase::Isospectral;
  Complex numeric_trace{};
  std::array<Complex, 4> Q{};
  /// Q / (W0 (E - alpha)) from the third form.
  Complex boundary_trace{};
  std::optional<Complex> closed_form{};
  TraceSplit split{};
  /// max_{i,j} |Q_i - Q_j| / max(max_i |Q_i|, |W0|).
  double q_spread = 0.0;
  /// |numeric - boundary| / (1 + |numeric|).
  double boundary_mismatch = 0.0;
  /// Relative |numeric - closed|, absolute when the closed form vanishes.
  double closed_mismatch = 0.0;
  double identity_residual = 0.0;
  double window_change = 0.0;

  double max_discrepancy() const;
};

TraceReport make_trace_report(const GreenFunction& G0, const GreenFunction& G1, double alpha, TransformCase c,
                              std::optional<Complex> closed_form, const TraceOptions& options = {});

}  // namespace susy
