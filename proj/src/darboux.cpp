#include "susygreen/darboux.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "susygreen/errors.hpp"

namespace susy {

const char* to_string(TransformCase c) {
  switch (c) {
    case TransformCase::RemoveGroundState:
      return "i";
    case TransformCase::AddGroundState:
      return "ii";
    case TransformCase::Isospectral:
      return "iii";
  }
  return "?";
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

struct FactorSamples {
  std::vector<double> u, du;
};

std::vector<Complex> true_values(const WaveSolution& s, bool derivative) {
  std::vector<Complex> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto p = s.scaled_node(i);
    out[i] = (derivative ? p.df : p.f) * s.scale_factor(s.grid()[i]);
  }
  return out;
}

FactorSamples jost_combination(const std::shared_ptr<const Potential>& V0, const EnergyPoint& Ea, const Grid& grid,
                               const JostCombination& c, const SolverOptions& opts) {
  const auto fl = solve_left(V0, Ea, grid, opts);
  const auto fr = solve_right(V0, Ea, grid, opts);
  const auto lv = true_values(fl, false), ld = true_values(fl, true);
  const auto rv = true_values(fr, false), rd = true_values(fr, true);
  FactorSamples s{std::vector<double>(grid.size()), std::vector<double>(grid.size())};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    s.u[i] = (c.left * lv[i] + c.right * rv[i]).real();
    s.du[i] = (c.left * ld[i] + c.right * rd[i]).real();
  }
  return s;
}

FactorSamples ground_state(const std::shared_ptr<const Potential>& V0, const EnergyPoint& Ea, const Grid& grid,
                           const SolverOptions& opts) {
  const auto fl = solve_left(V0, Ea, grid, opts);
  const auto fr = solve_right(V0, Ea, grid, opts);
  const auto lv = true_values(fl, false), ld = true_values(fl, true);
  const auto rv = true_values(fr, false), rd = true_values(fr, true);
  const std::size_t n = grid.size();
  std::size_t m = 1;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (std::abs(lv[i]) > std::abs(lv[m])) m = i;
  }
  const double wl = (ld[m] / lv[m]).real(), wr = (rd[m] / rv[m]).real();
  if (std::abs(wl - wr) > 1e-6 * (1.0 + std::abs(wl))) {
    throw ThresholdError("alpha is not a bound-state energy: left/right log-derivatives differ by " +
                         std::to_string(std::abs(wl - wr)));
  }
  const Complex ratio = lv[m] / rv[m];
  const double sign = lv[m].real() < 0.0 ? -1.0 : 1.0;
  FactorSamples s{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const Complex f = i <= m ? lv[i] : ratio * rv[i];
    const Complex df = i <= m ? ld[i] : ratio * rd[i];
    s.u[i] = sign * f.real();
    s.du[i] = sign * df.real();
  }
  return s;
}

// Trapezoid integral of g over the nodes lying in [lo, hi].
double window_integral(const Grid& grid, const std::vector<double>& g, double lo, double hi) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (grid[i] >= lo && grid[i + 1] <= hi) sum += 0.5 * (grid[i + 1] - grid[i]) * (g[i] + g[i + 1]);
  }
  return sum;
}

// Convergence at one end: the far window [X/2, X] carries less than half
// of the near window [X/4, X/2].
bool converges_at(const Grid& grid, const std::vector<double>& g, bool right_end) {
  const double X = right_end ? grid.x_max() : -grid.x_min();
  const double near = right_end ? window_integral(grid, g, X / 4.0, X / 2.0) : window_integral(grid, g, -X / 2.0, -X / 4.0);
  const double far = right_end ? window_integral(grid, g, X / 2.0, X) : window_integral(grid, g, -X, -X / 2.0);
  if (!(near > 0.0)) return far == 0.0;
  return far / near < 0.5;
}

}  // namespace

double DarbouxData::w(double x) const {
  if (closed_u_) {
    const auto [u, du] = closed_u_(x);
    return du / u;
  }
  const auto p = u_->scaled(x);
  return (p.df / p.f).real();
}

double DarbouxData::factorization_residual() const {
  return u_->residual() / std::max(1.0, u_->max_scaled_magnitude());
}

DarbouxData build_transform(const Potential& V0in, double alpha, const FactorizationSpec& u_spec, const Grid& grid,
                            const DarbouxOptions& options) {
  auto V0 = std::make_shared<const Potential>(V0in);
  const bool half = V0->domain == Domain::HalfLine;

  if (!V0->bound_states.empty()) {
    const double E0 = V0->bound_states.front();
    if (alpha > E0 + 1e-12 * std::max(1.0, std::abs(E0))) {
      throw ThresholdError("alpha lies above the ground-state energy");
    }
  } else if (!(alpha < 0.0)) {
    throw ThresholdError("alpha must lie below the continuum threshold 0");
  }
  if (half && options.expected_case == TransformCase::AddGroundState) {
    throw CaseError("a new ground state cannot be created on the half line");
  }

  const EnergyPoint Ea = momentum_of(Complex(alpha, 0.0));
  const std::size_t n = grid.size();
  FactorSamples s;
  std::function<std::pair<double, double>(double)> closed;
  std::string description;

  std::visit(Overloaded{
                 [&](const JostCombination& c) {
                   if (half) throw CaseError("Jost-combination factor needs the full line");
                   s = jost_combination(V0, Ea, grid, c, options.solver);
                   description = "u = c_l f_l + c_r f_r at alpha";
                 },
                 [&](const HalfLineRegular&) {
                   if (!half) throw CaseError("regular-origin factor needs the half line");
                   const auto fl = solve_left(V0, Ea, grid, options.solver);
                   const auto v = true_values(fl, false), d = true_values(fl, true);
                   s = {std::vector<double>(n), std::vector<double>(n)};
                   for (std::size_t i = 0; i < n; ++i) {
                     s.u[i] = v[i].real();
                     s.du[i] = d[i].real();
                   }
                   description = "u = f_l(x, alpha)";
                 },
                 [&](const GroundState&) {
                   if (V0->bound_states.empty()) throw ThresholdError("h0 has no bound state to remove");
                   const double E0 = V0->bound_states.front();
                   if (std::abs(alpha - E0) > 1e-9 * std::max(1.0, std::abs(E0))) {
                     throw ThresholdError("ground-state factor requires alpha = E0");
                   }
                   s = ground_state(V0, Ea, grid, options.solver);
                   description = "u = ground state at alpha";
                 },
                 [&](const ClosedFormFactor& c) {
                   if (!c.u) throw DomainError("closed-form factor has no evaluator");
                   if (half && !V0->origin_singularity) {
                     const auto [u0, du0] = c.u(0.0);
                     if (std::abs(u0) > 1e-12 * (1.0 + std::abs(du0))) {
                       throw CaseError("factor must vanish at the origin on the half line");
                     }
                   }
                   s = {std::vector<double>(n), std::vector<double>(n)};
                   for (std::size_t i = 0; i < n; ++i) std::tie(s.u[i], s.du[i]) = c.u(grid[i]);
                   closed = c.u;
                   description = c.name;
                 },
             },
             u_spec);

  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(s.u[i]) || !std::isfinite(s.du[i])) throw OverflowError("factor not finite on the grid");
  }
  // Sign constancy; an exact zero is tolerated only at x = 0 on the half line.
  int sign = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (s.u[i] == 0.0) {
      if (half && grid[i] == 0.0) continue;
      throw NodeError("factor vanishes at x = " + std::to_string(grid[i]));
    }
    const int si = s.u[i] > 0.0 ? 1 : -1;
    if (sign == 0) sign = si;
    if (si != sign) throw NodeError("factor changes sign near x = " + std::to_string(grid[i]));
  }

  std::vector<double> u2(n), inv2(n);
  for (std::size_t i = 0; i < n; ++i) {
    u2[i] = s.u[i] * s.u[i];
    inv2[i] = s.u[i] == 0.0 ? 0.0 : 1.0 / u2[i];
  }
  TransformCase kase;
  if (half) {
    kase = converges_at(grid, u2, true) ? TransformCase::RemoveGroundState : TransformCase::Isospectral;
  } else {
    const bool u_norm = converges_at(grid, u2, false) && converges_at(grid, u2, true);
    const bool inv_norm = converges_at(grid, inv2, false) && converges_at(grid, inv2, true);
    kase = u_norm ? TransformCase::RemoveGroundState
                  : (inv_norm ? TransformCase::AddGroundState : TransformCase::Isospectral);
  }
  if (options.expected_case && *options.expected_case != kase) {
    throw CaseError(std::string("factor classifies as case (") + to_string(kase) + "), expected (" +
                    to_string(*options.expected_case) + ")");
  }
  if (kase == TransformCase::RemoveGroundState && !V0->bound_states.empty() &&
      std::abs(alpha - V0->bound_states.front()) > 1e-9 * std::max(1.0, std::abs(alpha))) {
    throw ThresholdError("normalizable factor away from the ground-state energy");
  }

  DarbouxData d(alpha, kase, grid);
  d.V0_ = V0;
  d.solver_ = options.solver;
  d.closed_u_ = closed;
  {
    std::vector<Complex> f(n), df(n);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
      f[i] = s.u[i];
      df[i] = s.du[i];
      v[i] = (*V0)(grid[i]);
    }
    BoundaryRecord rec{description, grid.x_min(), f.front(), df.front()};
    d.u_ = std::make_shared<const WaveSolution>(
        WaveData{grid, Ea, SolutionKind::Left, 0, std::move(f), std::move(df), std::move(v), V0, std::move(rec), {}});
  }
  d.w_.resize(n);
  d.dw_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    d.w_[i] = s.u[i] == 0.0 ? std::numeric_limits<double>::infinity() : s.du[i] / s.u[i];
    d.dw_[i] = d.u_->potential_node(i) - alpha - d.w_[i] * d.w_[i];
  }

  Potential V1;
  V1.name = V0->name + " partner";
  V1.domain = V0->domain;
  V1.decay = V0->decay;
  const double rate_u = 2.0 * std::sqrt(-alpha);
  V1.decay_rate = V0->decay_rate ? std::min(*V0->decay_rate, rate_u) : rate_u;
  if (half) V1.origin_singularity = V0->origin_singularity.value_or(0.0) + 2.0 * (V0->origin_angular_momentum() + 1.0);
  V1.bound_states = V0->bound_states;
  if (kase == TransformCase::RemoveGroundState && !V1.bound_states.empty()) V1.bound_states.erase(V1.bound_states.begin());
  if (kase == TransformCase::AddGroundState) V1.bound_states.insert(V1.bound_states.begin(), alpha);
  {
    auto u = d.u_;
    V1.evaluate = [V0, u, closed, alpha](double x) {
      double w;
      if (closed) {
        const auto [uv, duv] = closed(x);
        w = duv / uv;
      } else {
        const auto p = u->scaled(x);
        w = (p.df / p.f).real();
      }
      return -(*V0)(x) + 2.0 * alpha + 2.0 * w * w;
    };
  }
  d.V1_ = std::make_shared<const Potential>(std::move(V1));
  return d;
}

WaveSolution apply_L(const DarbouxData& d, const WaveSolution& s) {
  if (!s.grid().same_as(d.grid())) throw GridMismatch("solution and transformation live on different grids");
  const std::size_t n = s.size();
  const Complex E = s.energy().energy();
  std::vector<Complex> f(n), df(n);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = d.w_node(i), dw = d.dw_node(i);
    if (!std::isfinite(w)) throw DomainError("superpotential infinite at x = " + std::to_string(d.grid()[i]));
    const double v0 = d.factor().potential_node(i);
    if (std::abs(s.potential_node(i) - v0) > 1e-9 * (1.0 + std::abs(v0))) {
      throw DomainError("solution does not belong to h0 of the transformation");
    }
    const auto p = s.scaled_node(i);
    f[i] = -p.df + w * p.f;
    df[i] = (E - v0) * p.f + dw * p.f + w * p.df;
    v[i] = v0 - 2.0 * dw;
  }
  BoundaryRecord rec{"L applied to: " + s.boundary().description, s.boundary().x, f.front(), df.front()};
  return WaveSolution(WaveData{s.grid(), s.energy(), s.kind(), s.phase_sign(), std::move(f), std::move(df),
                               std::move(v), d.V1(), std::move(rec), s.diagnostics()});
}

WaveSolution normalize_chi(const DarbouxData& d, const WaveSolution& s, std::optional<Complex> E_n) {
  const Complex En = E_n.value_or(s.energy().energy());
  if (std::abs(En - d.alpha()) < 1e-14 * std::max(1.0, std::abs(d.alpha()))) {
    throw DivisionError("normalization undefined at E_n = alpha");
  }
  const Complex c = 1.0 / std::sqrt(En - d.alpha());
  WaveData data = apply_L(d, s).data();
  for (auto& x : data.f) x *= c;
  for (auto& x : data.df) x *= c;
  return WaveSolution(std::move(data));
}

GreenFunction green1_from_pair(const DarbouxData& d, const WaveSolution& fl0, const WaveSolution& fr0,
                               std::optional<Complex> W0) {
  const Complex W = W0.value_or(wronskian_profile(fr0, fl0).W0);
  const Complex dE = fl0.energy().energy() - d.alpha();
  if (std::abs(dE) < 1e-12 * std::max(1.0, std::abs(d.alpha()))) {
    throw DegenerateError(d.transform_case() == TransformCase::AddGroundState
                              ? "G1 has a pole at E = alpha"
                              : "E = alpha: use the regularized kernel");
  }
  return GreenFunction(apply_L(d, fl0), apply_L(d, fr0), dE * W, KernelLabel::G1);
}

double partner_wronskian_mismatch(const GreenFunction& G1) {
  const Complex W1 = wronskian_profile(G1.right(), G1.left()).W0;
  return std::abs(W1 - G1.wronskian()) / std::abs(G1.wronskian());
}

namespace {

// Kernel L_x L_y f_l0(min) f_r0(max) / W0 at E: equals (E - alpha) G1.
GreenFunction numerator_kernel(const DarbouxData& d, double E) {
  const EnergyPoint Ep = momentum_of(Complex(E, 0.0));
  const auto fl = solve_left(d.V0(), Ep, d.grid(), d.factor_solver());
  const auto fr = solve_right(d.V0(), Ep, d.grid(), d.factor_solver());
  const Complex W0 = wronskian_profile(fr, fl).W0;
  return GreenFunction(apply_L(d, fl), apply_L(d, fr), W0, KernelLabel::G1);
}

}  // namespace

RegularizedKernel green1_at_alpha(const DarbouxData& d, double h_E) {
  if (d.transform_case() == TransformCase::AddGroundState) throw CaseError("G1 has a simple pole at alpha in case (ii)");
  if (!(h_E > 0.0)) throw DomainError("energy step must be positive");
  const double a = d.alpha();
  return RegularizedKernel({numerator_kernel(d, a + h_E), numerator_kernel(d, a - h_E)},
                           {numerator_kernel(d, a + 0.5 * h_E), numerator_kernel(d, a - 0.5 * h_E)}, h_E);
}

Complex RegularizedKernel::operator()(double x, double y) const {
  const Complex coarse = (coarse_.first(x, y) - coarse_.second(x, y)) / (2.0 * step_);
  const Complex fine = (fine_.first(x, y) - fine_.second(x, y)) / step_;
  return (4.0 * fine - coarse) / 3.0;
}

Extrapolation richardson_limit(std::span<const Complex> samples, double ratio) {
  const std::size_t n = samples.size();
  if (n == 0) throw DomainError("no samples to extrapolate");
  std::vector<Complex> row(samples.begin(), samples.end());
  std::vector<Complex> diag{row.back()};
  // row[j] after pass m holds T[j][m]; diagonal entries T[n-1][m].
  double factor = 1.0;
  for (std::size_t m = 1; m < n; ++m) {
    factor *= ratio;
    for (std::size_t j = n - 1; j >= m; --j) row[j] = (factor * row[j] - row[j - 1]) / (factor - 1.0);
    diag.push_back(row[n - 1]);
  }
  Extrapolation out{diag.back(), 0.0};
  if (diag.size() >= 2) out.error = std::abs(diag.back() - diag[diag.size() - 2]);
  return out;
}

Extrapolation limit_at_alpha(const DarbouxData& d, double x, double y, double delta0, int terms) {
  if (terms < 1 || !(delta0 > 0.0)) throw DomainError("invalid extrapolation schedule");
  std::vector<Complex> samples;
  double delta = delta0;
  for (int j = 0; j < terms; ++j, delta *= 0.5) {
    const EnergyPoint Ep = momentum_of(Complex(d.alpha() - delta, 0.0));
    const auto fl = solve_left(d.V0(), Ep, d.grid(), d.factor_solver());
    const auto fr = solve_right(d.V0(), Ep, d.grid(), d.factor_solver());
    samples.push_back(green1_from_pair(d, fl, fr)(x, y));
  }
  return richardson_limit(samples);
}

Complex residue_at_alpha(const DarbouxData& d, double x, double y, std::span<const double> delta_E) {
  if (d.transform_case() != TransformCase::AddGroundState) throw CaseError("residue exists only in case (ii)");
  std::vector<double> deltas(delta_E.begin(), delta_E.end());
  if (deltas.empty()) {
    for (int j = 0; j < 6; ++j) deltas.push_back(0.05 * std::ldexp(1.0, -j));
  }
  for (std::size_t j = 1; j < deltas.size(); ++j) {
    if (std::abs(deltas[j] / deltas[j - 1] - 0.5) > 1e-12) throw DomainError("delta_E must halve at each step");
  }
  std::vector<Complex> samples;
  for (double delta : deltas) {
    const EnergyPoint Ep = momentum_of(Complex(d.alpha() - delta, 0.0));
    const auto fl = solve_left(d.V0(), Ep, d.grid(), d.factor_solver());
    const auto fr = solve_right(d.V0(), Ep, d.grid(), d.factor_solver());
    samples.push_back(delta * green1_from_pair(d, fl, fr)(x, y));
  }
  const auto r = richardson_limit(samples);
  if (!(r.error <= 1e-6 * std::max(1.0, std::abs(r.value)))) {
    throw ConvergenceError("residue extrapolation did not stabilize (change " + std::to_string(r.error) + ")");
  }
  return r.value;
}

}  // namespace susy
