#include "susygreen/wave.hpp"

#include <array>
#include <cmath>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "susygreen/errors.hpp"

namespace susy {

namespace {

using State = std::array<Complex, 2>;

// Quintic Hermite interpolant on [0, h] from (F, F', F'') at both ends.
// Returns (p(t h), p'(t h)).
std::pair<Complex, Complex> hermite5(double t, double h, Complex F0, Complex D0, Complex S0, Complex F1, Complex D1,
                                     Complex S1) {
  auto basis = [](double s) {
    const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
    return std::array<double, 3>{1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5, s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5,
                                 0.5 * (s2 - 3.0 * s3 + 3.0 * s4 - s5)};
  };
  auto dbasis = [](double s) {
    const double s2 = s * s, s3 = s2 * s, s4 = s3 * s;
    return std::array<double, 3>{-30.0 * s2 + 60.0 * s3 - 30.0 * s4, 1.0 - 18.0 * s2 + 32.0 * s3 - 15.0 * s4,
                                 0.5 * (2.0 * s - 9.0 * s2 + 12.0 * s3 - 5.0 * s4)};
  };
  const auto b0 = basis(t), b1 = basis(1.0 - t);
  const auto d0 = dbasis(t), d1 = dbasis(1.0 - t);
  Complex p = F0 * b0[0] + h * D0 * b0[1] + h * h * S0 * b0[2] + F1 * b1[0] - h * D1 * b1[1] + h * h * S1 * b1[2];
  Complex dp = F0 * d0[0] + h * D0 * d0[1] + h * h * S0 * d0[2] - F1 * d1[0] + h * D1 * d1[1] - h * h * S1 * d1[2];
  return {p, dp / h};
}

struct LocalInterval {
  double x0, h;
  Complex F0, D0, S0, F1, D1, S1;
};

// Node data of interval i rewritten as the true solution times the
// constant exp(-s i kappa x_i), so the interpolated shape is f itself.
LocalInterval local_interval(const WaveData& d, std::size_t i) {
  const double x0 = d.grid[i], x1 = d.grid[i + 1];
  const double h = x1 - x0;
  const Complex E = d.energy.energy();
  const Complex phase = std::exp(static_cast<double>(d.phase_sign) * I * d.energy.kappa() * h);
  LocalInterval li{x0, h, d.f[i], d.df[i], (d.v[i] - E) * d.f[i], d.f[i + 1] * phase, d.df[i + 1] * phase, {}};
  li.S1 = (d.v[i + 1] - E) * li.F1;
  return li;
}

constexpr std::array<double, 5> kGaussNodes{-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                            0.9061798459386640};
constexpr std::array<double, 5> kGaussWeights{0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                              0.4786286704993665, 0.2369268850561891};

void check_finite(const State& y, double cap, double x) {
  for (const auto& c : y) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()) || std::abs(c) > cap) {
      throw OverflowError("solution magnitude exceeds the cap at x = " + std::to_string(x));
    }
  }
}

WaveSolution integrate(std::shared_ptr<const Potential> Vp, const EnergyPoint& E, const Grid& grid, SolutionKind kind,
                       const SolverOptions& options) {
  namespace odeint = boost::numeric::odeint;
  const Potential& V = *Vp;
  if (!V.evaluate) throw DomainError("potential has no evaluator");
  if (V.domain == Domain::HalfLine && grid.x_min() < 0.0) {
    throw DomainError("half-line potential on a grid extending below the origin");
  }
  if (V.domain == Domain::HalfLine && V.origin_singularity && !(grid.x_min() > 0.0)) {
    throw DomainError("singular origin requires a grid starting at x0 > 0");
  }
  if (V.domain == Domain::FullLine && !(grid.x_min() < 0.0 && grid.x_max() > 0.0)) {
    throw DomainError("full-line potential needs a grid straddling the origin");
  }

  const Complex kappa = E.kappa();
  const Complex energy = E.energy();
  const int s = kind == SolutionKind::Left ? -1 : 1;
  const Complex sik = static_cast<double>(s) * I * kappa;

  // d/dx (f~, f~') for f~ = f exp(-s i kappa x), f~' = f' exp(-s i kappa x).
  auto rhs = [&](const State& y, State& dy, double x) {
    dy[0] = y[1] - sik * y[0];
    dy[1] = (V(x) - energy) * y[0] - sik * y[1];
  };
  auto stepper = odeint::make_controlled(options.tol, options.tol, odeint::runge_kutta_fehlberg78<State>());

  const std::size_t n = grid.size();
  std::vector<Complex> f(n), df(n);
  std::vector<double> v(n);
  std::vector<std::string> diagnostics;
  BoundaryRecord record;
  State y{};

  if (kind == SolutionKind::Left) {
    std::size_t first = 0;
    if (V.domain == Domain::FullLine) {
      const double xa = grid.x_min();
      y = {Complex(1.0), -I * kappa};
      record = {"f -> exp(-i kappa x) as x -> -inf (Jost)", xa, std::exp(-I * kappa * xa),
                -I * kappa * std::exp(-I * kappa * xa)};
      if (std::abs(V(xa)) > options.tol) {
        diagnostics.push_back("|V(x_min)| exceeds tolerance; truncation may be too short");
      }
    } else if (V.origin_singularity) {
      const double x0 = grid.x_min();
      const double c = *V.origin_singularity;
      const double m = V.origin_angular_momentum() + 1.0;
      const double v0 = V(x0) - c / (x0 * x0);
      const Complex b = (v0 - energy) / (4.0 * m + 2.0);
      const Complex fv = std::pow(x0, m) * (1.0 + b * x0 * x0);
      const Complex dv = m * std::pow(x0, m - 1.0) + b * (m + 2.0) * std::pow(x0, m + 1.0);
      const Complex scale = std::exp(-sik * x0);
      y = {fv * scale, dv * scale};
      record = {"regular Frobenius start f ~ x^(l+1) at x0", x0, fv, dv};
    } else {
      y = {Complex(0.0), Complex(1.0)};
      record = {"f(0) = 0, f'(0) = 1", 0.0, Complex(0.0), Complex(1.0)};
      if (grid.x_min() > 0.0) {
        odeint::integrate_adaptive(stepper, rhs, y, 0.0, grid.x_min(), grid.x_min());
        check_finite(y, options.overflow_cap, grid.x_min());
      }
    }
    f[first] = y[0];
    df[first] = y[1];
    v[first] = V(grid[first]);
    for (std::size_t i = first + 1; i < n; ++i) {
      odeint::integrate_adaptive(stepper, rhs, y, grid[i - 1], grid[i], grid[i] - grid[i - 1]);
      check_finite(y, options.overflow_cap, grid[i]);
      f[i] = y[0];
      df[i] = y[1];
      v[i] = V(grid[i]);
    }
  } else {
    const double xb = grid.x_max();
    y = {Complex(1.0), I * kappa};
    record = {"f -> exp(+i kappa x) as x -> +inf (Jost)", xb, std::exp(I * kappa * xb),
              I * kappa * std::exp(I * kappa * xb)};
    if (std::abs(V(xb)) > options.tol) {
      diagnostics.push_back("|V(x_max)| exceeds tolerance; truncation may be too short");
    }
    f[n - 1] = y[0];
    df[n - 1] = y[1];
    v[n - 1] = V(xb);
    for (std::size_t j = n - 1; j-- > 0;) {
      odeint::integrate_adaptive(stepper, rhs, y, grid[j + 1], grid[j], grid[j] - grid[j + 1]);
      check_finite(y, options.overflow_cap, grid[j]);
      f[j] = y[0];
      df[j] = y[1];
      v[j] = V(grid[j]);
    }
  }

  return WaveSolution(WaveData{grid, E, kind, s, std::move(f), std::move(df), std::move(v), std::move(Vp),
                               std::move(record), std::move(diagnostics)});
}

}  // namespace

WaveSolution::WaveSolution(WaveData data) : data_(std::move(data)) {
  const std::size_t n = data_.grid.size();
  if (data_.f.size() != n || data_.df.size() != n || data_.v.size() != n) {
    throw GridMismatch("solution samples do not match the grid");
  }
  if (data_.phase_sign < -1 || data_.phase_sign > 1) throw DomainError("phase sign must be -1, 0 or 1");
  if (!data_.potential) throw DomainError("solution needs its potential");
}

Complex WaveSolution::scale_factor(double x) const {
  return std::exp(static_cast<double>(data_.phase_sign) * I * data_.energy.kappa() * x);
}

ScaledPair WaveSolution::scaled(double x) const {
  const Grid& g = data_.grid;
  if (x < g.x_min() || x > g.x_max()) {
    throw DomainError("evaluation point " + std::to_string(x) + " outside the grid");
  }
  const std::size_t i = g.interval_of(x);
  if (x == g[i]) return {data_.f[i], data_.df[i]};
  if (x == g[i + 1]) return {data_.f[i + 1], data_.df[i + 1]};
  const LocalInterval li = local_interval(data_, i);
  const double t = (x - li.x0) / li.h;
  auto [p, dp] = hermite5(t, li.h, li.F0, li.D0, li.S0, li.F1, li.D1, li.S1);
  const Complex back = std::exp(-static_cast<double>(data_.phase_sign) * I * data_.energy.kappa() * (x - li.x0));
  return {p * back, dp * back};
}

Complex WaveSolution::value(double x) const { return scaled(x).f * scale_factor(x); }
Complex WaveSolution::derivative(double x) const { return scaled(x).df * scale_factor(x); }

double WaveSolution::max_scaled_magnitude() const {
  double m = 0.0;
  for (const auto& c : data_.f) m = std::max(m, std::abs(c));
  return m;
}

double WaveSolution::residual() const {
  const Potential& V = *data_.potential;
  const Complex E = data_.energy.energy();
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < data_.grid.size(); ++i) {
    const LocalInterval li = local_interval(data_, i);
    Complex integral = 0.0;
    for (std::size_t q = 0; q < kGaussNodes.size(); ++q) {
      const double t = 0.5 * (kGaussNodes[q] + 1.0);
      auto [p, dp] = hermite5(t, li.h, li.F0, li.D0, li.S0, li.F1, li.D1, li.S1);
      (void)dp;
      integral += 0.5 * li.h * kGaussWeights[q] * (V(li.x0 + t * li.h) - E) * p;
    }
    worst = std::max(worst, std::abs(li.D1 - li.D0 - integral));
  }
  return worst;
}

WaveSolution WaveSolution::from_function(const Grid& grid, EnergyPoint energy, SolutionKind kind, int phase_sign,
                                         std::shared_ptr<const Potential> V,
                                         const std::function<std::pair<Complex, Complex>(double)>& fn,
                                         std::string description) {
  const std::size_t n = grid.size();
  std::vector<Complex> f(n), df(n);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid[i];
    const Complex unscale = std::exp(-static_cast<double>(phase_sign) * I * energy.kappa() * x);
    auto [fv, dv] = fn(x);
    f[i] = fv * unscale;
    df[i] = dv * unscale;
    v[i] = (*V)(x);
  }
  BoundaryRecord rec{std::move(description), grid.x_min(), f.front(), df.front()};
  return WaveSolution(WaveData{grid, energy, kind, phase_sign, std::move(f), std::move(df), std::move(v), std::move(V),
                               std::move(rec), {}});
}

WaveSolution solve_left(std::shared_ptr<const Potential> V, const EnergyPoint& E, const Grid& grid,
                        const SolverOptions& options) {
  return integrate(std::move(V), E, grid, SolutionKind::Left, options);
}

WaveSolution solve_right(std::shared_ptr<const Potential> V, const EnergyPoint& E, const Grid& grid,
                         const SolverOptions& options) {
  return integrate(std::move(V), E, grid, SolutionKind::Right, options);
}

WaveSolution solve_left(const Potential& V, const EnergyPoint& E, const Grid& grid, const SolverOptions& options) {
  return solve_left(std::make_shared<const Potential>(V), E, grid, options);
}

WaveSolution solve_right(const Potential& V, const EnergyPoint& E, const Grid& grid, const SolverOptions& options) {
  return solve_right(std::make_shared<const Potential>(V), E, grid, options);
}

void require_compatible(const WaveSolution& a, const WaveSolution& b) {
  if (!a.grid().same_as(b.grid())) throw GridMismatch("solutions live on different grids");
  if (a.energy().kappa() != b.energy().kappa()) throw GridMismatch("solutions belong to different energies");
}

Complex wronskian_at_node(const WaveSolution& f, const WaveSolution& g, std::size_t i) {
  const auto a = f.scaled_node(i), b = g.scaled_node(i);
  const double x = f.grid()[i];
  const Complex phase =
      std::exp(static_cast<double>(f.phase_sign() + g.phase_sign()) * I * f.energy().kappa() * x);
  return (a.f * b.df - a.df * b.f) * phase;
}

WronskianProfile wronskian_profile(const WaveSolution& fr, const WaveSolution& fl, double floor_factor) {
  require_compatible(fr, fl);
  WronskianProfile out;
  const std::size_t n = fr.size();
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = wronskian_at_node(fr, fl, i);
  out.W0 = out.values[n / 2];
  const double floor = floor_factor * std::max(std::abs(fr.energy().kappa()), 1e-300);
  if (!(std::abs(out.W0) >= floor)) {
    throw DegenerateError("Wronskian below floor: E is numerically a spectral point");
  }
  for (const auto& w : out.values) out.max_deviation = std::max(out.max_deviation, std::abs(w - out.W0) / std::abs(out.W0));
  return out;
}

}  // namespace susy
