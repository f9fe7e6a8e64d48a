#include "susygreen/trace.hpp"

#include <algorithm>
#include <cmath>

#include "susygreen/errors.hpp"
#include "susygreen/quadrature.hpp"

namespace susy {

namespace {

Complex delta_at(const GreenFunction& G0, const GreenFunction& G1, double x) { return G0.diagonal(x) - G1.diagonal(x); }

// Product of two solutions at node i with the scalings undone.
Complex node_product(const WaveSolution& F, const WaveSolution& H, std::size_t i) {
  const double x = F.grid()[i];
  const Complex phase = std::exp(static_cast<double>(F.phase_sign() + H.phase_sign()) * I * F.energy().kappa() * x);
  return F.scaled_node(i).f * H.scaled_node(i).f * phase;
}

// Non-oscillating part of F H at node i.
Complex asymptotic_product(const WaveSolution& F, const WaveSolution& H, std::size_t i) {
  const double x = F.grid()[i];
  const Complex kappa = F.energy().kappa();
  const Complex phase = std::exp(static_cast<double>(F.phase_sign() + H.phase_sign()) * I * kappa * x);
  const auto a = F.scaled_node(i), b = H.scaled_node(i);
  return 0.5 * (a.f * b.f + a.df * b.df / (kappa * kappa)) * phase;
}

Complex origin_product(const WaveSolution& F, const WaveSolution& H) {
  const double x0 = F.grid()[0], x1 = F.grid()[1];
  const Complex p0 = node_product(F, H, 0);
  if (x0 == 0.0) return p0;
  const Complex p1 = node_product(F, H, 1);
  return (x1 * x1 * p0 - x0 * x0 * p1) / (x1 * x1 - x0 * x0);
}

std::array<Complex, 4> q_from_products(const BoundaryProducts& p, Complex W0) {
  return {p.rl_b - p.rl_a, p.lr_b - p.lr_a, -W0 + p.lr_b - p.rl_a, W0 + p.rl_b - p.lr_a};
}

void require_same(const WaveSolution& a, const WaveSolution& b) {
  require_compatible(a, b);
  if (a.potential().domain != b.potential().domain) throw GridMismatch("solutions on different domains");
}

}  // namespace

TraceIntegral trace_numeric(const GreenFunction& G0, const GreenFunction& G1, const TraceOptions& options) {
  require_same(G0.left(), G1.left());
  require_same(G0.right(), G1.right());
  const Grid& g = G0.left().grid();
  const bool half = G0.potential().domain == Domain::HalfLine;
  const Complex kappa = G0.energy().kappa();
  const std::size_t n = g.size();

  std::vector<Complex> cumulative(n, Complex(0.0));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    auto f = [&](double x) { return delta_at(G0, G1, x); };
    cumulative[i + 1] = cumulative[i] + gauss_legendre(f, g[i], g[i + 1], 7);
  }
  std::vector<Complex> D(n);
  for (std::size_t i = 0; i < n; ++i) D[i] = delta_at(G0, G1, g[i]);

  auto window = [&](std::size_t lo, std::size_t hi) {
    Complex tails = I * D[hi] / (2.0 * kappa);
    if (half) {
      tails += 0.5 * g[lo] * D[lo];
    } else {
      tails += I * D[lo] / (2.0 * kappa);
    }
    return std::pair<Complex, Complex>{cumulative[hi] - cumulative[lo] + tails, tails};
  };

  const auto [value, tails] = window(0, n - 1);
  const std::size_t hi2 = g.nearest(0.5 * g.x_max());
  const std::size_t lo2 = half ? 0 : g.nearest(0.5 * g.x_min());
  const Complex halved = window(lo2, hi2).first;

  TraceIntegral out{value, tails, std::abs(value - halved)};
  if (out.window_change > options.tail_tol * (1.0 + std::abs(value))) {
    throw TailError("trace changes by " + std::to_string(out.window_change) + " when the window is halved");
  }
  return out;
}

BoundaryProducts boundary_products(const WaveSolution& fl0, const WaveSolution& fr0, const WaveSolution& fl1,
                                   const WaveSolution& fr1, const TraceOptions& options) {
  require_same(fl0, fr0);
  require_same(fl0, fl1);
  require_same(fl0, fr1);
  const Grid& g = fl0.grid();
  const std::size_t n = g.size();
  const bool half = fl0.potential().domain == Domain::HalfLine;
  const double scale = std::abs(wronskian_at_node(fr0, fl0, n / 2));

  auto checked = [&](const WaveSolution& F, const WaveSolution& H, std::size_t end, std::size_t mid) {
    const Complex A = asymptotic_product(F, H, end);
    const Complex B = asymptotic_product(F, H, mid);
    if (std::abs(A - B) > options.asymptotic_tol * std::max(std::abs(A), scale)) {
      throw AsymptoticError("boundary product not converged: relative change " +
                            std::to_string(std::abs(A - B) / std::max(std::abs(A), scale)));
    }
    return A;
  };

  BoundaryProducts p;
  const std::size_t b_mid = g.nearest(0.5 * g.x_max());
  p.rl_b = checked(fr0, fl1, n - 1, b_mid);
  p.lr_b = checked(fl0, fr1, n - 1, b_mid);
  if (half) {
    p.rl_a = origin_product(fr0, fl1);
    p.lr_a = origin_product(fl0, fr1);
  } else {
    const std::size_t a_mid = g.nearest(0.5 * g.x_min());
    p.rl_a = checked(fr0, fl1, 0, a_mid);
    p.lr_a = checked(fl0, fr1, 0, a_mid);
  }
  return p;
}

std::array<Complex, 4> q_boundary(const WaveSolution& fl0, const WaveSolution& fr0, const WaveSolution& fl1,
                                  const WaveSolution& fr1, Complex W0, const TraceOptions& options) {
  return q_from_products(boundary_products(fl0, fr0, fl1, fr1, options), W0);
}

double cross_identity_check(const WaveSolution& fl0, const WaveSolution& fr0, const WaveSolution& fl1,
                            const WaveSolution& fr1) {
  require_same(fl0, fr0);
  require_same(fl0, fl1);
  require_same(fl0, fr1);
  const Complex W0 = wronskian_profile(fr0, fl0).W0;
  double worst = 0.0;
  for (std::size_t i = 0; i < fl0.size(); ++i) {
    const Complex r = node_product(fl0, fr1, i) - node_product(fr0, fl1, i) - W0;
    worst = std::max(worst, std::abs(r) / std::abs(W0));
  }
  return worst;
}

TraceSplit split_trace(const EnergyPoint& E, double alpha, const BoundaryProducts& products, Complex W0) {
  const Complex dE = E.energy() - alpha;
  if (dE == Complex(0.0)) throw DivisionError("split undefined at E = alpha");
  return {-1.0 / dE, (products.lr_b - products.rl_a) / (W0 * dE)};
}

namespace {

int delta_full(TransformCase c) {
  switch (c) {
    case TransformCase::RemoveGroundState:
      return 1;
    case TransformCase::AddGroundState:
      return -1;
    case TransformCase::Isospectral:
      return 0;
  }
  return 0;
}

}  // namespace

Complex trace_closed_fullline(const EnergyPoint& E, double a, TransformCase c) {
  const double d = delta_full(c);
  const Complex k = E.kappa();
  return d / (k * k + I * a * k) - d / (k * k + a * a);
}

Complex trace_closed_halfline(const EnergyPoint& E, double a, TransformCase c, HalfLineConvention convention) {
  double d1 = 0.0, d2 = 0.0;
  switch (c) {
    case TransformCase::RemoveGroundState:
      d1 = 1.0;
      d2 = 1.0;
      break;
    case TransformCase::Isospectral:
      d1 = 0.0;
      d2 = -1.0;
      break;
    case TransformCase::AddGroundState:
      throw CaseError("no new ground state can be created on the half line");
  }
  const Complex k = E.kappa();
  const double s = convention == HalfLineConvention::AsPrinted ? -1.0 : 1.0;
  return d2 / (2.0 * (k * k + s * I * a * k)) - d1 / (k * k + a * a);
}

double TraceReport::max_discrepancy() const {
  return std::max({q_spread, boundary_mismatch, closed_mismatch, identity_residual});
}

TraceReport make_trace_report(const GreenFunction& G0, const GreenFunction& G1, double alpha, TransformCase c,
                              std::optional<Complex> closed_form, const TraceOptions& options) {
  TraceReport r{G0.energy()};
  r.alpha = alpha;
  r.transform_case = c;
  const auto integral = trace_numeric(G0, G1, options);
  r.numeric_trace = integral.value;
  r.window_change = integral.window_change;

  const Complex W0 = G0.wronskian();
  const auto products = boundary_products(G0.left(), G0.right(), G1.left(), G1.right(), options);
  r.Q = q_from_products(products, W0);
  const Complex dE = G0.energy().energy() - alpha;
  r.boundary_trace = r.Q[2] / (W0 * dE);
  r.split = split_trace(G0.energy(), alpha, products, W0);

  double qmax = std::abs(W0);
  for (const auto& q : r.Q) qmax = std::max(qmax, std::abs(q));
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) r.q_spread = std::max(r.q_spread, std::abs(r.Q[i] - r.Q[j]) / qmax);
  }
  r.boundary_mismatch = std::abs(r.numeric_trace - r.boundary_trace) / (1.0 + std::abs(r.numeric_trace));
  r.identity_residual = cross_identity_check(G0.left(), G0.right(), G1.left(), G1.right());
  r.closed_form = closed_form;
  if (closed_form) {
    const double diff = std::abs(r.numeric_trace - *closed_form);
    r.closed_mismatch = std::abs(*closed_form) > 1e-12 ? diff / std::abs(*closed_form) : diff;
  }
  return r;
}

}  // namespace susy
