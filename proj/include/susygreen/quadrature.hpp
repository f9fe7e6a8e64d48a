#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace susy {

struct QuadOptions {
  /// Relative tolerance (against the L1 norm of the integrand).
  double tol = 1e-12;
  unsigned max_depth = 12;
};

/// Adaptive Gauss-Kronrod (G10/K21) on [a, b]; b may be +inf.
template <class F>
auto integrate(F&& f, double a, double b, const QuadOptions& options = {}) {
  double error = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 21>::integrate(f, a, b, options.max_depth, options.tol,
                                                                       &error);
}

/// Sum of adaptive integrals over consecutive panels [b_i, b_{i+1}].
template <class F>
auto integrate_panels(F&& f, std::span<const double> breaks, const QuadOptions& options = {}) {
  using R = decltype(f(breaks[0]));
  R sum{};
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) sum += integrate(f, breaks[i], breaks[i + 1], options);
  return sum;
}

/// Breakpoints splitting [a, b] into equal panels no longer than max_length.
std::vector<double> panel_breaks(double a, double b, double max_length);

/// Fixed n-point Gauss-Legendre rule on [a, b] (n in {5, 7}).
template <class F>
auto gauss_legendre(F&& f, double a, double b, int n = 7) {
  static constexpr double x5[] = {0.0, 0.5384693101056831, 0.9061798459386640};
  static constexpr double w5[] = {0.5688888888888889, 0.4786286704993665, 0.2369268850561891};
  static constexpr double x7[] = {0.0, 0.4058451513773972, 0.7415311855993945, 0.9491079123427585};
  static constexpr double w7[] = {0.4179591836734694, 0.3818300505051189, 0.2797053914892767, 0.1294849661688697};
  const double* xs = n == 5 ? x5 : x7;
  const double* ws = n == 5 ? w5 : w7;
  const int m = n == 5 ? 3 : 4;
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  auto sum = ws[0] * f(c);
  for (int i = 1; i < m; ++i) sum += ws[i] * (f(c - h * xs[i]) + f(c + h * xs[i]));
  return sum * h;
}

}  // namespace susy
