#include <cmath>
#include <limits>

#include "helpers.hpp"

#include "susygreen/errors.hpp"
#include "susygreen/quadrature.hpp"
#include "susygreen/refmodels.hpp"

using namespace susy;

namespace {

// |-f'' + (V - E) f| / |f| by central differences of the closed form.
template <class F>
double fd_residual(const Potential& V, F&& f, Complex E, double x) {
  const double h = 2e-4;
  const Complex d2 = (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
  return std::abs(-d2 + (V(x) - E) * f(x)) / std::abs(f(x));
}

}  // namespace

TEST_SUITE("refmodels") {
  TEST_CASE("model names") {
    CHECK(parse_model("soliton") == ModelId::Soliton);
    CHECK(parse_model("free-half-line") == ModelId::FreeHalfLine);
    CHECK(std::string(to_string(ModelId::Csch)) == "csch");
    CHECK_THROWS_AS(parse_model("harmonic"), ConfigError);
  }

  TEST_CASE("potential values") {
    const auto s = reference_potential({ModelId::Soliton, 2.0});
    CHECK(s(0.0) == doctest::Approx(-8.0));
    CHECK(s(0.5) == doctest::Approx(-8.0 / std::pow(std::cosh(1.0), 2)));
    const auto c = reference_potential({ModelId::Csch, 1.0});
    CHECK(c(1.0) == doctest::Approx(2.0 / std::pow(std::sinh(1.0), 2)));
    CHECK(c.origin_singularity.value_or(0.0) == doctest::Approx(2.0));
    CHECK(reference_potential({ModelId::FreeLine, 1.0})(3.0) == 0.0);
    CHECK(deep_well_halfline(1.0)(0.4) == doctest::Approx(-6.0 / std::pow(std::cosh(0.4), 2)));
  }

  TEST_CASE("closed-form solutions solve the equation") {
    const Complex kappa(-0.7, 1.3);
    const Complex E = kappa * kappa;
    for (ModelId id : {ModelId::Soliton, ModelId::Csch, ModelId::FreeHalfLine}) {
      const ReferenceModel m{id, 1.0};
      const auto V = reference_potential(m);
      for (double x : {0.6, 1.9}) {
        CHECK(fd_residual(V, [&](double t) { return reference_left(m, kappa, t).first; }, E, x) < 1e-5);
        CHECK(fd_residual(V, [&](double t) { return reference_right(m, kappa, t).first; }, E, x) < 1e-5);
      }
    }
    const auto V = reference_potential({ModelId::Soliton, 1.0});
    CHECK(fd_residual(V, [](double t) { return soliton_scattering(1.0, 1.4, t); }, Complex(1.96), 0.3) < 1e-5);
    const auto C = reference_potential({ModelId::Csch, 1.0});
    CHECK(fd_residual(C, [](double t) { return Complex(csch_scattering(1.0, 0.8, t)); }, Complex(0.64), 1.1) < 1e-5);
  }

  TEST_CASE("Wronskian of the closed forms is constant") {
    const Complex kappa(0.4, 0.9);
    for (ModelId id : {ModelId::FreeLine, ModelId::Soliton, ModelId::FreeHalfLine, ModelId::Csch}) {
      const ReferenceModel m{id, 1.0};
      const Complex W = reference_wronskian(m, kappa);
      for (double x : {0.3, 1.2, 3.0}) {
        const auto l = reference_left(m, kappa, x), r = reference_right(m, kappa, x);
        CHECK_REL(r.first * l.second - r.second * l.first, W, 1e-12);
      }
    }
  }

  TEST_CASE("bound states are normalized and orthogonal to scattering states") {
    const double inf = std::numeric_limits<double>::infinity();
    const double n = integrate([](double x) { return std::pow(soliton_ground_state(1.5, x), 2); }, -inf, inf);
    CHECK(n == doctest::Approx(1.0).epsilon(1e-10));
    const auto b = panel_breaks(-40.0, 40.0, 0.25);
    const Complex o = integrate_panels([](double x) { return soliton_ground_state(1.0, x) * soliton_scattering(1.0, 0.9, x); }, b);
    CHECK(std::abs(o) < 1e-9);
    const double d = integrate([](double x) { return std::pow(deep_well_ground_state(1.0, x).first, 2); }, 0.0, inf);
    CHECK(d == doctest::Approx(1.0).epsilon(1e-10));
  }

  TEST_CASE("deep-well ground state") {
    const auto V = deep_well_halfline(1.0);
    auto u = [](double t) { return Complex(deep_well_ground_state(1.0, t).first); };
    CHECK(fd_residual(V, u, Complex(-1.0), 0.8) < 1e-5);
    const double h = 1e-6, x = 0.5;
    CHECK(deep_well_ground_state(1.0, x).second ==
          doctest::Approx((deep_well_ground_state(1.0, x + h).first - deep_well_ground_state(1.0, x - h).first) / (2 * h))
              .epsilon(1e-7));
  }

  TEST_CASE("csch kernel is continuous through kappa = ia") {
    const ReferenceModel m{ModelId::Csch, 1.0};
    const Complex at = reference_green_kappa(m, 0.6, 1.4, I);
    CHECK(std::isfinite(at.real()));
    for (Complex d : {Complex(1e-5, 0.0), Complex(0.0, 1e-5), Complex(-1e-5, -1e-5)}) {
      CHECK(std::abs(reference_green_kappa(m, 0.6, 1.4, I + d) - at) < 1e-4);
    }
    CHECK_REL(reference_green(m, 0.6, 1.4, momentum_of(-4.0)), reference_green_kappa(m, 0.6, 1.4, 2.0 * I), 1e-12);
  }
}
