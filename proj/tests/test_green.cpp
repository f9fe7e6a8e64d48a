#include <cmath>

#include "helpers.hpp"

#include "susygreen/errors.hpp"
#include "susygreen/green.hpp"
#include "susygreen/refmodels.hpp"

using namespace susy;

namespace {

GreenFunction kernel_for(const ReferenceModel& m, Complex E) {
  const auto V = reference_potential(m);
  const auto g = grid_for(V);
  const auto e = momentum_of(E);
  return assemble_green(solve_left(V, e, g), solve_right(V, e, g));
}

}  // namespace

TEST_SUITE("greenfn") {
  TEST_CASE("free line kernel") {
    const auto G = kernel_for({ModelId::FreeLine, 1.0}, -4.0);
    CHECK_REL(G(0.0, 0.0), 0.25, 1e-12);
    CHECK_REL(G(1.0, 2.0), 0.25 * std::exp(-2.0), 1e-10);
  }

  // Reference values from closed-form Jost solutions evaluated at 30 digits.
  TEST_CASE("soliton kernel matches high-precision values") {
    const ReferenceModel m{ModelId::Soliton, 1.0};
    const auto G4 = kernel_for(m, -4.0);
    CHECK_REL(G4(0.0, 0.0), 1.0 / 3.0, 1e-10);
    CHECK_REL(G4(0.3, 1.1), 0.080509220535882635, 1e-10);
    CHECK_REL(G4(-1.2, 0.5), 0.019403190302833666, 1e-10);
    const auto G = kernel_for(m, Complex(-2.0, 1.0));
    CHECK_REL(G(0.0, 0.0), Complex(0.44972685998696682, 0.27794648512571059), 1e-10);
    CHECK_REL(G(0.3, 1.1), Complex(0.13429008358337016, 0.15408565768171267), 1e-10);
    CHECK_REL(G(-1.2, 0.5), Complex(0.026178193676952458, 0.085905048376992079), 1e-10);
  }

  TEST_CASE("csch kernel matches high-precision values") {
    const ReferenceModel m{ModelId::Csch, 1.0};
    CHECK_REL(kernel_for(m, -4.0)(1.0, 1.0), 0.20641454216185695, 1e-10);
    CHECK_REL(kernel_for(m, -4.0)(0.4, 1.3), 0.01320152824224237, 1e-10);
    const auto G = kernel_for(m, Complex(-2.0, 1.0));
    CHECK_REL(G(1.0, 1.0), Complex(0.24675693444333829, 0.030715372638941211), 1e-10);
    CHECK_REL(G(0.4, 1.3), Complex(0.02070609564104754, 0.006408181958094017), 1e-10);
  }

  TEST_CASE("symmetry, jump and ODE residual") {
    for (ModelId id : {ModelId::FreeLine, ModelId::Soliton, ModelId::FreeHalfLine, ModelId::Csch}) {
      const bool half = id == ModelId::FreeHalfLine || id == ModelId::Csch;
      const auto G = kernel_for({id, 1.0}, Complex(1.5, -2.5));
      for (double x : {0.3, 1.7, 4.1}) {
        const double y = half ? x + 0.9 : -x;
        CHECK(G(x, y) == G(y, x));
        CHECK(std::abs(jump_check(G, x) + 1.0) < 1e-6);
        CHECK(kernel_ode_residual(G, x, y) < 1e-6);
      }
    }
  }

  TEST_CASE("jump_check needs an interior point") {
    const auto G = kernel_for({ModelId::Soliton, 1.0}, -4.0);
    CHECK_THROWS_AS(jump_check(G, G.x_max()), DomainError);
  }

  TEST_CASE("kernel evaluation outside the grid fails") {
    const auto G = kernel_for({ModelId::Csch, 1.0}, -4.0);
    CHECK_THROWS_AS(G(-0.5, 1.0), DomainError);
  }

  TEST_CASE("spectral representation of the reference models") {
    const auto E = momentum_of(Complex(-2.0, 1.0));
    for (ModelId id : {ModelId::FreeLine, ModelId::Soliton, ModelId::FreeHalfLine, ModelId::Csch}) {
      const ReferenceModel m{id, 1.0};
      const double x = 0.4, y = 1.3;
      const Complex s = spectral_reconstruct(spectral_model(m), x, y, E, 60.0);
      CHECK(std::abs(s - kernel_for(m, E.energy())(x, y)) < 1e-3);
    }
  }

  TEST_CASE("spectral cutoff must clear the pole") {
    const auto E = momentum_of(Complex(-100.0, 1.0));
    CHECK_THROWS_AS(spectral_reconstruct(spectral_model({ModelId::FreeLine, 1.0}), 0.0, 0.0, E, 10.0), DomainError);
  }
}
