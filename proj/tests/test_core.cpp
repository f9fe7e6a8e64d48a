#include <cmath>
#include <limits>

#include "helpers.hpp"

#include "susygreen/errors.hpp"
#include "susygreen/grid.hpp"
#include "susygreen/quadrature.hpp"
#include "susygreen/refmodels.hpp"
#include "susygreen/wave.hpp"

using namespace susy;

TEST_SUITE("core") {
  TEST_CASE("momentum picks the root with positive imaginary part") {
    const auto E = momentum_of(-4.0);
    CHECK_ABS(E.kappa(), Complex(0.0, 2.0), 1e-15);
    CHECK_FALSE(E.on_cut());
    // sqrt(3 - 4i) = 2 - i, flipped to -2 + i.
    CHECK_ABS(momentum_of(Complex(3.0, -4.0)).kappa(), Complex(-2.0, 1.0), 1e-14);
    CHECK_ABS(momentum_of(Complex(3.0, 4.0)).kappa(), Complex(2.0, 1.0), 1e-14);
  }

  TEST_CASE("cut energies are rejected unless shifted") {
    CHECK_THROWS_WITH_AS(momentum_of(4.0), doctest::Contains("energy on continuous spectrum"), BranchError);
    CHECK_THROWS_AS(momentum_of(0.0), BranchError);
    CHECK_THROWS_AS(momentum_of(Complex(std::numeric_limits<double>::infinity(), 0.0)), BranchError);
    CHECK_THROWS_AS(momentum_of(4.0, 0.0), BranchError);
    const auto shifted = momentum_of(4.0, 1e-8);
    CHECK(shifted.kappa().imag() > 0.0);
    CHECK(shifted.kappa().real() == doctest::Approx(2.0));
  }

  TEST_CASE("boundary values on the cut") {
    const auto k = EnergyPoint::on_cut(2.0);
    CHECK(k.on_cut());
    CHECK_ABS(k.energy(), 4.0, 0.0);
    CHECK_THROWS_AS(EnergyPoint::from_kappa(Complex(1.0, -1.0)), BranchError);
    CHECK_ABS(EnergyPoint::from_kappa(Complex(1.0, 1.0)).energy(), Complex(0.0, 2.0), 1e-15);
  }

  TEST_CASE("uniform and graded grids") {
    const auto g = Grid::uniform(-1.0, 1.0, 0.5);
    REQUIRE(g.size() == 5);
    CHECK(g.interval_of(0.3) == 2);
    CHECK(g.nearest(0.3) == 3);
    CHECK_THROWS_AS(Grid::uniform(1.0, -1.0, 0.1), DomainError);
    CHECK_THROWS_AS(Grid({0.0, 1.0, 1.0}), DomainError);

    const auto h = Grid::half_line(10.0, 0.01, 1e-4, 1.05);
    CHECK(h.x_min() == doctest::Approx(1e-4));
    CHECK(h.x_max() == doctest::Approx(10.0));
    double widest = 0.0;
    for (std::size_t i = 1; i < h.size(); ++i) widest = std::max(widest, h[i] - h[i - 1]);
    CHECK(widest <= 0.01 + 1e-12);
    CHECK_THROWS_AS(Grid::half_line(10.0, 0.01, 1e-4, 1.0), DomainError);
  }

  TEST_CASE("truncation follows the decay rate") {
    const auto V = reference_potential({ModelId::Soliton, 1.0});
    const auto g = grid_for(V);
    CHECK(g.x_max() == doctest::Approx(20.0));
    CHECK(g.x_min() == doctest::Approx(-20.0));
    GridOptions o;
    o.x_max = 12.0;
    CHECK(grid_for(V, o).x_max() == doctest::Approx(12.0));
  }

  TEST_CASE("potential validation") {
    validate_potential(reference_potential({ModelId::Soliton, 1.0}));
    validate_potential(reference_potential({ModelId::Csch, 1.0}));
    Potential bad = zero_potential(Domain::FullLine);
    bad.evaluate = [](double x) { return x > 1.0 ? std::nan("") : 0.0; };
    CHECK_THROWS_AS(validate_potential(bad), DomainError);
    Potential wrong = reference_potential({ModelId::Csch, 1.0});
    wrong.origin_singularity = 6.0;
    CHECK_THROWS_AS(validate_potential(wrong), DomainError);
    Potential line = zero_potential(Domain::FullLine);
    line.origin_singularity = 2.0;
    CHECK_THROWS_AS(validate_potential(line), DomainError);
  }

  TEST_CASE("free Jost solutions are plane waves") {
    const auto V = zero_potential(Domain::FullLine);
    const auto E = momentum_of(Complex(-2.0, 1.0));
    const auto g = Grid::uniform(-20.0, 20.0, 0.01);
    const auto fl = solve_left(V, E, g), fr = solve_right(V, E, g);
    const Complex k = E.kappa();
    for (double x : {-7.3, 0.0, 3.31}) {
      CHECK_REL(fl.value(x), std::exp(-I * k * x), 1e-9);
      CHECK_REL(fl.derivative(x), -I * k * std::exp(-I * k * x), 1e-9);
      CHECK_REL(fr.value(x), std::exp(I * k * x), 1e-9);
    }
    const auto W = wronskian_profile(fr, fl);
    CHECK_REL(W.W0, -2.0 * I * k, 1e-10);
    CHECK(W.max_deviation < 1e-9);
    CHECK(fl.residual() < 1e-10 * (1.0 + fl.max_scaled_magnitude()));
  }

  TEST_CASE("soliton solutions match the closed forms") {
    const ReferenceModel m{ModelId::Soliton, 1.0};
    const auto V = reference_potential(m);
    const auto g = grid_for(V);
    for (Complex E : {Complex(-4.0), Complex(-2.0, 1.0), Complex(10.0, -3.0)}) {
      const auto e = momentum_of(E);
      const auto fl = solve_left(V, e, g), fr = solve_right(V, e, g);
      for (double x : {-1.7, 0.7, 2.2}) {
        const auto l = reference_left(m, e.kappa(), x), r = reference_right(m, e.kappa(), x);
        CHECK_REL(fl.value(x), l.first, 1e-8);
        CHECK_REL(fl.derivative(x), l.second, 1e-8);
        CHECK_REL(fr.value(x), r.first, 1e-8);
        CHECK_REL(fr.derivative(x), r.second, 1e-8);
      }
      CHECK_REL(wronskian_profile(fr, fl).W0, reference_wronskian(m, e.kappa()), 1e-9);
    }
  }

  TEST_CASE("half-line regular solutions") {
    const auto E = momentum_of(Complex(-1.0, 2.0));
    const auto free = zero_potential(Domain::HalfLine);
    const auto gf = Grid::half_line(20.0, 0.005);
    const auto fl = solve_left(free, E, gf);
    const Complex k = E.kappa();
    CHECK_REL(fl.value(1.3), std::sin(k * 1.3) / k, 1e-9);

    const ReferenceModel m{ModelId::Csch, 1.0};
    const auto V = reference_potential(m);
    const auto g = grid_for(V);
    CHECK(g.x_min() > 0.0);
    const auto cl = solve_left(V, E, g), cr = solve_right(V, E, g);
    for (double x : {0.05, 1.3, 4.0}) {
      CHECK_REL(cl.value(x), reference_left(m, k, x).first, 1e-8);
      CHECK_REL(cr.value(x), reference_right(m, k, x).first, 1e-8);
    }
  }

  TEST_CASE("truncation stability of the Wronskian") {
    const auto V = reference_potential({ModelId::Soliton, 1.0});
    const auto E = momentum_of(Complex(-0.5, 0.3));
    GridOptions a, b;
    a.x_max = 20.0;
    b.x_max = 40.0;
    const auto ga = grid_for(V, a), gb = grid_for(V, b);
    const Complex Wa = wronskian_profile(solve_right(V, E, ga), solve_left(V, E, ga)).W0;
    const Complex Wb = wronskian_profile(solve_right(V, E, gb), solve_left(V, E, gb)).W0;
    CHECK(testing::rel(Wa, Wb) < 1e-10);
  }

  TEST_CASE("solver errors") {
    const auto V = reference_potential({ModelId::Soliton, 1.0});
    const auto E = momentum_of(-4.0);
    const auto g1 = Grid::uniform(-10.0, 10.0, 0.01), g2 = Grid::uniform(-10.0, 10.0, 0.02);
    CHECK_THROWS_AS(require_compatible(solve_left(V, E, g1), solve_right(V, E, g2)), GridMismatch);
    CHECK_THROWS_AS(solve_left(reference_potential({ModelId::Csch, 1.0}), E, g1), DomainError);
    CHECK_THROWS_AS(solve_left(V, E, Grid::uniform(1.0, 10.0, 0.01)), DomainError);
    const auto fl = solve_left(V, E, g1);
    CHECK_THROWS_AS(fl.value(11.0), DomainError);
    SolverOptions tight;
    tight.overflow_cap = 1e-3;
    CHECK_THROWS_AS(solve_left(V, E, g1, tight), OverflowError);
  }

  TEST_CASE("quadrature helpers") {
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(integrate([](double x) { return std::exp(-x); }, 0.0, inf) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gauss_legendre([](double x) { return std::pow(x, 13); }, 0.0, 1.0, 7) ==
          doctest::Approx(1.0 / 14.0).epsilon(1e-14));
    CHECK(gauss_legendre([](double x) { return std::pow(x, 9); }, 0.0, 1.0, 5) ==
          doctest::Approx(0.1).epsilon(1e-14));
    const auto b = panel_breaks(0.0, 1.0, 0.3);
    REQUIRE(b.size() == 5);
    CHECK(b.front() == 0.0);
    CHECK(b.back() == 1.0);
    const double s = integrate_panels([](double x) { return std::cos(x); }, panel_breaks(0.0, 10.0 * M_PI, 0.5));
    CHECK(std::abs(s) < 1e-12);
    CHECK_THROWS_AS(panel_breaks(1.0, 0.0, 0.1), DomainError);
  }
}
