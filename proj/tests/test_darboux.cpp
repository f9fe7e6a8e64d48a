#include <cmath>
#include <vector>

#include "helpers.hpp"

#include "susygreen/darboux.hpp"
#include "susygreen/errors.hpp"
#include "susygreen/pipeline.hpp"
#include "susygreen/refmodels.hpp"

using namespace susy;

namespace {

const Potential& free_line() {
  static const Potential V = zero_potential(Domain::FullLine);
  return V;
}

Grid line_grid() { return grid_for(free_line(), {}, false, 2.0); }

double sech(double x) { return 1.0 / std::cosh(x); }

}  // namespace

TEST_SUITE("darboux") {
  TEST_CASE("cosh factor creates the soliton") {
    const auto d = build_transform(free_line(), -1.0, JostCombination{0.5, 0.5}, line_grid());
    CHECK(d.transform_case() == TransformCase::AddGroundState);
    for (double x : {0.0, 0.7, -2.3}) CHECK((*d.V1())(x) == doctest::Approx(-2.0 * sech(x) * sech(x)).epsilon(1e-8));
    CHECK(d.V1()->bound_states.size() == 1);
    CHECK(d.w(0.4) == doctest::Approx(std::tanh(0.4)).epsilon(1e-9));
    CHECK(d.factorization_residual() < 1e-8);
  }

  TEST_CASE("case classification") {
    CHECK(build_transform(free_line(), -1.0, JostCombination{1.0, 0.0}, line_grid()).transform_case() ==
          TransformCase::Isospectral);
    const auto t = make_transformation({Scenario::SolitonRoundTrip, 1.0});
    CHECK(t.darboux.transform_case() == TransformCase::RemoveGroundState);
    CHECK(t.darboux.V1()->bound_states.empty());
    const auto c = make_transformation({Scenario::FreeHalfToCsch, 1.0});
    CHECK(c.darboux.transform_case() == TransformCase::Isospectral);
    CHECK(c.darboux.V1()->origin_singularity.value_or(0.0) == doctest::Approx(2.0));
  }

  TEST_CASE("factorization errors") {
    const auto g = line_grid();
    CHECK_THROWS_AS(build_transform(free_line(), 0.5, JostCombination{1.0, 1.0}, g), ThresholdError);
    CHECK_THROWS_AS(build_transform(free_line(), -1.0, JostCombination{1.0, -1.0}, g), NodeError);
    const auto sol = reference_potential({ModelId::Soliton, 1.0});
    CHECK_THROWS_AS(build_transform(sol, -0.5, JostCombination{1.0, 1.0}, grid_for(sol)), ThresholdError);
    CHECK_THROWS_AS(build_transform(sol, -1.5, GroundState{}, grid_for(sol)), ThresholdError);
    CHECK_THROWS_AS(build_transform(free_line(), -1.0, HalfLineRegular{}, g), CaseError);
    DarbouxOptions expect;
    expect.expected_case = TransformCase::Isospectral;
    CHECK_THROWS_AS(build_transform(free_line(), -1.0, JostCombination{0.5, 0.5}, g, expect), CaseError);

    const auto half = zero_potential(Domain::HalfLine);
    const auto hg = grid_for(half, {}, true, 2.0);
    const ClosedFormFactor cosh_factor{[](double x) { return std::pair{std::cosh(x), std::sinh(x)}; }, "cosh"};
    CHECK_THROWS_AS(build_transform(half, -1.0, cosh_factor, hg), CaseError);
    CHECK_THROWS_AS(build_transform(half, -1.0, JostCombination{1.0, 1.0}, hg), CaseError);
  }

  TEST_CASE("intertwining and normalization") {
    const auto d = build_transform(free_line(), -1.0, JostCombination{0.5, 0.5}, line_grid());
    const auto E = momentum_of(Complex(-2.0, 1.0));
    const auto fl = solve_left(d.V0(), E, d.grid());
    const auto Lf = apply_L(d, fl);
    CHECK(Lf.residual() < 1e-6 * (1.0 + Lf.max_scaled_magnitude()));
    // L f = -f' + tanh(x) f for f = e^{-i kappa x}.
    const Complex k = E.kappa();
    const double x = 0.8;
    CHECK_REL(Lf.value(x), (I * k + std::tanh(x)) * std::exp(-I * k * x), 1e-9);

    const auto psi = WaveSolution::from_function(
        d.grid(), EnergyPoint::on_cut(1.5), SolutionKind::Left, 0, d.V0(),
        [](double x) {
          const Complex p = plane_wave(1.5, x);
          return std::pair{p, I * 1.5 * p};
        },
        "plane wave");
    const auto chi = normalize_chi(d, psi);
    CHECK(std::abs(chi.value(15.0)) == doctest::Approx(std::abs(psi.value(15.0))).epsilon(1e-9));
    CHECK_THROWS_AS(normalize_chi(d, psi, Complex(-1.0)), DivisionError);
  }

  TEST_CASE("apply_L checks its input") {
    const auto d = build_transform(free_line(), -1.0, JostCombination{0.5, 0.5}, line_grid());
    const auto E = momentum_of(-4.0);
    CHECK_THROWS_AS(apply_L(d, solve_left(d.V0(), E, Grid::uniform(-20.0, 20.0, 0.02))), GridMismatch);
    const auto sol = reference_potential({ModelId::Soliton, 1.0});
    CHECK_THROWS_AS(apply_L(d, solve_left(sol, E, d.grid())), DomainError);
  }

  TEST_CASE("partner kernel is the soliton kernel") {
    const auto t = make_transformation({Scenario::FreeToSoliton, 1.0});
    const auto E = momentum_of(Complex(-2.0, 1.0));
    const auto run = run_pipeline(t, E);
    CHECK(partner_wronskian_mismatch(run.G1) < 1e-8);
    CHECK_REL(run.G1(0.3, 1.1), Complex(0.13429008358337016, 0.15408565768171267), 1e-9);
    CHECK(std::abs(jump_check(run.G1, 0.25) + 1.0) < 1e-6);
    CHECK(run.G1(0.3, 1.1) == run.G1(1.1, 0.3));
  }

  TEST_CASE("green1_from_pair is undefined at alpha") {
    const auto t = make_transformation({Scenario::FreeHalfToCsch, 1.0});
    const auto& d = t.darboux;
    const auto E = momentum_of(d.alpha());
    CHECK_THROWS_AS(green1_from_pair(d, solve_left(d.V0(), E, d.grid()), solve_right(d.V0(), E, d.grid())),
                    DegenerateError);
  }

  TEST_CASE("residue of the new ground state") {
    const auto t = make_transformation({Scenario::FreeToSoliton, 1.0});
    CHECK_ABS(residue_at_alpha(t.darboux, 0.0, 0.0), 0.5, 1e-5);
    CHECK_ABS(residue_at_alpha(t.darboux, 0.5, -1.0),
              soliton_ground_state(1.0, 0.5) * soliton_ground_state(1.0, -1.0), 1e-5);
    const std::vector<double> uneven{0.05, 0.03};
    CHECK_THROWS_AS(residue_at_alpha(t.darboux, 0.0, 0.0, uneven), DomainError);
    CHECK_THROWS_AS(green1_at_alpha(t.darboux), CaseError);
    const auto c = make_transformation({Scenario::FreeHalfToCsch, 1.0});
    CHECK_THROWS_AS(residue_at_alpha(c.darboux, 1.0, 1.0), CaseError);
  }

  TEST_CASE("regular point matches closed-form kernels") {
    const auto c = make_transformation({Scenario::FreeHalfToCsch, 1.0});
    const auto K = green1_at_alpha(c.darboux);
    const ReferenceModel csch{ModelId::Csch, 1.0};
    for (auto [x, y] : {std::pair{0.3, 1.1}, std::pair{1.0, 1.0}, std::pair{2.5, 0.7}}) {
      CHECK_ABS(K(x, y), reference_green_kappa(csch, x, y, I), 1e-6);
    }
    // Removing the soliton ground state at alpha = -1 leaves exp(-|x - y|)/2.
    const auto r = make_transformation({Scenario::SolitonRoundTrip, 1.0});
    const auto Kr = green1_at_alpha(r.darboux);
    for (auto [x, y] : {std::pair{0.3, 1.1}, std::pair{-2.0, 0.5}}) {
      CHECK_ABS(Kr(x, y), 0.5 * std::exp(-std::abs(x - y)), 1e-6);
      CHECK_ABS(Kr(x, y), limit_at_alpha(r.darboux, x, y).value, 1e-5);
    }
  }

  TEST_CASE("Richardson extrapolation") {
    std::vector<Complex> s;
    for (int j = 0; j < 6; ++j) {
      const double h = std::ldexp(1.0, -j);
      s.push_back(1.0 + 0.3 * h + 0.1 * h * h - 0.05 * h * h * h);
    }
    const auto r = richardson_limit(s);
    CHECK_ABS(r.value, 1.0, 1e-12);
    CHECK_THROWS_AS(richardson_limit(std::vector<Complex>{}), DomainError);
  }
}
