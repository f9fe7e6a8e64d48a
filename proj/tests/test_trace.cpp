#include <cmath>

#include "helpers.hpp"

#include "susygreen/errors.hpp"
#include "susygreen/pipeline.hpp"
#include "susygreen/refmodels.hpp"
#include "susygreen/trace.hpp"

using namespace susy;

TEST_SUITE("traceform") {
  TEST_CASE("soliton trace and boundary forms") {
    const auto t = make_transformation({Scenario::FreeToSoliton, 1.0});
    const auto r = trace_at(t, momentum_of(-4.0));
    CHECK_REL(r.numeric_trace, -1.0 / 6.0, 1e-8);
    for (const auto& q : r.Q) CHECK_ABS(q, 2.0, 1e-8);
    CHECK(r.q_spread < 1e-8);
    CHECK(r.identity_residual < 1e-8);
    CHECK(r.boundary_mismatch < 1e-8);
    // Direct 30-digit quadrature of G0 - G1 along the diagonal.
    const auto c = trace_at(t, momentum_of(Complex(-2.0, 1.0)));
    CHECK_REL(c.numeric_trace, Complex(-0.2486028939392892, -0.4022479320953552), 1e-8);
    CHECK_REL(trace_at(t, momentum_of(Complex(3.0, -2.0))).numeric_trace,
              Complex(0.08092673889512649, -0.08554745956152496), 1e-8);
  }

  TEST_CASE("Q scales with the parameter") {
    const auto t = make_transformation({Scenario::FreeToSoliton, 1.5});
    const auto r = trace_at(t, momentum_of(-4.0));
    for (const auto& q : r.Q) CHECK_ABS(q, 3.0, 1e-8);
  }

  TEST_CASE("csch trace") {
    const auto t = make_transformation({Scenario::FreeHalfToCsch, 1.0});
    const auto r = trace_at(t, momentum_of(-4.0), HalfLineConvention::ImKappaPositive);
    CHECK_REL(r.numeric_trace, 1.0 / 12.0, 1e-8);
    // W0 = 1 for the f'(0) = 1 normalization: Q = W0 (E - alpha) / 12.
    for (const auto& q : r.Q) CHECK_ABS(q, -0.25, 1e-8);
    CHECK(r.closed_mismatch < 1e-8);
    const auto printed = trace_at(t, momentum_of(-4.0), HalfLineConvention::AsPrinted);
    CHECK(printed.closed_mismatch == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
    // 30-digit quadrature of G0 - G1 for the half-line pair.
    for (auto [E, v] : {std::pair{Complex(-2.0, 1.0), Complex(0.125698553030355, 0.0488760339523224)},
                        std::pair{Complex(3.0, -2.0), Complex(-0.0595366305524368, -0.0927737297807625)},
                        std::pair{Complex(-0.5, -0.01), Complex(0.414118616767528, -0.00585622886778859)}}) {
      CHECK_REL(trace_at(t, momentum_of(E)).numeric_trace, v, 1e-8);
    }
  }

  TEST_CASE("Q depends on the left-solution normalization") {
    const auto t = make_transformation({Scenario::FreeHalfToCsch, 1.0});
    const auto& d = t.darboux;
    const auto E = momentum_of(-4.0);
    const Complex k = E.kappa();
    // f_l = sin(kappa x) gives W0 = kappa and Q = kappa (E - alpha) / 12 = -i/2.
    const auto fl = WaveSolution::from_function(d.grid(), E, SolutionKind::Left, 0, d.V0(), [k](double x) {
      return std::pair{std::sin(k * x), k * std::cos(k * x)};
    });
    const auto fr = WaveSolution::from_function(d.grid(), E, SolutionKind::Right, 0, d.V0(), [k](double x) {
      const Complex e = std::exp(I * k * x);
      return std::pair{e, I * k * e};
    });
    const auto W0 = wronskian_profile(fr, fl).W0;
    CHECK_ABS(W0, k, 1e-12);
    const auto Q = q_boundary(fl, fr, apply_L(d, fl), apply_L(d, fr), W0);
    for (const auto& q : Q) CHECK_ABS(q, Complex(0.0, -0.5), 1e-8);
  }

  TEST_CASE("isospectral transformations have zero trace") {
    const auto t = make_transformation({Scenario::IsospectralLine, 1.0});
    for (Complex E : {Complex(-4.0), Complex(2.0, 3.0)}) {
      const auto r = trace_at(t, momentum_of(E));
      CHECK(std::abs(r.numeric_trace) < 1e-10);
      for (const auto& q : r.Q) CHECK(std::abs(q) < 1e-10);
    }
  }

  TEST_CASE("round trip and deep well, case (i)") {
    const auto r = make_transformation({Scenario::SolitonRoundTrip, 1.0});
    CHECK_REL(trace_at(r, momentum_of(-4.0)).numeric_trace, 1.0 / 6.0, 1e-8);
    const auto w = make_transformation({Scenario::DeepWellHalfLine, 1.0});
    CHECK_REL(trace_at(w, momentum_of(-4.0), HalfLineConvention::ImKappaPositive).numeric_trace, 0.25, 1e-8);
  }

  TEST_CASE("closed forms") {
    const auto E = momentum_of(-4.0);
    CHECK_REL(trace_closed_fullline(E, 1.0, TransformCase::AddGroundState), -1.0 / 6.0, 1e-14);
    CHECK_REL(trace_closed_fullline(E, 1.0, TransformCase::RemoveGroundState), 1.0 / 6.0, 1e-14);
    CHECK(std::abs(trace_closed_fullline(E, 1.0, TransformCase::Isospectral)) == 0.0);
    CHECK_REL(trace_closed_halfline(E, 1.0, TransformCase::Isospectral), 0.25, 1e-14);
    CHECK_REL(trace_closed_halfline(E, 1.0, TransformCase::Isospectral, HalfLineConvention::ImKappaPositive),
              1.0 / 12.0, 1e-14);
    CHECK_REL(trace_closed_halfline(E, 1.0, TransformCase::RemoveGroundState), 1.0 / 12.0, 1e-14);
    CHECK_REL(trace_closed_halfline(E, 1.0, TransformCase::RemoveGroundState, HalfLineConvention::ImKappaPositive),
              0.25, 1e-14);
    CHECK_THROWS_AS(trace_closed_halfline(E, 1.0, TransformCase::AddGroundState), CaseError);
  }

  TEST_CASE("discrete and continuum split") {
    const auto t = make_transformation({Scenario::FreeToSoliton, 1.0});
    const auto E = momentum_of(Complex(-2.0, 1.0));
    const auto run = run_pipeline(t, E);
    const auto p = boundary_products(run.G0.left(), run.G0.right(), run.G1.left(), run.G1.right());
    const Complex W0 = run.G0.wronskian();
    const auto s = split_trace(E, t.darboux.alpha(), p, W0);
    CHECK_ABS(s.discrete, -1.0 / (E.energy() + 1.0), 1e-14);
    CHECK_REL(s.discrete + s.continuum, trace_at(t, E).numeric_trace, 1e-8);
    CHECK_THROWS_AS(split_trace(momentum_of(-1.0), -1.0, p, W0), DivisionError);
    CHECK(cross_identity_check(run.G0.left(), run.G0.right(), run.G1.left(), run.G1.right()) < 1e-8);
  }

  TEST_CASE("tail check") {
    const auto t = make_transformation({Scenario::FreeToSoliton, 1.0});
    TraceOptions strict;
    strict.tail_tol = 1e-30;
    CHECK_THROWS_AS(trace_at(t, momentum_of(-4.0), HalfLineConvention::AsPrinted, strict), TailError);
  }
}
