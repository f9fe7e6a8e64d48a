#include "susygreen/pipeline.hpp"

#include <cmath>

#include "susygreen/errors.hpp"

namespace susy {

const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::FreeToSoliton:
      return "free-to-soliton";
    case Scenario::FreeHalfToCsch:
      return "free-half-to-csch";
    case Scenario::IsospectralLine:
      return "isospectral-line";
    case Scenario::SolitonRoundTrip:
      return "soliton-round-trip";
    case Scenario::DeepWellHalfLine:
      return "deep-well-half-line";
  }
  return "?";
}

Scenario parse_scenario(const std::string& name) {
  if (name == "soliton") return Scenario::FreeToSoliton;
  if (name == "csch") return Scenario::FreeHalfToCsch;
  if (name == "isospectral") return Scenario::IsospectralLine;
  if (name == "round-trip") return Scenario::SolitonRoundTrip;
  if (name == "deep-well") return Scenario::DeepWellHalfLine;
  for (Scenario s : {Scenario::FreeToSoliton, Scenario::FreeHalfToCsch, Scenario::IsospectralLine,
                     Scenario::SolitonRoundTrip, Scenario::DeepWellHalfLine}) {
    if (name == to_string(s)) return s;
  }
  throw ConfigError("unknown scenario '" + name + "'");
}

Transformation make_transformation(const ScenarioSpec& spec) {
  const double a = spec.a;
  if (!(a > 0.0)) throw ConfigError("parameter a must be positive");
  const double alpha = -a * a;
  Potential V0;
  FactorizationSpec u;
  TransformCase expected;
  std::optional<ReferenceModel> r0, r1;

  switch (spec.id) {
    case Scenario::FreeToSoliton:
      r0 = ReferenceModel{ModelId::FreeLine, a};
      r1 = ReferenceModel{ModelId::Soliton, a};
      V0 = reference_potential(*r0);
      expected = TransformCase::AddGroundState;
      if (spec.numeric_factor) {
        u = JostCombination{0.5, 0.5};
      } else {
        u = ClosedFormFactor{[a](double x) { return std::pair{std::cosh(a * x), a * std::sinh(a * x)}; }, "cosh(ax)"};
      }
      break;
    case Scenario::FreeHalfToCsch:
      r0 = ReferenceModel{ModelId::FreeHalfLine, a};
      r1 = ReferenceModel{ModelId::Csch, a};
      V0 = reference_potential(*r0);
      expected = TransformCase::Isospectral;
      if (spec.numeric_factor) {
        u = HalfLineRegular{};
      } else {
        u = ClosedFormFactor{[a](double x) { return std::pair{std::sinh(a * x), a * std::cosh(a * x)}; }, "sinh(ax)"};
      }
      break;
    case Scenario::IsospectralLine:
      r0 = ReferenceModel{ModelId::FreeLine, a};
      r1 = ReferenceModel{ModelId::FreeLine, a};
      V0 = reference_potential(*r0);
      expected = TransformCase::Isospectral;
      if (spec.numeric_factor) {
        u = JostCombination{1.0, 0.0};
      } else {
        u = ClosedFormFactor{[a](double x) { return std::pair{std::exp(a * x), a * std::exp(a * x)}; }, "exp(ax)"};
      }
      break;
    case Scenario::SolitonRoundTrip:
      r0 = ReferenceModel{ModelId::Soliton, a};
      r1 = ReferenceModel{ModelId::FreeLine, a};
      V0 = reference_potential(*r0);
      expected = TransformCase::RemoveGroundState;
      if (spec.numeric_factor) {
        u = GroundState{};
      } else {
        u = ClosedFormFactor{[a](double x) {
                               const double s = soliton_ground_state(a, x);
                               return std::pair{s, -a * std::tanh(a * x) * s};
                             },
                             "ground state"};
      }
      break;
    case Scenario::DeepWellHalfLine:
      V0 = deep_well_halfline(a);
      expected = TransformCase::RemoveGroundState;
      if (spec.numeric_factor) {
        u = GroundState{};
      } else {
        u = ClosedFormFactor{[a](double x) { return deep_well_ground_state(a, x); }, "ground state"};
      }
      break;
  }

  const bool half = V0.domain == Domain::HalfLine;
  const Grid grid = grid_for(V0, spec.grid, half, 2.0 * a);
  DarbouxOptions opts{spec.solver, expected};
  return Transformation{spec, build_transform(V0, alpha, u, grid, opts), r0, r1};
}

PipelineResult run_pipeline(const Transformation& t, const EnergyPoint& E) {
  const DarbouxData& d = t.darboux;
  const auto fl0 = solve_left(d.V0(), E, d.grid(), t.spec.solver);
  const auto fr0 = solve_right(d.V0(), E, d.grid(), t.spec.solver);
  auto profile = wronskian_profile(fr0, fl0);
  GreenFunction G0(fl0, fr0, profile.W0, KernelLabel::G0);
  GreenFunction G1 = green1_from_pair(d, fl0, fr0, profile.W0);
  return PipelineResult{std::move(G0), std::move(G1), std::move(profile)};
}

Complex closed_trace(const Transformation& t, const EnergyPoint& E, HalfLineConvention convention) {
  const auto c = t.darboux.transform_case();
  if (t.darboux.V0()->domain == Domain::HalfLine) return trace_closed_halfline(E, t.spec.a, c, convention);
  return trace_closed_fullline(E, t.spec.a, c);
}

TraceReport trace_at(const Transformation& t, const EnergyPoint& E, HalfLineConvention convention,
                     const TraceOptions& options) {
  const auto run = run_pipeline(t, E);
  return make_trace_report(run.G0, run.G1, t.darboux.alpha(), t.darboux.transform_case(),
                           closed_trace(t, E, convention), options);
}

}  // namespace susy
