#pragma once

#include <optional>
#include <string>

#include "susygreen/darboux.hpp"
#include "susygreen/green.hpp"
#include "susygreen/refmodels.hpp"
#include "susygreen/trace.hpp"

namespace susy {

/// Worked transformations h0 -> h1 with alpha = -a^2.
enum class Scenario {
  /// free line, u = cosh(ax): one-soliton partner, case (ii).
  FreeToSoliton,
  /// free half line, u = sinh(ax): csch^2 partner, case (iii).
  FreeHalfToCsch,
  /// free line, u = e^{ax}: free partner, case (iii).
  IsospectralLine,
  /// soliton, u = ground state: free partner, case (i).
  SolitonRoundTrip,
  /// half-line -6a^2 sech^2(ax), u = odd ground state, case (i).
  DeepWellHalfLine,
};

const char* to_string(Scenario s);
/// Accepts the scenario names and the model aliases
/// soliton, csch, isospectral, round-trip, deep-well.
Scenario parse_scenario(const std::string& name);

struct ScenarioSpec {
  Scenario id = Scenario::FreeToSoliton;
  double a = 1.0;
  GridOptions grid{};
  SolverOptions solver{};
  /// Factor from the ODE solver instead of its closed form.
  bool numeric_factor = false;
};

struct Transformation {
  ScenarioSpec spec;
  DarbouxData darboux;
  std::optional<ReferenceModel> reference_h0;
  std::optional<ReferenceModel> reference_h1;
};

Transformation make_transformation(const ScenarioSpec& spec);

struct PipelineResult {
  GreenFunction G0;
  GreenFunction G1;
  WronskianProfile W0;
};

/// Solves h0 at E, assembles G0 and G1 = L_x L_y G0 / (E - alpha).
PipelineResult run_pipeline(const Transformation& t, const EnergyPoint& E);

/// Closed-form trace for the scenario (full- or half-line form).
Complex closed_trace(const Transformation& t, const EnergyPoint& E,
                     HalfLineConvention convention = HalfLineConvention::AsPrinted);

TraceReport trace_at(const Transformation& t, const EnergyPoint& E,
                     HalfLineConvention convention = HalfLineConvention::AsPrinted,
                     const TraceOptions& options = {});

}  // namespace susy
