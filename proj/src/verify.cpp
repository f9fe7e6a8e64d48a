#include "susygreen/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>

#include "susygreen/cli.hpp"
#include "susygreen/density.hpp"
#include "susygreen/errors.hpp"
#include "susygreen/pipeline.hpp"
#include "susygreen/refmodels.hpp"
#include "susygreen/report.hpp"

namespace susy {

namespace {

constexpr Scenario kScenarios[] = {Scenario::FreeToSoliton, Scenario::FreeHalfToCsch, Scenario::IsospectralLine,
                                   Scenario::SolitonRoundTrip, Scenario::DeepWellHalfLine};
constexpr int kSweepPoints = 20;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string num(Complex v) {
  if (std::abs(v.imag()) <= 1e-12 * std::max(1.0, std::abs(v.real()))) return num(v.real());
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g%+.10gi", v.real(), v.imag());
  return buf;
}

double rel(Complex value, Complex ref) { return std::abs(value - ref) / std::max(std::abs(ref), 1e-300); }

// Portable uniform draw in (0, 1) from the raw engine output.
double u01(std::mt19937& g) { return (static_cast<double>(g()) + 0.5) / 4294967296.0; }
double uniform(std::mt19937& g, double lo, double hi) { return lo + (hi - lo) * u01(g); }

bool half_line(const Transformation& t) { return t.darboux.V0()->domain == Domain::HalfLine; }

// Sample coordinate inside the region where the kernels are checked.
double coordinate(std::mt19937& g, const Transformation& t) {
  return half_line(t) ? uniform(g, 0.1, 6.0) : uniform(g, -6.0, 6.0);
}

// |E| in [0.5, 50] (log-uniform), arg E away from the cut and the poles.
std::vector<EnergyPoint> sample_energies(const Transformation& t, int n, std::mt19937& g) {
  std::vector<EnergyPoint> out;
  while (static_cast<int>(out.size()) < n) {
    const Complex E = std::polar(0.5 * std::pow(100.0, u01(g)), uniform(g, 0.05, 2.0 * M_PI - 0.05));
    if (admissible_energy(t, E)) out.push_back(momentum_of(E));
  }
  return out;
}

class Checks {
 public:
  void add(std::string name, bool passed, std::string detail) {
    list_.push_back({std::move(name), passed, std::move(detail), false});
  }
  void info(std::string name, std::string detail) { list_.push_back({std::move(name), true, std::move(detail), true}); }
  // Runs fn; an exception fails the named check.
  template <class F>
  void guard(const std::string& name, F&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      add(name, false, std::string("exception: ") + e.what());
    }
  }
  std::vector<CheckResult>& list() { return list_; }

 private:
  std::vector<CheckResult> list_;
};

// Shared state of one acceptance run: seeded RNGs and memoized sweeps.
class Context {
 public:
  explicit Context(const VerifyOptions& o) : options_(o), threads_(o.threads > 0 ? o.threads : thread_cap()) {}

  std::mt19937 rng(std::uint32_t stream) const { return std::mt19937(options_.seed * 7919u + stream); }
  unsigned threads() const { return threads_; }

  const Transformation& transformation(Scenario s, bool numeric = false) {
    const auto key = std::pair{s, numeric};
    auto it = transforms_.find(key);
    if (it == transforms_.end()) {
      ScenarioSpec spec{s, 1.0};
      spec.numeric_factor = numeric;
      it = transforms_.emplace(key, make_transformation(spec)).first;
    }
    return it->second;
  }

  // E = -4 followed by kSweepPoints sampled energies, closed form as printed.
  const std::vector<TraceReport>& sweep(Scenario s, bool numeric = false) {
    const auto key = std::pair{s, numeric};
    auto it = sweeps_.find(key);
    if (it != sweeps_.end()) return it->second;
    const Transformation& t = transformation(s, numeric);
    auto g = rng(100 + static_cast<std::uint32_t>(s));
    std::vector<Complex> energies{-4.0};
    for (const auto& E : sample_energies(t, kSweepPoints, g)) energies.push_back(E.energy());
    return sweeps_.emplace(key, trace_sweep(t, energies, HalfLineConvention::AsPrinted, threads_)).first->second;
  }

 private:
  VerifyOptions options_;
  unsigned threads_;
  std::map<std::pair<Scenario, bool>, Transformation> transforms_;
  std::map<std::pair<Scenario, bool>, std::vector<TraceReport>> sweeps_;
};

// Worst closed-form mismatch of a sweep under the given half-line convention.
double closed_worst(const Transformation& t, const std::vector<TraceReport>& reps, HalfLineConvention conv) {
  double worst = 0.0;
  for (const auto& r : reps) {
    const Complex c = closed_trace(t, r.E, conv);
    const double d = std::abs(r.numeric_trace - c);
    worst = std::max(worst, std::abs(c) > 1e-12 ? d / std::abs(c) : d);
  }
  return worst;
}

// ---- criteria ----------------------------------------------------------

void criterion_trace_full(Context& ctx, Checks& c) {
  const auto& reps = ctx.sweep(Scenario::FreeToSoliton);
  double worst = 0.0;
  for (std::size_t i = 1; i < reps.size(); ++i) worst = std::max(worst, reps[i].closed_mismatch);
  c.add("20 energies vs closed form (delta = -1)", worst < 1e-6, "max rel err " + sci(worst));
  const Complex v = reps.front().numeric_trace;
  c.add("E = -4 gives -1/6", rel(v, -1.0 / 6.0) < 1e-6, "trace " + num(v));
}

void criterion_trace_half(Context& ctx, Checks& c) {
  const Transformation& t = ctx.transformation(Scenario::FreeHalfToCsch);
  const auto& reps = ctx.sweep(Scenario::FreeHalfToCsch);
  const std::vector<TraceReport> sampled(reps.begin() + 1, reps.end());
  const double printed = closed_worst(t, sampled, HalfLineConvention::AsPrinted);
  c.add("20 energies vs printed closed form (delta1 = 0, delta2 = -1)", printed < 1e-6,
        "max rel err " + sci(printed));
  const Complex v = reps.front().numeric_trace;
  c.add("E = -4 gives 1/4", rel(v, 0.25) < 1e-6, "trace " + num(v));
  const double consistent = closed_worst(t, sampled, HalfLineConvention::ImKappaPositive);
  c.info("branch Im kappa > 0 form", "max rel err " + sci(consistent) + ", value at E = -4 is " +
                                         num(closed_trace(t, momentum_of(-4.0), HalfLineConvention::ImKappaPositive)));
}

void criterion_round_trip(Context& ctx, Checks& c) {
  const ReferenceModel free{ModelId::FreeLine, 1.0};
  for (bool numeric : {false, true}) {
    const std::string tag = numeric ? " (numeric ground state)" : " (closed-form ground state)";
    c.guard("G1 vs free kernel" + tag, [&] {
      const Transformation& t = ctx.transformation(Scenario::SolitonRoundTrip, numeric);
      auto g = ctx.rng(300 + numeric);
      double worst = 0.0;
      for (const auto& E : sample_energies(t, 4, g)) {
        const auto run = run_pipeline(t, E);
        for (int j = 0; j < 5; ++j) {
          const double x = coordinate(g, t), y = coordinate(g, t);
          worst = std::max(worst, rel(run.G1(x, y), reference_green(free, x, y, E)));
        }
      }
      c.add("G1 vs free kernel" + tag, worst < 1e-7, "max rel err " + sci(worst) + " at 20 (x, y, E)");
    });
    c.guard("trace vs closed form (delta = +1)" + tag, [&] {
      double worst = 0.0;
      for (const auto& r : ctx.sweep(Scenario::SolitonRoundTrip, numeric)) worst = std::max(worst, r.closed_mismatch);
      c.add("trace vs closed form (delta = +1)" + tag, worst < 1e-6, "max rel err " + sci(worst));
    });
  }
}

void criterion_q_agreement(Context& ctx, Checks& c) {
  for (Scenario s : kScenarios) {
    for (bool numeric : {false, true}) {
      const std::string tag = std::string(to_string(s)) + (numeric ? " numeric" : "");
      c.guard(tag, [&] {
        double spread = 0.0, identity = 0.0;
        const auto& reps = ctx.sweep(s, numeric);
        for (const auto& r : reps) {
          spread = std::max(spread, r.q_spread);
          identity = std::max(identity, r.identity_residual);
        }
        c.add(tag, spread < 1e-8 && identity < 1e-8,
              "Q spread " + sci(spread) + ", identity " + sci(identity) + " over " + std::to_string(reps.size()) +
                  " runs");
      });
    }
  }
}

struct KernelStats {
  double asymmetry = 0.0;
  double jump = 0.0;
  double ode = 0.0;
  double wronskian = 0.0;
};

KernelStats kernel_stats(const Transformation& t, const std::vector<EnergyPoint>& energies, std::mt19937& g) {
  KernelStats k;
  const Grid& grid = t.darboux.grid();
  const double lo = half_line(t) ? 0.2 : -8.0;
  for (const auto& E : energies) {
    const auto run = run_pipeline(t, E);
    k.wronskian = std::max(k.wronskian, partner_wronskian_mismatch(run.G1));
    for (const GreenFunction* G : {&run.G0, &run.G1}) {
      for (int j = 0; j < 10; ++j) {
        const double x = grid[grid.nearest(uniform(g, lo, 8.0))], y = grid[grid.nearest(uniform(g, lo, 8.0))];
        const Complex gxy = (*G)(x, y), gyx = (*G)(y, x);
        k.asymmetry = std::max(k.asymmetry, std::abs(gxy - gyx) / std::max(std::abs(gxy), 1e-300));
        k.jump = std::max(k.jump, std::abs(jump_check(*G, uniform(g, lo, 8.0)) + 1.0));
        double xo = uniform(g, lo, 8.0), yo = uniform(g, lo, 8.0);
        if (std::abs(xo - yo) < 0.05) yo = xo + (xo < 4.0 ? 0.5 : -0.5);
        k.ode = std::max(k.ode, kernel_ode_residual(*G, xo, yo));
      }
    }
  }
  return k;
}

void criterion_kernels(Context& ctx, Checks& c) {
  for (Scenario s : kScenarios) {
    c.guard(to_string(s), [&] {
      const Transformation& t = ctx.transformation(s);
      auto g = ctx.rng(500 + static_cast<std::uint32_t>(s));
      const auto k = kernel_stats(t, sample_energies(t, 3, g), g);
      c.add(to_string(s), k.asymmetry == 0.0 && k.jump < 1e-6 && k.ode < 1e-6 && k.wronskian < 1e-8,
            "asymmetry " + sci(k.asymmetry) + ", |jump + 1| " + sci(k.jump) + ", ODE " + sci(k.ode) + ", W1 " +
                sci(k.wronskian));
    });
  }
}

void criterion_residue(Context& ctx, Checks& c) {
  for (bool numeric : {false, true}) {
    const std::string name = numeric ? "residue at (0, 0), numeric factor" : "residue at (0, 0)";
    c.guard(name, [&] {
      const Complex r = residue_at_alpha(ctx.transformation(Scenario::FreeToSoliton, numeric).darboux, 0.0, 0.0);
      c.add(name, std::abs(r - 0.5) < 1e-5, num(r) + " (expected 1/2)");
    });
  }
}

void criterion_regular_point(Context& ctx, Checks& c) {
  for (Scenario s : {Scenario::FreeHalfToCsch, Scenario::IsospectralLine, Scenario::SolitonRoundTrip,
                     Scenario::DeepWellHalfLine}) {
    c.guard(to_string(s), [&] {
      const Transformation& t = ctx.transformation(s);
      const auto K = green1_at_alpha(t.darboux);
      auto g = ctx.rng(700 + static_cast<std::uint32_t>(s));
      double worst = 0.0;
      for (int j = 0; j < 5; ++j) {
        const double x = coordinate(g, t), y = coordinate(g, t);
        worst = std::max(worst, std::abs(K(x, y) - limit_at_alpha(t.darboux, x, y).value));
      }
      c.add(std::string(to_string(s)) + " case (" + to_string(t.darboux.transform_case()) + ")", worst < 1e-5,
            "max |diff| " + sci(worst) + " at 5 points");
    });
  }
}

void criterion_density_full(Context& ctx, Checks& c) {
  const double a = 1.0;
  c.guard("P(k) at k = 0, 0.5, 1, 2, 5", [&] {
    double worst = 0.0;
    for (double k : {0.0, 0.5, 1.0, 2.0, 5.0}) {
      const auto r = pk_fullline(a, k);
      worst = std::max(worst, std::abs(r.numeric_value - p_lambda_analytic(a, k)));
    }
    c.add("P(k) at k = 0, 0.5, 1, 2, 5", worst < 1e-8, "max |diff| " + sci(worst));
  });
  c.guard("forward transform at 10 energies", [&] {
    auto g = ctx.rng(800);
    double worst = 0.0;
    for (const auto& E : sample_energies(ctx.transformation(Scenario::FreeToSoliton), 10, g)) {
      const Complex R = stieltjes_forward([a](double k) { return p_lambda_analytic(a, k); }, E);
      worst = std::max(worst, std::abs(R - r_fullline(E, a)));
    }
    c.add("forward transform at 10 energies", worst < 1e-6, "max |diff| " + sci(worst));
  });
  c.guard("inversion of R at lambda = 0.25, 1, 4", [&] {
    double worst = 0.0;
    for (double lam : {0.25, 1.0, 4.0}) {
      const auto j = stieltjes_inversion([a](const EnergyPoint& E) { return r_fullline(E, a); }, lam);
      worst = std::max(worst, std::abs(j.P - p_lambda_analytic(a, std::sqrt(lam))));
    }
    c.add("inversion of R at lambda = 0.25, 1, 4", worst < 1e-6, "max |diff| " + sci(worst));
  });
}

// int_0^A (psi_k^2 - xi_k^2) dx from the closed-form states.
double brute_window(double a, double k, double A) {
  auto f = [&](double x) {
    const double p = sine_wave(k, x), q = csch_scattering(a, k, x);
    return p * p - q * q;
  };
  return integrate_panels(f, panel_breaks(0.0, A, std::min(0.5, M_PI / (4.0 * k))), QuadOptions{1e-13, 12});
}

void criterion_density_half(Context& ctx, Checks& c) {
  const auto start = std::chrono::steady_clock::now();
  const double a = 1.0;
  c.guard("closed window form vs brute force", [&] {
    auto g = ctx.rng(900);
    double worst = 0.0, pipeline = 0.0;
    for (int j = 0; j < 10; ++j) {
      const double k = uniform(g, 0.05, 5.0), A = uniform(g, 0.5, 100.0);
      const double closed = pkA_halfline(a, k, A);
      worst = std::max(worst, std::abs(closed - brute_window(a, k, A)));
      pipeline = std::max(pipeline, std::abs(pkA_numeric(a, k, A).numeric_value - closed));
    }
    c.add("closed window form vs brute force", worst < 1e-8, "max |diff| " + sci(worst) + " at 10 (k, A)");
    c.info("Darboux pipeline window integral", "max |diff| " + sci(pipeline));
  });
  const EnergyPoint E = momentum_of(-4.0);
  const Complex printed = r_halfline(E, a, true), consistent = r_halfline(E, a, false);
  for (double A : {50.0, 100.0}) {
    const std::string name = "windowed limit at A = " + num(A);
    c.guard(name, [&] {
      const auto w = stieltjes_windowed_limit(a, E, A);
      c.add(name, std::abs(w.value - printed) < 5e-3, num(w.value) + " vs printed " + num(printed));
      c.info(name + ", branch Im kappa > 0", "|diff| " + sci(std::abs(w.value - consistent)) + " from " +
                                                 num(consistent) + "; 2A " + num(w.doubled) + ", mean over a period " +
                                                 num(w.cesaro));
    });
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.add("runtime", secs <= 60.0, num(std::round(secs * 10.0) / 10.0) + " s");
}

void criterion_spectral(Context& ctx, Checks& c) {
  for (auto [s, kernel] : {std::pair{Scenario::IsospectralLine, 0}, std::pair{Scenario::FreeToSoliton, 1}}) {
    const std::string name = kernel == 0 ? "free line" : "soliton";
    c.guard(name, [&] {
      const Transformation& t = ctx.transformation(s);
      const ReferenceModel m{kernel == 0 ? ModelId::FreeLine : ModelId::Soliton, 1.0};
      const auto model = spectral_model(m);
      auto g = ctx.rng(1000 + kernel);
      double worst = 0.0;
      for (const auto& E : sample_energies(t, 5, g)) {
        const auto run = run_pipeline(t, E);
        const double x = uniform(g, -3.0, 3.0), y = uniform(g, -3.0, 3.0);
        const Complex G = kernel == 0 ? run.G0(x, y) : run.G1(x, y);
        const double k_max = std::max(60.0, 4.0 * std::abs(E.kappa()));
        worst = std::max(worst, std::abs(spectral_reconstruct(model, x, y, E, k_max) - G));
      }
      c.add(name, worst < 1e-3, "max |diff| " + sci(worst) + " at 5 (x, y, E)");
    });
  }
}

// ---- property suite ----------------------------------------------------

int run_captured(const std::vector<std::string>& args, std::string& out, std::string& err) {
  std::ostringstream o, e;
  const int code = run_cli(args, o, e);
  out = o.str();
  err = e.str();
  return code;
}

void properties(Context& ctx, Checks& c) {
  const double tol = SolverOptions{}.tol;

  // Solutions and kernels at three energies per transformation.
  c.guard("solver residual and Wronskian constancy", [&] {
    double residual = 0.0, wronskian = 0.0, intertwining = 0.0;
    for (Scenario s : kScenarios) {
      const Transformation& t = ctx.transformation(s);
      auto g = ctx.rng(1100 + static_cast<std::uint32_t>(s));
      for (const auto& E : sample_energies(t, 3, g)) {
        const auto run = run_pipeline(t, E);
        for (const WaveSolution* f : {&run.G0.left(), &run.G0.right()}) {
          residual = std::max(residual, f->residual() / (1.0 + f->max_scaled_magnitude()));
        }
        for (const WaveSolution* f : {&run.G1.left(), &run.G1.right()}) {
          intertwining = std::max(intertwining, f->residual() / (1.0 + f->max_scaled_magnitude()));
        }
        wronskian = std::max(wronskian, run.W0.max_deviation);
      }
    }
    c.add("core: solution residual < tol (1 + max|f|)", residual < tol, "max " + sci(residual));
    c.add("core: Wronskian deviation < 10 tol", wronskian < 10.0 * tol, "max " + sci(wronskian));
    c.add("darboux: intertwined solutions solve h1", intertwining < 1e-6, "max " + sci(intertwining));
  });

  c.guard("core: truncation stability", [&] {
    double worst = 0.0;
    for (ModelId id : {ModelId::Soliton, ModelId::Csch}) {
      const Potential V = reference_potential({id, 1.0});
      const EnergyPoint E = momentum_of(Complex(-2.0, 1.0));
      Complex W[2];
      for (int j = 0; j < 2; ++j) {
        GridOptions o;
        o.x_max = 20.0 * (j + 1);
        const Grid g = grid_for(V, o);
        W[j] = wronskian_profile(solve_right(V, E, g), solve_left(V, E, g)).W0;
      }
      worst = std::max(worst, std::abs(W[1] - W[0]) / std::abs(W[0]));
    }
    c.add("core: truncation stability", worst < tol, "relative W0 change " + sci(worst) + " for x_max 20 -> 40");
  });

  c.guard("greenfn: symmetry, ODE, jump; darboux: W1 = (E - alpha) W0", [&] {
    KernelStats all;
    for (Scenario s : kScenarios) {
      const Transformation& t = ctx.transformation(s);
      auto g = ctx.rng(1200 + static_cast<std::uint32_t>(s));
      const auto k = kernel_stats(t, sample_energies(t, 2, g), g);
      all.asymmetry = std::max(all.asymmetry, k.asymmetry);
      all.jump = std::max(all.jump, k.jump);
      all.ode = std::max(all.ode, k.ode);
      all.wronskian = std::max(all.wronskian, k.wronskian);
    }
    c.add("greenfn: symmetry exact", all.asymmetry == 0.0, "max " + sci(all.asymmetry));
    c.add("greenfn: off-diagonal ODE residual < 1e-6", all.ode < 1e-6, "max " + sci(all.ode));
    c.add("greenfn: jump = -1 within 1e-6 (G0 and G1)", all.jump < 1e-6, "max " + sci(all.jump));
    c.add("darboux: W1 = (E - alpha) W0 within 1e-8", all.wronskian < 1e-8, "max " + sci(all.wronskian));
  });

  c.guard("greenfn: spectral representation", [&] {
    double worst = 0.0;
    auto g = ctx.rng(1300);
    for (ModelId id : {ModelId::FreeLine, ModelId::FreeHalfLine, ModelId::Soliton, ModelId::Csch}) {
      const ReferenceModel m{id, 1.0};
      const bool half = id == ModelId::FreeHalfLine || id == ModelId::Csch;
      const auto model = spectral_model(m);
      for (const auto& E : sample_energies(ctx.transformation(Scenario::FreeToSoliton), 2, g)) {
        const double x = half ? uniform(g, 0.1, 3.0) : uniform(g, -3.0, 3.0);
        const double y = half ? uniform(g, 0.1, 3.0) : uniform(g, -3.0, 3.0);
        const double k_max = std::max(60.0, 4.0 * std::abs(E.kappa()));
        worst = std::max(worst, std::abs(spectral_reconstruct(model, x, y, E, k_max) - reference_green(m, x, y, E)));
      }
    }
    c.add("greenfn: spectral representation", worst < 1e-3, "max |diff| " + sci(worst) + " over 4 models");
  });

  c.guard("darboux: factorization L+L f = (h0 - alpha) f", [&] {
    double worst = 0.0;
    auto g = ctx.rng(1400);
    for (Scenario s : kScenarios) {
      const Transformation& t = ctx.transformation(s);
      const DarbouxData& d = t.darboux;
      for (const auto& E : sample_energies(t, 2, g)) {
        const auto f = solve_left(d.V0(), E, d.grid());
        const auto Lf = apply_L(d, f);
        const Complex shift = E.energy() - d.alpha();
        for (int j = 0; j < 5; ++j) {
          const double x = half_line(t) ? uniform(g, 0.3, 4.0) : uniform(g, -4.0, 4.0), h = 1e-3;
          const Complex dLf = (Lf.value(x - 2 * h) - 8.0 * Lf.value(x - h) + 8.0 * Lf.value(x + h) -
                               Lf.value(x + 2 * h)) / (12.0 * h);
          const Complex lhs = dLf + d.w(x) * Lf.value(x), rhs = shift * f.value(x);
          worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
        }
      }
    }
    c.add("darboux: factorization L+L f = (h0 - alpha) f", worst < 1e-6, "max " + sci(worst));
  });

  c.guard("darboux: residue is phi0(x) phi0(y)", [&] {
    const DarbouxData& d = ctx.transformation(Scenario::FreeToSoliton).darboux;
    auto g = ctx.rng(1500);
    double worst = 0.0;
    for (int j = 0; j < 3; ++j) {
      const double x = uniform(g, -3.0, 3.0), y = uniform(g, -3.0, 3.0);
      worst = std::max(worst, std::abs(residue_at_alpha(d, x, y) - soliton_ground_state(1.0, x) *
                                                                        soliton_ground_state(1.0, y)));
    }
    c.add("darboux: residue is phi0(x) phi0(y)", worst < 1e-5, "max |diff| " + sci(worst));
  });

  for (Scenario s : kScenarios) {
    const std::string tag = std::string("[") + to_string(s) + "]";
    c.guard("traceform " + tag, [&] {
      const Transformation& t = ctx.transformation(s);
      double boundary = 0.0, spread = 0.0, identity = 0.0;
      const auto& reps = ctx.sweep(s);
      for (const auto& r : reps) {
        boundary = std::max(boundary, r.boundary_mismatch);
        spread = std::max(spread, r.q_spread);
        identity = std::max(identity, r.identity_residual);
      }
      const double printed = closed_worst(t, reps, HalfLineConvention::AsPrinted);
      c.add("traceform: trace = Q/(W0 (E - alpha)) " + tag, boundary < 1e-6, "max " + sci(boundary));
      c.add("traceform: Q variants agree " + tag, spread < 1e-8, "max " + sci(spread));
      c.add("traceform: identity residual " + tag, identity < 1e-8, "max " + sci(identity));
      c.add("traceform: trace matches closed form " + tag, printed < 1e-6, "max rel err " + sci(printed));
      if (half_line(t)) {
        const double consistent = closed_worst(t, reps, HalfLineConvention::ImKappaPositive);
        c.info("traceform: branch Im kappa > 0 closed form " + tag, "max rel err " + sci(consistent));
      }
    });
  }

  c.guard("density: P(k) and forward transform", [&] {
    double pk = 0.0, fwd = 0.0;
    for (double k : {0.0, 0.5, 1.0, 2.0, 5.0}) pk = std::max(pk, std::abs(pk_fullline(1.0, k).numeric_value -
                                                                            p_lambda_analytic(1.0, k)));
    auto g = ctx.rng(1600);
    for (const auto& E : sample_energies(ctx.transformation(Scenario::FreeToSoliton), 10, g)) {
      const Complex R = stieltjes_forward([](double k) { return p_lambda_analytic(1.0, k); }, E);
      fwd = std::max(fwd, std::abs(R - r_fullline(E, 1.0)));
    }
    c.add("density: P(k) matches a/(pi (k^2 + a^2))", pk < 1e-8, "max |diff| " + sci(pk));
    c.add("density: forward transform reproduces R(E)", fwd < 1e-6, "max |diff| " + sci(fwd));
  });

  c.guard("density: window integral", [&] {
    auto g = ctx.rng(1700);
    double worst = 0.0;
    for (int j = 0; j < 5; ++j) {
      const double k = uniform(g, 0.05, 5.0), A = uniform(g, 0.5, 100.0);
      worst = std::max(worst, std::abs(pkA_halfline(1.0, k, A) - brute_window(1.0, k, A)));
    }
    c.add("density: window form equals brute force", worst < 1e-8, "max |diff| " + sci(worst));
    // Over one period in A the window values sweep an interval of fixed width.
    double lo = 1e300, hi = -1e300;
    for (int j = 0; j <= 400; ++j) {
      const double v = pkA_halfline(1.0, 1.0, 100.0 + 100.0 * j / 400.0);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    c.add("density: no pointwise limit in A", (hi - lo) / 2.0 > 0.05,
          "P(1, A) spans [" + num(lo) + ", " + num(hi) + "] for A in [100, 200]");
  });

  c.guard("refmodels: pipeline vs closed-form kernels", [&] {
    auto g = ctx.rng(1800);
    const Scenario pool[] = {Scenario::FreeToSoliton, Scenario::FreeHalfToCsch, Scenario::IsospectralLine,
                             Scenario::SolitonRoundTrip};
    double worst = 0.0;
    int count = 0;
    for (int j = 0; j < 10; ++j) {
      const Transformation& t = ctx.transformation(pool[j % 4], j >= 4 && j < 8);
      const auto E = sample_energies(t, 1, g).front();
      const auto run = run_pipeline(t, E);
      for (int p = 0; p < 5; ++p, ++count) {
        const double x = coordinate(g, t), y = coordinate(g, t);
        worst = std::max(worst, rel(run.G0(x, y), reference_green(*t.reference_h0, x, y, E)));
        worst = std::max(worst, rel(run.G1(x, y), reference_green(*t.reference_h1, x, y, E)));
      }
    }
    c.add("refmodels: pipeline reproduces reference kernels", worst < 1e-7,
          "max rel err " + sci(worst) + " at " + std::to_string(count) + " (x, y, E)");
  });

  c.guard("refmodels: soliton cut discontinuity", [&] {
    const ReferenceModel m{ModelId::Soliton, 1.0};
    auto g = ctx.rng(1900);
    double worst = 0.0;
    for (int j = 0; j < 5; ++j) {
      const double x = uniform(g, -3.0, 3.0), y = uniform(g, -3.0, 3.0), k = uniform(g, 0.2, 4.0);
      const Complex jump = reference_green_kappa(m, x, y, k) - reference_green_kappa(m, x, y, -k);
      Complex modes = 0.0;
      for (double q : {k, -k}) modes += soliton_scattering(1.0, q, x) * std::conj(soliton_scattering(1.0, q, y));
      worst = std::max(worst, rel(jump, M_PI * I / k * modes));
    }
    c.add("refmodels: soliton cut jump is (pi i / k) sum xi xi*", worst < 1e-5, "max rel err " + sci(worst));
  });

  c.guard("cli: byte-identical output", [&] {
    const std::vector<std::vector<std::string>> runs = {
        {"green", "--model", "soliton", "--energy", "-4", "--points", "0,0;1,-1;0.5,2"},
        {"trace-sweep", "--model", "csch", "--energies", "-4;-2;-0.5;1+2i;-3-1i;2-0.5i", "--closed-form",
         "consistent", "--format", "json"},
        {"density", "--model", "soliton", "--k", "0:2:0.5"},
    };
    bool same = true;
    for (const auto& args : runs) {
      std::string o1, e1, o2, e2;
      auto a1 = args, a2 = args;
      if (args.front() == "trace-sweep") {
        a1.insert(a1.end(), {"--threads", "1"});
        a2.insert(a2.end(), {"--threads", "4"});
      }
      const int c1 = run_captured(a1, o1, e1), c2 = run_captured(a2, o2, e2);
      same = same && c1 == c2 && o1 == o2 && e1 == e2 && !o1.empty();
    }
    c.add("cli: byte-identical output on repeated runs", same, "green, trace-sweep (1 vs 4 threads), density");
  });

  c.guard("cli: exit codes", [&] {
    std::string o, e;
    const int ok = run_captured({"green", "--model", "soliton", "--a", "1", "--energy", "-4", "--points", "0,0"}, o, e);
    const int cut = run_captured({"green", "--model", "free-line", "--energy", "4"}, o, e);
    const bool cut_msg = e.find("energy on continuous spectrum") != std::string::npos;
    const int bad_k = run_captured({"density", "--model", "soliton", "--k", "0:5"}, o, e);
    const int fail = run_captured({"trace-sweep", "--model", "soliton", "--tol", "1e-300", "--energies", "-4"}, o, e);
    c.add("cli: exit codes 0 / 1 / 2", ok == 0 && cut == 2 && cut_msg && bad_k == 2 && fail == 1,
          "success " + std::to_string(ok) + ", cut energy " + std::to_string(cut) + ", malformed range " +
              std::to_string(bad_k) + ", tolerance exceeded " + std::to_string(fail));
  });
}

struct Definition {
  const char* title;
  void (*run)(Context&, Checks&);
};

constexpr Definition kDefinitions[kCriterionCount] = {
    {"trace formula, full line, case (ii)", criterion_trace_full},
    {"trace formula, half line, case (iii)", criterion_trace_half},
    {"case (i) round trip", criterion_round_trip},
    {"four-way Q agreement and identity", criterion_q_agreement},
    {"kernel correctness", criterion_kernels},
    {"pole structure, case (ii)", criterion_residue},
    {"regular point, cases (i)/(iii)", criterion_regular_point},
    {"density, full line", criterion_density_full},
    {"density, half line", criterion_density_half},
    {"spectral representation", criterion_spectral},
    {"property suite", properties},
};

CriterionResult run_one(int id, Context& ctx) {
  if (id < 1 || id > kCriterionCount) throw DomainError("criterion id out of range");
  const auto start = std::chrono::steady_clock::now();
  const Definition& def = kDefinitions[id - 1];
  Checks checks;
  checks.guard(def.title, [&] { def.run(ctx, checks); });
  CriterionResult r;
  r.id = id;
  r.title = def.title;
  r.checks = std::move(checks.list());
  int counted = 0, passed = 0;
  std::string failed;
  for (const auto& ch : r.checks) {
    if (ch.informational) continue;
    ++counted;
    if (ch.passed) {
      ++passed;
    } else {
      failed += (failed.empty() ? "" : "; ") + ch.name + " (" + ch.detail + ")";
    }
  }
  r.passed = counted > 0 && passed == counted;
  if (id == kCriterionCount || !r.passed) {
    r.detail = std::to_string(passed) + "/" + std::to_string(counted) + " checks pass";
    if (!failed.empty()) r.detail += "; failed: " + failed;
  } else {
    for (const auto& ch : r.checks) {
      if (!ch.informational) r.detail += (r.detail.empty() ? "" : "; ") + ch.detail;
    }
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace

CriterionResult run_criterion(int id, const VerifyOptions& options) {
  Context ctx(options);
  auto r = run_one(id, ctx);
  if (options.on_result) options.on_result(r);
  return r;
}

std::vector<CriterionResult> run_acceptance(const VerifyOptions& options) {
  Context ctx(options);
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) {
    out.push_back(run_one(id, ctx));
    if (options.on_result) options.on_result(out.back());
  }
  return out;
}

std::string format_line(const CriterionResult& r) {
  char head[96];
  std::snprintf(head, sizeof head, "%s %2d  %s (%.1f s): ", r.passed ? "PASS" : "FAIL", r.id, r.title.c_str(),
                r.seconds);
  std::string line = head + r.detail;
  for (const auto& ch : r.checks) {
    if (ch.informational) line += " [" + ch.name + ": " + ch.detail + "]";
  }
  return line + "\n";
}

}  // namespace susy
