#include "susygreen/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "susygreen/density.hpp"
#include "susygreen/errors.hpp"
#include "susygreen/pipeline.hpp"
#include "susygreen/report.hpp"
#include "susygreen/verify.hpp"

namespace susy {

namespace {

struct RunConfig {
  std::string model = "soliton";
  double a = 1.0;
  std::string energy;
  std::string energies;
  std::string log_grid;
  std::string points;
  std::string k;
  std::optional<double> window;
  std::string closed_form = "printed";
  std::string format = "csv";
  double tol = 1e-6;
  std::optional<double> xmax;
  bool numeric_factor = false;
  std::string config;
  unsigned threads = 0;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
    throw ConfigError("malformed " + what + " '" + s + "'");
  }
  return v;
}

// Model names resolve to the transformation whose h0 or h1 is that model.
Scenario scenario_of(const std::string& model) {
  if (model == "free-line") return Scenario::IsospectralLine;
  if (model == "free-half-line") return Scenario::FreeHalfToCsch;
  return parse_scenario(model);
}

OutputFormat format_of(const std::string& f) {
  if (f == "csv") return OutputFormat::Csv;
  if (f == "json") return OutputFormat::Json;
  throw ConfigError("unknown format '" + f + "'");
}

HalfLineConvention convention_of(const std::string& c) {
  if (c == "printed") return HalfLineConvention::AsPrinted;
  if (c == "consistent") return HalfLineConvention::ImKappaPositive;
  throw ConfigError("closed form must be 'printed' or 'consistent'");
}

void validate(const RunConfig& c) {
  if (!(c.tol > 0.0)) throw ConfigError("tolerance must be positive");
  if (!(c.a > 0.0)) throw ConfigError("parameter a must be positive");
  if (c.xmax && !(*c.xmax > 0.0)) throw ConfigError("xmax must be positive");
  if (c.window && !(*c.window > 0.0)) throw ConfigError("window must be positive");
}

ScenarioSpec scenario_spec(const RunConfig& c) {
  ScenarioSpec spec{scenario_of(c.model), c.a};
  spec.numeric_factor = c.numeric_factor;
  if (c.xmax) spec.grid.x_max = *c.xmax;
  return spec;
}

std::string join_json(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number()) {
    std::ostringstream s;
    s.precision(17);
    s << v.get<double>();
    return s.str();
  }
  if (v.is_array()) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ";";
      if (v[i].is_array()) {
        for (std::size_t j = 0; j < v[i].size(); ++j) out += (j ? "," : "") + join_json(v[i][j]);
      } else {
        out += join_json(v[i]);
      }
    }
    return out;
  }
  throw ConfigError("unsupported config value " + v.dump());
}

// Values from the JSON file fill options not given on the command line.
void apply_config(CLI::App& sub, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file is not valid JSON: " + std::string(e.what()));
  }
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  for (const auto& [key, value] : j.items()) {
    std::string name = key;
    std::replace(name.begin(), name.end(), '_', '-');
    if (name == "config") throw ConfigError("config files cannot include other config files");
    CLI::Option* opt = nullptr;
    try {
      opt = sub.get_option("--" + name);
    } catch (const CLI::OptionNotFound&) {
      throw ConfigError("unknown config key '" + key + "' for " + sub.get_name());
    }
    if (opt->count() > 0) continue;
    opt->add_result(join_json(value));
    try {
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw ConfigError("config key '" + key + "': " + e.what());
    }
  }
}

EnergyPoint energy_point(const std::string& text) { return momentum_of(parse_complex(text)); }

int cmd_green(const RunConfig& c, std::ostream& out) {
  if (c.energy.empty()) throw ConfigError("green needs --energy");
  const EnergyPoint E = energy_point(c.energy);
  const Transformation t = make_transformation(scenario_spec(c));
  const bool half = t.darboux.V0()->domain == Domain::HalfLine;
  auto points = parse_points(c.points.empty() ? (half ? "0.5,0.5;0.5,1.5;1,1" : "0,0;-0.5,0.5;1,1") : c.points);
  std::sort(points.begin(), points.end());
  const Grid& g = t.darboux.grid();
  for (auto [x, y] : points) {
    for (double z : {x, y}) {
      if (z < g.x_min() || z > g.x_max()) {
        throw DomainError("point " + format_number(z) + " outside [" + format_number(g.x_min()) + ", " +
                          format_number(g.x_max()) + "]");
      }
    }
  }
  const PipelineResult r = run_pipeline(t, E);
  std::vector<GreenRow> rows;
  for (auto [x, y] : points) {
    rows.push_back({"G0", x, y, r.G0(x, y)});
    rows.push_back({"G1", x, y, r.G1(x, y)});
  }
  out << render_green(rows, format_of(c.format));
  return kExitOk;
}

int cmd_trace_sweep(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const Transformation t = make_transformation(scenario_spec(c));
  std::vector<Complex> energies;
  if (!c.log_grid.empty()) {
    const auto f = split(c.log_grid, ':');
    if (f.size() != 4) throw ConfigError("log grid must be r0:r1:nr:nphi");
    const double nr = parse_double(f[2], "log grid count"), nphi = parse_double(f[3], "log grid count");
    if (nr != std::floor(nr) || nphi != std::floor(nphi)) throw ConfigError("log grid counts must be integers");
    energies = log_energy_grid(t, parse_double(f[0], "radius"), parse_double(f[1], "radius"), static_cast<int>(nr),
                               static_cast<int>(nphi));
  }
  for (const auto& s : split(c.energies, ';')) energies.push_back(parse_complex(s));
  if (!c.energy.empty()) energies.push_back(parse_complex(c.energy));
  if (energies.empty()) energies = {-4.0, -2.0, -0.5};
  for (const auto& E : energies) momentum_of(E);  // reject cut energies before any work

  const unsigned threads = c.threads > 0 ? c.threads : thread_cap();
  const auto reports = trace_sweep(t, energies, convention_of(c.closed_form), threads);
  std::vector<TraceRow> rows;
  std::size_t bad = 0;
  for (const auto& r : reports) {
    rows.push_back(to_row(r));
    if (!(r.max_discrepancy() <= c.tol)) ++bad;
  }
  out << render_trace(rows, format_of(c.format));
  if (bad > 0) {
    err << "error: " << bad << " of " << rows.size() << " rows exceed tolerance " << format_number(c.tol) << "\n";
    return kExitVerification;
  }
  return kExitOk;
}

int cmd_density(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.k.empty()) throw ConfigError("density needs --k");
  const auto ks = parse_range(c.k);
  DensityOptions opts;
  if (c.xmax) opts.grid.x_max = *c.xmax;
  std::vector<DensityReport> rows;
  if (c.model == "soliton" || c.model == "free-to-soliton") {
    if (c.window) throw ConfigError("--window applies to the half-line model only");
    for (double k : ks) rows.push_back(pk_fullline(c.a, k, opts));
  } else if (c.model == "csch" || c.model == "free-half-to-csch") {
    if (!c.window) throw ConfigError("csch density needs --window A");
    for (double k : ks) rows.push_back(pkA_numeric(c.a, k, *c.window, opts));
  } else {
    throw ConfigError("density supports models 'soliton' and 'csch'");
  }
  out << render_density(rows, format_of(c.format));
  std::size_t bad = 0;
  for (const auto& r : rows) {
    if (!(std::abs(r.numeric_value - r.analytic_value.value_or(0.0)) <= c.tol)) ++bad;
  }
  if (bad > 0) {
    err << "error: " << bad << " of " << rows.size() << " rows exceed tolerance " << format_number(c.tol) << "\n";
    return kExitVerification;
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  VerifyOptions opts;
  opts.threads = c.threads;
  const OutputFormat f = format_of(c.format);
  if (f == OutputFormat::Csv) opts.on_result = [&](const CriterionResult& r) { out << format_line(r) << std::flush; };
  const auto results = run_acceptance(opts);
  bool ok = true;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    ok = ok && r.passed;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& ch : r.checks) checks.push_back({{"name", ch.name}, {"passed", ch.passed}, {"detail", ch.detail}});
    arr.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}, {"checks", checks}});
  }
  if (f == OutputFormat::Json) out << arr.dump(2) << "\n";
  return ok ? kExitOk : kExitVerification;
}

}  // namespace

std::vector<double> parse_range(const std::string& text) {
  const auto f = split(text, ':');
  if (f.size() == 1) return {parse_double(f[0], "value")};
  if (f.size() != 3) throw ConfigError("range must be lo:hi:step, got '" + text + "'");
  const double lo = parse_double(f[0], "range start"), hi = parse_double(f[1], "range end"),
               step = parse_double(f[2], "range step");
  if (!(step > 0.0) || hi < lo) throw ConfigError("range needs lo <= hi and step > 0, got '" + text + "'");
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  if (n > 100000) throw ConfigError("range has too many points");
  std::vector<double> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(lo + static_cast<double>(i) * step);
  return out;
}

std::vector<std::pair<double, double>> parse_points(const std::string& text) {
  std::vector<std::pair<double, double>> out;
  for (const auto& p : split(text, ';')) {
    const auto xy = split(p, ',');
    if (xy.size() != 2) throw ConfigError("point must be x,y, got '" + p + "'");
    out.emplace_back(parse_double(xy[0], "coordinate"), parse_double(xy[1], "coordinate"));
  }
  if (out.empty()) throw ConfigError("no points given");
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Green functions of Darboux-transformed Schroedinger operators", "susygreen"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--model", c.model, "reference model or transformation")->capture_default_str();
    sub->add_option("--a", c.a, "model parameter a")->capture_default_str();
    sub->add_option("--format", c.format, "csv or json")->capture_default_str();
    sub->add_option("--tol", c.tol, "verification tolerance")->capture_default_str();
    sub->add_option("--xmax", c.xmax, "truncation point");
    sub->add_option("--config", c.config, "JSON file with the same keys as the flags");
  };
  auto* green = app.add_subcommand("green", "G0 and G1 at points (x,y)");
  common(green);
  green->add_option("--energy", c.energy, "complex energy");
  green->add_option("--points", c.points, "x,y;x,y;...");
  green->add_flag("--numeric-factor", c.numeric_factor, "factorization solution from the ODE solver");

  auto* sweep = app.add_subcommand("trace-sweep", "trace of G0 - G1 over an energy list");
  common(sweep);
  sweep->add_option("--energy", c.energy, "single complex energy");
  sweep->add_option("--energies", c.energies, "complex energies separated by ';'");
  sweep->add_option("--log-grid", c.log_grid, "r0:r1:nr:nphi");
  sweep->add_option("--closed-form", c.closed_form, "half-line closed form: printed or consistent")
      ->capture_default_str();
  sweep->add_flag("--numeric-factor", c.numeric_factor, "factorization solution from the ODE solver");
  sweep->add_option("--threads", c.threads, "worker count (default: SUSYGREEN_THREADS or all cores)");

  auto* density = app.add_subcommand("density", "spectral density differences");
  common(density);
  density->add_option("--k", c.k, "momentum lo:hi:step or a single value");
  density->add_option("--window", c.window, "window A (half line)");

  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_option("--format", c.format, "csv or json")->capture_default_str();
  verify->add_option("--threads", c.threads, "worker count");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    if (!c.config.empty()) apply_config(*sub, c.config);
    validate(c);
    format_of(c.format);
    if (sub == green) return cmd_green(c, out);
    if (sub == sweep) return cmd_trace_sweep(c, out, err);
    if (sub == density) return cmd_density(c, out, err);
    return cmd_verify(c, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const BranchError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const CaseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ThresholdError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerification;
  }
}

}  // namespace susy
