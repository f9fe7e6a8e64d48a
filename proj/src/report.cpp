#include "susygreen/report.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <sstream>

#include "json.hpp"

#include "susygreen/errors.hpp"

namespace susy {

unsigned thread_cap() {
  if (const char* env = std::getenv("SUSYGREEN_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

namespace {

// JSON numbers; negative zero becomes 0.
double jnum(double v) { return v == 0.0 ? 0.0 : v; }

std::optional<double> parse_real(const std::string& s) {
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) return std::nullopt;
  return v;
}

std::string strip(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  }
  return out;
}

}  // namespace

Complex parse_complex(const std::string& text) {
  const std::string s = strip(text);
  auto fail = [&]() -> Complex { throw ConfigError("malformed complex number '" + text + "'"); };
  if (s.empty()) return fail();
  double re, im;
  if (s.front() == '(' && s.back() == ')') {
    const auto comma = s.find(',');
    if (comma == std::string::npos) return fail();
    auto r = parse_real(s.substr(1, comma - 1)), i = parse_real(s.substr(comma + 1, s.size() - comma - 2));
    if (!r || !i) return fail();
    re = *r;
    im = *i;
  } else if (s.back() == 'i' || s.back() == 'j') {
    const std::string body = s.substr(0, s.size() - 1);
    // Split at the last sign that is not an exponent sign or the leading sign.
    std::size_t split = std::string::npos;
    for (std::size_t p = body.size(); p-- > 1;) {
      if ((body[p] == '+' || body[p] == '-') && body[p - 1] != 'e' && body[p - 1] != 'E') {
        split = p;
        break;
      }
    }
    std::string rs = split == std::string::npos ? "" : body.substr(0, split);
    std::string is = split == std::string::npos ? body : body.substr(split);
    if (is.empty() || is == "+") is = "1";
    if (is == "-") is = "-1";
    auto r = rs.empty() ? std::optional<double>(0.0) : parse_real(rs);
    auto i = parse_real(is);
    if (!r || !i) return fail();
    re = *r;
    im = *i;
  } else {
    auto r = parse_real(s);
    if (!r) return fail();
    re = *r;
    im = 0.0;
  }
  if (!std::isfinite(re) || !std::isfinite(im)) return fail();
  return {re, im};
}

TraceRow to_row(const TraceReport& r) {
  return TraceRow{r.E.energy(), r.numeric_trace, r.Q, r.closed_form.value_or(Complex(0.0)), r.max_discrepancy()};
}

std::string render_green(const std::vector<GreenRow>& rows, OutputFormat format) {
  std::ostringstream out;
  if (format == OutputFormat::Csv) {
    out << "kernel,x,y,re,im\n";
    for (const auto& r : rows) {
      out << r.kernel << ',' << format_number(r.x) << ',' << format_number(r.y) << ','
          << format_number(r.value.real()) << ',' << format_number(r.value.imag()) << '\n';
    }
    return out.str();
  }
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    arr.push_back({{"kernel", r.kernel}, {"x", jnum(r.x)}, {"y", jnum(r.y)}, {"re", jnum(r.value.real())}, {"im", jnum(r.value.imag())}});
  }
  return arr.dump(2) + "\n";
}

std::string render_trace(const std::vector<TraceRow>& rows, OutputFormat format) {
  std::ostringstream out;
  if (format == OutputFormat::Csv) {
    out << "E_re,E_im,trace_re,trace_im,Q1_re,Q1_im,Q2_re,Q2_im,Q3_re,Q3_im,Q4_re,Q4_im,closed_re,closed_im,max_disc\n";
    for (const auto& r : rows) {
      out << format_number(r.E.real()) << ',' << format_number(r.E.imag()) << ',' << format_number(r.trace.real())
          << ',' << format_number(r.trace.imag());
      for (const auto& q : r.Q) out << ',' << format_number(q.real()) << ',' << format_number(q.imag());
      out << ',' << format_number(r.closed.real()) << ',' << format_number(r.closed.imag()) << ','
          << format_number(r.max_disc) << '\n';
    }
    return out.str();
  }
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json o;
    o["E_re"] = jnum(r.E.real());
    o["E_im"] = jnum(r.E.imag());
    o["trace_re"] = jnum(r.trace.real());
    o["trace_im"] = jnum(r.trace.imag());
    for (std::size_t i = 0; i < 4; ++i) {
      o["Q" + std::to_string(i + 1) + "_re"] = jnum(r.Q[i].real());
      o["Q" + std::to_string(i + 1) + "_im"] = jnum(r.Q[i].imag());
    }
    o["closed_re"] = jnum(r.closed.real());
    o["closed_im"] = jnum(r.closed.imag());
    o["max_disc"] = jnum(r.max_disc);
    arr.push_back(o);
  }
  return arr.dump(2) + "\n";
}

std::string render_density(const std::vector<DensityReport>& rows, OutputFormat format) {
  std::ostringstream out;
  const bool windowed = !rows.empty() && rows.front().window_A.has_value();
  if (format == OutputFormat::Csv) {
    out << (windowed ? "k,A,numeric,closed\n" : "k,numeric,analytic\n");
    for (const auto& r : rows) {
      out << format_number(r.k);
      if (windowed) out << ',' << format_number(r.window_A.value_or(0.0));
      out << ',' << format_number(r.numeric_value) << ',' << format_number(r.analytic_value.value_or(0.0)) << '\n';
    }
    return out.str();
  }
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json o;
    o["k"] = jnum(r.k);
    if (windowed) o["A"] = jnum(r.window_A.value_or(0.0));
    o["numeric"] = jnum(r.numeric_value);
    o[windowed ? "closed" : "analytic"] = jnum(r.analytic_value.value_or(0.0));
    arr.push_back(o);
  }
  return arr.dump(2) + "\n";
}

bool admissible_energy(const Transformation& t, Complex E, double sector, double disc) {
  if (!std::isfinite(E.real()) || !std::isfinite(E.imag()) || E == Complex(0.0)) return false;
  double arg = std::arg(E);
  if (std::abs(arg) < sector) return false;
  std::vector<double> poles = t.darboux.V0()->bound_states;
  const auto& more = t.darboux.V1()->bound_states;
  poles.insert(poles.end(), more.begin(), more.end());
  poles.push_back(t.darboux.alpha());
  for (double e : poles) {
    if (std::abs(E - e) < disc * std::max(1.0, std::abs(e))) return false;
  }
  return true;
}

std::vector<Complex> log_energy_grid(const Transformation& t, double r0, double r1, int nr, int nphi) {
  if (!(r0 > 0.0) || !(r1 >= r0) || nr < 1 || nphi < 1 || (nr == 1 && r1 != r0)) {
    throw ConfigError("log grid needs 0 < r0 <= r1, nr >= 1, nphi >= 1 (nr = 1 only when r0 = r1)");
  }
  std::vector<Complex> out;
  for (int i = 0; i < nr; ++i) {
    const double r = nr == 1 ? r0 : r0 * std::pow(r1 / r0, static_cast<double>(i) / (nr - 1));
    for (int j = 0; j < nphi; ++j) {
      const Complex E = std::polar(r, 2.0 * M_PI * (j + 0.5) / nphi);
      if (admissible_energy(t, E)) out.push_back(E);
    }
  }
  return out;
}

std::vector<TraceReport> trace_sweep(const Transformation& t, const std::vector<Complex>& energies,
                                     HalfLineConvention convention, unsigned threads, const TraceOptions& options) {
  std::vector<EnergyPoint> points;
  for (const auto& E : energies) points.push_back(momentum_of(E));
  std::function<std::optional<TraceReport>(std::size_t)> fn = [&](std::size_t i) {
    return std::optional<TraceReport>(trace_at(t, points[i], convention, options));
  };
  auto results = parallel_map(points.size(), fn, threads);
  std::vector<TraceReport> out;
  for (auto& r : results) out.push_back(std::move(*r));
  return out;
}

}  // namespace susy
