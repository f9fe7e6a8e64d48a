#include "susygreen/refmodels.hpp"

#include <cmath>

#include "susygreen/errors.hpp"

namespace susy {

const char* to_string(ModelId id) {
  switch (id) {
    case ModelId::FreeLine:
      return "free-line";
    case ModelId::FreeHalfLine:
      return "free-half-line";
    case ModelId::Soliton:
      return "soliton";
    case ModelId::Csch:
      return "csch";
  }
  return "?";
}

ModelId parse_model(const std::string& name) {
  for (ModelId id : {ModelId::FreeLine, ModelId::FreeHalfLine, ModelId::Soliton, ModelId::Csch}) {
    if (name == to_string(id)) return id;
  }
  throw ConfigError("unknown model '" + name + "'");
}

namespace {

double sech(double x) { return 1.0 / std::cosh(x); }
double coth(double x) { return 1.0 / std::tanh(x); }
double csch(double x) { return 1.0 / std::sinh(x); }

bool half_line(ModelId id) { return id == ModelId::FreeHalfLine || id == ModelId::Csch; }

void check_a(const ReferenceModel& m) {
  if ((m.id == ModelId::Soliton || m.id == ModelId::Csch) && !(m.a > 0.0)) {
    throw DomainError("model parameter a must be positive");
  }
}

void check_x(const ReferenceModel& m, double x) {
  if (half_line(m.id) && x < 0.0) throw DomainError("half-line model evaluated at x < 0");
  if (m.id == ModelId::Csch && x == 0.0) throw DomainError("csch model is singular at the origin");
}

// f_kappa(x) = e^{-i kappa x}(i kappa + a tanh(ax)) and its derivative.
std::pair<Complex, Complex> soliton_f(double a, Complex kappa, double x) {
  const Complex e = std::exp(-I * kappa * x);
  const double t = std::tanh(a * x), s = sech(a * x);
  return {e * (I * kappa + a * t), e * (-I * kappa * (I * kappa + a * t) + a * a * s * s)};
}

// Unnormalized csch pair: g_l = k cos(kx) - a coth(ax) sin(kx),
// g_r = e^{iky}(k + ia coth(ay)).
std::pair<Complex, Complex> csch_gl(double a, Complex k, double x) {
  const Complex c = std::cos(k * x), s = std::sin(k * x);
  const double ct = coth(a * x), cs = csch(a * x);
  return {k * c - a * ct * s, -k * k * s + a * a * cs * cs * s - a * k * ct * c};
}

std::pair<Complex, Complex> csch_gr(double a, Complex k, double y) {
  const Complex e = std::exp(I * k * y);
  const double ct = coth(a * y), cs = csch(a * y);
  return {e * (k + I * a * ct), e * (I * k * k - a * k * ct - I * a * a * cs * cs)};
}

}  // namespace

Potential reference_potential(const ReferenceModel& m) {
  check_a(m);
  const double a = m.a;
  switch (m.id) {
    case ModelId::FreeLine: {
      Potential p = zero_potential(Domain::FullLine);
      p.name = "free-line";
      return p;
    }
    case ModelId::FreeHalfLine: {
      Potential p = zero_potential(Domain::HalfLine);
      p.name = "free-half-line";
      return p;
    }
    case ModelId::Soliton: {
      Potential p;
      p.name = "soliton";
      p.domain = Domain::FullLine;
      p.decay = DecayClass::FaddeevFullLine;
      p.evaluate = [a](double x) {
        const double s = sech(a * x);
        return -2.0 * a * a * s * s;
      };
      p.decay_rate = 2.0 * a;
      p.bound_states = {-a * a};
      return p;
    }
    case ModelId::Csch: {
      Potential p;
      p.name = "csch";
      p.domain = Domain::HalfLine;
      p.decay = DecayClass::FaddeevHalfLine;
      p.evaluate = [a](double x) {
        const double s = csch(a * x);
        return 2.0 * a * a * s * s;
      };
      p.decay_rate = 2.0 * a;
      p.origin_singularity = 2.0;
      return p;
    }
  }
  throw DomainError("unknown model");
}

std::pair<Complex, Complex> reference_left(const ReferenceModel& m, Complex kappa, double x) {
  check_a(m);
  check_x(m, x);
  const double a = m.a;
  switch (m.id) {
    case ModelId::FreeLine: {
      const Complex e = std::exp(-I * kappa * x);
      return {e, -I * kappa * e};
    }
    case ModelId::FreeHalfLine:
      return {std::sin(kappa * x) / kappa, std::cos(kappa * x)};
    case ModelId::Soliton: {
      auto [f, df] = soliton_f(a, kappa, x);
      const Complex n = I * kappa - a;
      return {f / n, df / n};
    }
    case ModelId::Csch: {
      // g_l = -kappa (kappa^2 + a^2) x^2 / 3 + O(x^4).
      auto [g, dg] = csch_gl(a, kappa, x);
      const Complex n = -kappa * (kappa * kappa + a * a) / 3.0;
      if (n == Complex(0.0)) throw DomainError("csch left solution undefined at kappa = ia");
      return {g / n, dg / n};
    }
  }
  throw DomainError("unknown model");
}

std::pair<Complex, Complex> reference_right(const ReferenceModel& m, Complex kappa, double x) {
  check_a(m);
  check_x(m, x);
  const double a = m.a;
  switch (m.id) {
    case ModelId::FreeLine:
    case ModelId::FreeHalfLine: {
      const Complex e = std::exp(I * kappa * x);
      return {e, I * kappa * e};
    }
    case ModelId::Soliton: {
      auto [f, df] = soliton_f(a, -kappa, x);
      const Complex n = a - I * kappa;
      return {f / n, df / n};
    }
    case ModelId::Csch: {
      auto [g, dg] = csch_gr(a, kappa, x);
      const Complex n = kappa + I * a;
      return {g / n, dg / n};
    }
  }
  throw DomainError("unknown model");
}

Complex reference_wronskian(const ReferenceModel& m, Complex kappa) {
  const double x = half_line(m.id) ? 0.5 / m.a : 0.0;
  const auto [fl, dfl] = reference_left(m, kappa, x);
  const auto [fr, dfr] = reference_right(m, kappa, x);
  return fr * dfl - dfr * fl;
}

Complex reference_green_kappa(const ReferenceModel& m, double x, double y, Complex kappa) {
  check_a(m);
  check_x(m, x);
  check_x(m, y);
  const double lo = std::min(x, y), hi = std::max(x, y);
  const double a = m.a;
  switch (m.id) {
    case ModelId::FreeLine:
      return I / (2.0 * kappa) * std::exp(I * kappa * (hi - lo));
    case ModelId::FreeHalfLine:
      return std::sin(kappa * lo) * std::exp(I * kappa * hi) / kappa;
    case ModelId::Soliton: {
      const Complex fk = soliton_f(a, kappa, lo).first;
      const Complex fmk = soliton_f(a, -kappa, hi).first;
      return I * fk * fmk / (2.0 * kappa * (kappa * kappa + a * a));
    }
    case ModelId::Csch: {
      const Complex d = kappa * kappa + a * a;
      if (std::abs(d) < 1e-9 * a * a) {
        return std::exp(-a * hi) * (1.0 + coth(a * hi)) * (std::cosh(a * lo) - a * lo / std::sinh(a * lo)) /
               (2.0 * a);
      }
      return I * csch_gr(a, kappa, hi).first * csch_gl(a, kappa, lo).first / (kappa * d);
    }
  }
  throw DomainError("unknown model");
}

Complex reference_green(const ReferenceModel& m, double x, double y, const EnergyPoint& E) {
  return reference_green_kappa(m, x, y, E.kappa());
}

double soliton_ground_state(double a, double x) { return std::sqrt(0.5 * a) * sech(a * x); }

Complex soliton_scattering(double a, double k, double x) {
  return (-I * k + a * std::tanh(a * x)) * std::exp(I * k * x) / std::sqrt(2.0 * M_PI * (k * k + a * a));
}

Complex plane_wave(double k, double x) { return std::exp(I * k * x) / std::sqrt(2.0 * M_PI); }

double sine_wave(double k, double x) { return std::sqrt(2.0 / M_PI) * std::sin(k * x); }

double csch_scattering(double a, double k, double x) {
  return std::sqrt(2.0 / (M_PI * (k * k + a * a))) * (-k * std::cos(k * x) + a * coth(a * x) * std::sin(k * x));
}

SpectralModel spectral_model(const ReferenceModel& m) {
  check_a(m);
  const double a = m.a;
  SpectralModel s;
  s.domain = half_line(m.id) ? Domain::HalfLine : Domain::FullLine;
  auto line = [](double x, double y) { return std::vector<std::pair<double, double>>{{1.0 / M_PI, x - y}}; };
  auto half = [](double x, double y) {
    return std::vector<std::pair<double, double>>{{1.0 / M_PI, x - y}, {-1.0 / M_PI, x + y}};
  };
  switch (m.id) {
    case ModelId::FreeLine:
      s.continuum = [](double k, double x, double y) { return plane_wave(k, x) * std::conj(plane_wave(k, y)); };
      s.asymptote = line;
      break;
    case ModelId::FreeHalfLine:
      s.continuum = [](double k, double x, double y) { return Complex(sine_wave(k, x) * sine_wave(k, y)); };
      s.asymptote = half;
      break;
    case ModelId::Soliton:
      s.bound_states.push_back({-a * a, [a](double x) { return soliton_ground_state(a, x); }});
      s.continuum = [a](double k, double x, double y) {
        return soliton_scattering(a, k, x) * std::conj(soliton_scattering(a, k, y));
      };
      s.asymptote = line;
      break;
    case ModelId::Csch:
      s.continuum = [a](double k, double x, double y) {
        return Complex(csch_scattering(a, k, x) * csch_scattering(a, k, y));
      };
      // xi_k -> -sqrt(2/pi) cos(kx) at large k.
      s.asymptote = [](double x, double y) {
        return std::vector<std::pair<double, double>>{{1.0 / M_PI, x - y}, {1.0 / M_PI, x + y}};
      };
      break;
  }
  return s;
}

Potential deep_well_halfline(double a) {
  if (!(a > 0.0)) throw DomainError("model parameter a must be positive");
  Potential p;
  p.name = "deep-well-half-line";
  p.domain = Domain::HalfLine;
  p.decay = DecayClass::FaddeevHalfLine;
  p.evaluate = [a](double x) {
    const double s = sech(a * x);
    return -6.0 * a * a * s * s;
  };
  p.decay_rate = 2.0 * a;
  p.bound_states = {-a * a};
  return p;
}

std::pair<double, double> deep_well_ground_state(double a, double x) {
  const double n = std::sqrt(3.0 * a);
  const double t = std::tanh(a * x), s = sech(a * x);
  return {n * t * s, n * a * s * (s * s - t * t)};
}

}  // namespace susy
