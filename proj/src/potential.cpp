#include "susygreen/potential.hpp"

#include <cmath>

#include "susygreen/errors.hpp"

namespace susy {

double Potential::origin_angular_momentum() const {
  if (!origin_singularity) return 0.0;
  return 0.5 * (-1.0 + std::sqrt(1.0 + 4.0 * *origin_singularity));
}

Potential zero_potential(Domain domain) {
  Potential V;
  V.name = domain == Domain::FullLine ? "free-line" : "free-half-line";
  V.domain = domain;
  V.decay = domain == Domain::FullLine ? DecayClass::FaddeevFullLine : DecayClass::FaddeevHalfLine;
  V.evaluate = [](double) { return 0.0; };
  return V;
}

void validate_potential(const Potential& V, double x_probe_max) {
  if (!V.evaluate) throw DomainError("potential '" + V.name + "' has no evaluator");
  if ((V.domain == Domain::FullLine) != (V.decay == DecayClass::FaddeevFullLine)) {
    throw DomainError("decay class does not match the domain of '" + V.name + "'");
  }
  const double lo = V.domain == Domain::FullLine ? -x_probe_max : 0.0;
  for (int i = 1; i < 64; ++i) {
    double x = lo + (x_probe_max - lo) * i / 64.0;
    if (!std::isfinite(V(x))) throw DomainError("potential '" + V.name + "' is not finite at interior point");
  }
  if (V.origin_singularity) {
    if (V.domain != Domain::HalfLine) throw DomainError("origin singularity declared on the full line");
    const double c = *V.origin_singularity;
    double prev = std::abs(V(1e-2) * 1e-4 - c);
    for (double x : {1e-3, 1e-4, 1e-5}) {
      double dev = std::abs(V(x) * x * x - c);
      if (dev > prev + 1e-12 * std::max(1.0, std::abs(c))) {
        throw DomainError("V(x) x^2 does not approach the declared coefficient");
      }
      prev = dev;
    }
    if (prev > 1e-6 * std::max(1.0, std::abs(c))) {
      throw DomainError("V(x) x^2 does not approach the declared coefficient");
    }
  }
}

}  // namespace susy
