#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace susy {

enum class Domain { FullLine, HalfLine };

// Integrability class of the potential: int (1+|x|)|V| dx < inf on the full
// line, int x|V| dx < inf on the half line.
enum class DecayClass { FaddeevFullLine, FaddeevHalfLine };

/// Real potential V(x) of h = -d^2/dx^2 + V on (a, b).
struct Potential {
  std::string name;
  Domain domain = Domain::FullLine;
  DecayClass decay = DecayClass::FaddeevFullLine;
  std::function<double(double)> evaluate;
  /// Rate r of the envelope |V| ~ exp(-r|x|); unset for V identically zero
  /// or when unknown.
  std::optional<double> decay_rate;
  /// Coefficient c of the leading c/x^2 behaviour at the origin (half line).
  std::optional<double> origin_singularity;
  /// Known discrete energies E0 < E1 < ...
  std::vector<double> bound_states;

  double operator()(double x) const { return evaluate(x); }
  std::size_t bound_state_count() const { return bound_states.size(); }
  /// Frobenius exponent l with c = l(l+1); 0 for regular origins.
  double origin_angular_momentum() const;
};

Potential zero_potential(Domain domain);

/// Checks the invariants: finite values on sample points, and for a
/// declared origin singularity, V(x) x^2 -> c on a decreasing sequence.
/// Throws DomainError.
void validate_potential(const Potential& V, double x_probe_max = 5.0);

}  // namespace susy
