#include "susygreen/quadrature.hpp"

#include "susygreen/errors.hpp"

namespace susy {

std::vector<double> panel_breaks(double a, double b, double max_length) {
  if (!(b > a) || !(max_length > 0.0)) throw DomainError("invalid quadrature panel request");
  const auto n = static_cast<std::size_t>(std::ceil((b - a) / max_length));
  std::vector<double> out(n + 1);
  for (std::size_t i = 0; i <= n; ++i) out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n);
  out.back() = b;
  return out;
}

}  // namespace susy
