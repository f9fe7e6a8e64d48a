#include "susygreen/grid.hpp"

#include <algorithm>
#include <cmath>

#include "susygreen/errors.hpp"

namespace susy {

Grid::Grid(std::vector<double> nodes) {
  if (nodes.size() < 3) throw DomainError("grid needs at least three nodes");
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (!(nodes[i] > nodes[i - 1])) throw DomainError("grid nodes must be strictly increasing");
  }
  nodes_ = std::make_shared<const std::vector<double>>(std::move(nodes));
}

Grid Grid::uniform(double x_min, double x_max, double step) {
  if (!(x_max > x_min) || !(step > 0.0)) throw DomainError("invalid uniform grid bounds");
  const auto n = static_cast<std::size_t>(std::ceil((x_max - x_min) / step));
  std::vector<double> xs(n + 1);
  for (std::size_t i = 0; i <= n; ++i) xs[i] = x_min + (x_max - x_min) * static_cast<double>(i) / n;
  xs.back() = x_max;
  return Grid(std::move(xs));
}

Grid Grid::half_line(double x_max, double step, double x0, double grading) {
  if (!(x_max > x0) || x0 < 0.0 || !(step > 0.0)) throw DomainError("invalid half-line grid bounds");
  std::vector<double> xs;
  double x = x0;
  xs.push_back(x);
  if (x0 > 0.0) {
    if (!(grading > 1.0)) throw DomainError("grading ratio must exceed 1");
    while (x * (grading - 1.0) < step && x * grading < x_max) {
      x *= grading;
      xs.push_back(x);
    }
  }
  const auto n = static_cast<std::size_t>(std::ceil((x_max - x) / step));
  const double start = x;
  for (std::size_t i = 1; i <= n; ++i) xs.push_back(start + (x_max - start) * static_cast<double>(i) / n);
  xs.back() = x_max;
  return Grid(std::move(xs));
}

std::size_t Grid::interval_of(double x) const {
  const auto& xs = *nodes_;
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  if (it == xs.begin()) return 0;
  std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
  return std::min(i, xs.size() - 2);
}

std::size_t Grid::nearest(double x) const {
  std::size_t i = interval_of(x);
  const auto& xs = *nodes_;
  return (std::abs(x - xs[i]) <= std::abs(xs[i + 1] - x)) ? i : i + 1;
}

bool Grid::same_as(const Grid& other) const {
  return nodes_ == other.nodes_ || *nodes_ == *other.nodes_;
}

Grid grid_for(const Potential& V, const GridOptions& options, bool partner_singular,
              std::optional<double> extra_decay_rate) {
  double rate = 0.0;
  if (V.decay_rate) rate = *V.decay_rate;
  if (extra_decay_rate) rate = rate > 0.0 ? std::min(rate, *extra_decay_rate) : *extra_decay_rate;
  double x_max = options.x_max > 0.0 ? options.x_max : (rate > 0.0 ? 40.0 / rate : 40.0);
  if (V.domain == Domain::FullLine) return Grid::uniform(-x_max, x_max, options.step);
  const bool singular = V.origin_singularity.has_value() || partner_singular;
  return Grid::half_line(x_max, options.step, singular ? options.x0 : 0.0, options.grading);
}

}  // namespace susy
