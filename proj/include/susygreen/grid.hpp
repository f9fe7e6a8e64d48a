#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "susygreen/potential.hpp"

namespace susy {

/// Strictly increasing node set x_0 < ... < x_N standing in for (a, b).
/// Copies share the node storage, so solutions built on the same Grid can
/// be matched cheaply.
class Grid {
 public:
  explicit Grid(std::vector<double> nodes);

  /// Uniform nodes on [x_min, x_max] with spacing at most `step`.
  static Grid uniform(double x_min, double x_max, double step);
  /// Half-line grid on [x0, x_max]. With x0 > 0 the nodes grow
  /// geometrically (ratio `grading`) from x0 until the spacing reaches
  /// `step`, then continue uniformly.
  static Grid half_line(double x_max, double step, double x0 = 0.0, double grading = 1.05);

  std::span<const double> nodes() const { return *nodes_; }
  std::size_t size() const { return nodes_->size(); }
  double operator[](std::size_t i) const { return (*nodes_)[i]; }
  double x_min() const { return nodes_->front(); }
  double x_max() const { return nodes_->back(); }
  /// Index of the interval [x_i, x_{i+1}] containing x (clamped).
  std::size_t interval_of(double x) const;
  /// Index of the node closest to x.
  std::size_t nearest(double x) const;
  bool same_as(const Grid& other) const;

 private:
  std::shared_ptr<const std::vector<double>> nodes_;
};

struct GridOptions {
  double step = 0.005;
  /// Truncation; 0 selects 40 / decay_rate (or 40 when unknown).
  double x_max = 0.0;
  /// Half-line start; used when the potential or its partner is singular.
  double x0 = 1e-4;
  double grading = 1.05;
};

/// Default grid for a potential. `partner_singular` requests x0 > 0 on the
/// half line even when V itself is regular (its SUSY partner is not).
Grid grid_for(const Potential& V, const GridOptions& options = {}, bool partner_singular = false,
              std::optional<double> extra_decay_rate = std::nullopt);

}  // namespace susy
