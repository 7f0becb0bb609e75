#pragma once

#include <cstdint>
#include <vector>

#include "dgeo/tensor.hpp"

namespace dgeo {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

/// Finite-difference step policy of a chart. Steps scale with the coordinate
/// magnitude as h = h0 * max(1, |x|). Nested (second-level) derivatives of
/// fields that are themselves finite-difference results use the coarser step.
struct FdSpec {
  double h0 = 1e-5;
  bool richardson = false;
};

struct FdPolicy {
  double h0_first = 1e-5;
  double h0_second = 1e-4;
  bool richardson = true;

  FdSpec first() const { return {h0_first, richardson}; }
  FdSpec second() const { return {h0_second, richardson}; }
};

/// A coordinate chart: a finite box with per-coordinate singular margins.
/// All sampling and differentiation stays inside the margin-shrunk box.
class Chart {
 public:
  Chart(std::vector<Interval> domain, std::vector<double> margins,
        FdPolicy fd = {});

  /// Margins default to 1e-3 of each interval's length.
  explicit Chart(std::vector<Interval> domain, FdPolicy fd = {});

  int dimension() const { return static_cast<int>(domain_.size()); }
  const std::vector<Interval>& domain() const { return domain_; }
  const std::vector<double>& margins() const { return margins_; }
  const FdPolicy& fd() const { return fd_; }
  void set_fd(const FdPolicy& p) { fd_ = p; }

  /// Margin-shrunk interval for coordinate i.
  Interval inner(int i) const;

  /// True when x lies in the margin-shrunk box (closed).
  bool contains(const Vec& x) const;

  /// Copy of this chart with each margin grown by `fraction` of the interval
  /// length. Used to sample strictly interior points for group experiments.
  Chart shrunk(double fraction) const;

  /// Deterministic sample of `count` points in the margin-shrunk box.
  /// Interleaves a randomized low-discrepancy sequence with seeded uniform
  /// draws; a small inset keeps finite-difference stencils of sampled points
  /// inside the box.
  std::vector<Vec> sample(int count, std::uint64_t seed) const;

 private:
  std::vector<Interval> domain_;
  std::vector<double> margins_;
  FdPolicy fd_;
};

/// Free-function form of Chart::sample.
std::vector<Vec> sample_points(const Chart& chart, int count,
                               std::uint64_t seed);

}  // namespace dgeo
