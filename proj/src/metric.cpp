#include "dgeo/metric.hpp"

#include <cmath>

#include "dgeo/errors.hpp"

namespace dgeo {

MetricField::MetricField(const Chart& chart, Field<Mat> components)
    : chart_(&chart), g_(std::move(components)) {
  if (g_.shape.indices.empty())
    g_.shape.indices = {IndexKind::CoordLower, IndexKind::CoordLower};
}

Mat MetricField::at(const Vec& x) const { return g_.eval(x); }

Mat MetricField::inverse_at(const Vec& x) const {
  const Mat g = at(x);
  if (std::abs(g.determinant()) <= 1e-12)
    throw NumericError("degenerate metric");
  return g.inverse();
}

double MetricField::det_at(const Vec& x) const { return at(x).determinant(); }

void MetricField::validate_at(const Vec& x) const {
  const Mat g = at(x);
  if (!g.allFinite()) throw NumericError("non-finite metric components");
  const int n = static_cast<int>(g.rows());
  if (g.cols() != n || n != chart_->dimension())
    throw NumericError("metric shape does not match the chart dimension");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (g(i, j) != g(j, i)) throw NumericError("metric is not symmetric");
  if (std::abs(g.determinant()) <= 1e-12)
    throw NumericError("degenerate metric");
}

FrameField::FrameField(const Chart& chart, Field<Mat> forward)
    : chart_(&chart), fwd_(std::move(forward)) {
  if (fwd_.shape.indices.empty())
    fwd_.shape.indices = {IndexKind::FrameUpper, IndexKind::CoordLower};
  const Field<Mat> fwd = fwd_;
  inv_.eval = [fwd](const Vec& x) {
    const Mat h = fwd.eval(x);
    if (std::abs(h.determinant()) <= 1e-14)
      throw NumericError("singular frame");
    return Mat(h.inverse());
  };
  inv_.fd = fwd_.fd;
  inv_.shape.indices = {IndexKind::CoordUpper, IndexKind::FrameLower};
}

ConnectionField::ConnectionField(const Chart& chart,
                                 Field<Tensor3> coefficients)
    : chart_(&chart), gamma_(std::move(coefficients)) {
  if (gamma_.shape.indices.empty())
    gamma_.shape.indices = {IndexKind::CoordUpper, IndexKind::CoordLower,
                            IndexKind::CoordLower};
}

}  // namespace dgeo
