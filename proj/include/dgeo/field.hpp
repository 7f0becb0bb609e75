#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "dgeo/chart.hpp"
#include "dgeo/errors.hpp"
#include "dgeo/tensor.hpp"

namespace dgeo {

/// Descriptive index metadata of a chart field's output tensor.
enum class IndexKind { FrameUpper, FrameLower, CoordUpper, CoordLower };

struct FieldShape {
  std::vector<IndexKind> indices;  // empty for scalars
  int rank() const { return static_cast<int>(indices.size()); }
};

/// A differentiable map from chart points to values (scalars, vectors,
/// matrices or higher-rank tensors). Immutable after construction; evaluation
/// is a pure function of the point, so concurrent use is safe.
///
/// `partial`, when set, supplies analytic directional derivatives; otherwise
/// differentiation falls back to central differences with the field's FdSpec.
template <class T>
struct Field {
  std::function<T(const Vec&)> eval;
  std::function<T(const Vec&, int)> partial;  // may be empty
  FdSpec fd{};
  FieldShape shape{};

  T operator()(const Vec& x) const { return eval(x); }
};

using ScalarField = Field<double>;
using VectorField = Field<Vec>;
using MatrixField = Field<Mat>;

namespace detail {

template <class T>
T central_difference(const Chart& chart, const std::function<T(const Vec&)>& f,
                     const Vec& x, int dir, double h) {
  Vec xp = x, xm = x;
  xp[dir] += h;
  xm[dir] -= h;
  if (!chart.contains(xp) || !chart.contains(xm))
    throw DomainError("finite-difference stencil leaves the chart domain");
  const T fp = f(xp);
  const T fm = f(xm);
  T d = (fp - fm) * (0.5 / h);
  if (!is_finite(d))
    throw NumericError("non-finite field evaluation in derivative stencil");
  return d;
}

}  // namespace detail

/// Directional derivative of a field at a point. Uses the analytic derivative
/// when the field has one; otherwise an order-h^2 central difference with
/// step h = h0 * max(1, |x_dir|), refined by one Richardson extrapolation
/// step (effective order h^4) when the spec requests it.
template <class T>
T differentiate(const Chart& chart, const Field<T>& f, const Vec& x, int dir,
                const FdSpec& fd) {
  if (f.partial) {
    T d = f.partial(x, dir);
    if (!is_finite(d)) throw NumericError("non-finite analytic derivative");
    return d;
  }
  const double h = fd.h0 * std::max(1.0, std::abs(x[dir]));
  const T coarse = detail::central_difference(chart, f.eval, x, dir, h);
  if (!fd.richardson) return coarse;
  const T fine = detail::central_difference(chart, f.eval, x, dir, 0.5 * h);
  return (4.0 * fine - coarse) * (1.0 / 3.0);
}

template <class T>
T differentiate(const Chart& chart, const Field<T>& f, const Vec& x, int dir) {
  return differentiate(chart, f, x, dir, f.fd);
}

/// Quadratic vector field in frame components with analytic derivatives.
/// Deterministic in the seed; used as probe fields by verification suites.
VectorField random_polynomial_vector_field(const Chart& chart,
                                           std::uint64_t seed);

}  // namespace dgeo
