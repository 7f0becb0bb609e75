#pragma once

#include "dgeo/field.hpp"

namespace dgeo {

/// Symmetric, nondegenerate metric components g_uv over a chart.
class MetricField {
 public:
  MetricField() = default;
  MetricField(const Chart& chart, Field<Mat> components);

  const Chart& chart() const { return *chart_; }
  const Field<Mat>& components() const { return g_; }

  Mat at(const Vec& x) const;
  Mat inverse_at(const Vec& x) const;
  double det_at(const Vec& x) const;

  /// Throws NumericError unless g is symmetric, finite and nondegenerate
  /// (|det g| > 1e-12) at x.
  void validate_at(const Vec& x) const;

 private:
  const Chart* chart_ = nullptr;
  Field<Mat> g_;
};

/// An invertible frame h^m_u (rows: frame index, columns: coordinate index)
/// together with its reciprocal h^u_m.
class FrameField {
 public:
  FrameField() = default;
  FrameField(const Chart& chart, Field<Mat> forward);

  const Chart& chart() const { return *chart_; }
  const Field<Mat>& forward() const { return fwd_; }
  const Field<Mat>& reciprocal() const { return inv_; }

  Mat at(const Vec& x) const { return fwd_.eval(x); }
  Mat reciprocal_at(const Vec& x) const { return inv_.eval(x); }

 private:
  const Chart* chart_ = nullptr;
  Field<Mat> fwd_;
  Field<Mat> inv_;
};

/// Torsion-free affine connection coefficients G^u_vr, stored symmetric in
/// the lower pair.
class ConnectionField {
 public:
  ConnectionField() = default;
  ConnectionField(const Chart& chart, Field<Tensor3> coefficients);

  const Chart& chart() const { return *chart_; }
  const Field<Tensor3>& coefficients() const { return gamma_; }

  Tensor3 at(const Vec& x) const { return gamma_.eval(x); }

 private:
  const Chart* chart_ = nullptr;
  Field<Tensor3> gamma_;
};

}  // namespace dgeo
