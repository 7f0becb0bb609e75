#pragma once

#include "dgeo/jet.hpp"
#include "dgeo/levi_civita.hpp"
#include "dgeo/metric.hpp"

namespace dgeo {

/// Third-order coefficient policy for deformation jets. The skew parts of the
/// expansion coefficients do not depend on it; "Geodesic" makes the induced
/// point action follow geodesics of the connection, "Zero" drops the cubic
/// term.
enum class DeltaPolicy { Geodesic, Zero };

/// Frame- and connection-valued expansion data extracted from the group
/// multiplication law at a point. All indices are frame indices; F and R are
/// the skew parts of gamma and rho in their last pair, bit-exactly.
struct ExpansionCoefficients {
  Tensor3 gamma;  // gamma^m_kn  (k: direction, n: vector slot)
  Tensor4 rho;    // rho^m_lkn
  Tensor3 F;      // F^m_kn   = gamma^m_kn - gamma^m_nk
  Tensor4 R;      // R^m_lkn  = rho^m_lkn - rho^m_lnk
};

/// A family of deformation jets over a chart, assembled from a frame field,
/// a connection field and a third-order policy. Pure and immutable.
class DeformationField {
 public:
  DeformationField() = default;
  DeformationField(const Chart& chart, FrameField frame,
                   ConnectionField connection,
                   DeltaPolicy policy = DeltaPolicy::Geodesic);

  const Chart& chart() const { return *chart_; }
  const FrameField& frame() const { return frame_; }
  const ConnectionField& connection() const { return connection_; }
  DeltaPolicy policy() const { return policy_; }

  Mat frame_at(const Vec& x) const { return frame_.at(x); }
  Mat frame_inv_at(const Vec& x) const { return frame_.reciprocal_at(x); }

  /// Full jet including the policy's third-order coefficient.
  DeformationJet jet_at(const Vec& x) const;

  CubicMap forward_at(const Vec& x) const { return jet_at(x).to_cubic(); }
  CubicMap inverse_at(const Vec& x) const { return jet_at(x).to_cubic().inverse(); }

  /// Coordinate displacement of the point action for parameter value t.
  Vec displacement(const Vec& x, const Vec& t) const;

  /// Point action x' = x + displacement; throws DomainError when the image
  /// leaves the margin-shrunk chart ("translation leaves chart").
  Vec act(const Vec& x, const Vec& t) const;

  /// Frame-basis connection coefficients gamma^m_kn of the second-order
  /// expansion of the multiplication law.
  Tensor3 gamma_at(const Vec& x) const;

  /// gamma as a field; carries the second-level finite-difference step.
  Field<Tensor3> gamma_field() const;

 private:
  const Chart* chart_ = nullptr;
  FrameField frame_;
  ConnectionField connection_;
  DeltaPolicy policy_ = DeltaPolicy::Geodesic;
};

/// A group element of the deformed diffeomorphism group: a translation field
/// with frame-index components.
struct GroupElement {
  Field<Vec> t;
  Vec operator()(const Vec& x) const { return t.eval(x); }
};

GroupElement zero_element(int dimension);
GroupElement constant_element(Vec value);

/// Builds the deformation family from its frame and connection data.
DeformationField build_deformation(const Chart& chart, FrameField frame,
                                   ConnectionField connection,
                                   DeltaPolicy policy = DeltaPolicy::Geodesic);

/// Convenience: orthonormal frame + Levi-Civita connection of a metric.
DeformationField metric_deformation(const MetricField& metric,
                                    DeltaPolicy policy = DeltaPolicy::Geodesic);

struct GroupProduct {
  Vec value;    // product parameter at x
  Vec x_prime;  // image of x under the first factor
};

/// Product of parameter values: phi(x, t, t') evaluated through the
/// order-three jets at x and x'. Zero factors short-circuit so the group
/// identities hold exactly.
GroupProduct multiply_values(const DeformationField& def, const Vec& x,
                             const Vec& t_at_x, const Vec& tp_at_xprime);

/// Product of two group elements at a point.
GroupProduct multiply(const DeformationField& def, const GroupElement& t,
                      const GroupElement& tp, const Vec& x);

/// Product as a group element (lazy field over the chart).
GroupElement multiply(const DeformationField& def, const GroupElement& t,
                      const GroupElement& tp);

/// Expansion coefficients of the multiplication law at a point.
ExpansionCoefficients extract_expansion(const DeformationField& def,
                                        const Vec& x);

/// Jet of applying `def2`'s map first and `def1`'s second, at one point.
DeformationJet compose_deformations(const DeformationField& def1,
                                    const DeformationField& def2, const Vec& x);

}  // namespace dgeo
