#pragma once

#include "dgeo/metric.hpp"

namespace dgeo {

/// Levi-Civita connection coefficients at a point:
///   G^r_uv = 1/2 g^rs (d_u g_vs + d_v g_us - d_s g_uv),
/// symmetric in the lower pair by construction.
Tensor3 christoffel(const MetricField& metric, const Vec& x);

/// The Levi-Civita connection as a field over the chart. Its own derivatives
/// are nested second derivatives of the metric, so the field carries the
/// chart's second-level finite-difference step.
ConnectionField christoffel_field(const MetricField& metric);

/// Curvature tensor of an affine connection,
///   R^u_lkv = d_k G^u_vl - d_v G^u_kl + G^u_ks G^s_vl - G^u_vs G^s_kl,
/// returned with slots (upper, lower, skew1, skew2); antisymmetric in the
/// last pair bit-exactly.
Tensor4 riemann(const ConnectionField& connection, const Vec& x);

/// Unique lower-triangular positive-diagonal factor h^m_u of a
/// positive-definite metric: sum_m h^m_u h^m_v = g_uv.
Mat orthonormal_frame(const MetricField& metric, const Vec& x);

/// The factor above as a frame field.
FrameField orthonormal_frame_field(const MetricField& metric);

struct Anholonomity {
  Tensor3 coord;  // F^n_uv = -(d_u h^n_v - d_v h^n_u)
  Tensor3 frame;  // F^n_kl = h^u_k h^v_l F^n_uv
};

/// Commutation failure of the frame, in both index conventions; both tensors
/// are antisymmetric in the last pair bit-exactly.
Anholonomity anholonomity(const FrameField& frame, const Vec& x);

/// d_s g_uv - G._uvs - G._vus with the connection's upper index lowered by
/// the metric. Zero for the Levi-Civita connection. Slots: (u, v, s).
Tensor3 metricity_residual(const MetricField& metric,
                           const ConnectionField& connection, const Vec& x);

}  // namespace dgeo
