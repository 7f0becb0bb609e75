#pragma once

#include <functional>
#include <vector>

#include "dgeo/deformation.hpp"

namespace dgeo {

/// Infinitesimal transport operator: the derivative of the group product in
/// its second factor at zero, taking frame components at x' to frame
/// components at x.
struct TransportMatrix {
  Mat lambda;
  Vec x;        // target point
  Vec x_prime;  // source point
};

/// lambda(x, t) computed from jet algebra: the Jacobian of the forward map at
/// the displaced parameter times the reciprocal frame at x'. Exactly the
/// identity at t = 0.
TransportMatrix lambda_matrix(const DeformationField& def, const Vec& x,
                              const Vec& t);

/// Transport of frame components from x' to x: lambda(x, t) * tau.
Vec transport_vector(const DeformationField& def, const Vec& x, const Vec& t,
                     const Vec& tau_frame_at_xprime);

/// Coordinate-index transport rule; takes and returns coordinate components.
Vec transport_vector_coords(const DeformationField& def, const Vec& x,
                            const Vec& t, const Vec& tau_coord_at_xprime);

/// Covariant derivative of a coordinate-component vector field:
///   (D_v tau)^u = d_v tau^u + G^u_sv tau^s.
Vec covariant_derivative(const ConnectionField& connection,
                         const Field<Vec>& tau, const Vec& x, int direction);

/// A piecewise-smooth curve on the chart, parametrized over [0, 1] with
/// per-segment weights fixing the sub-interval split.
struct CurveSegment {
  std::function<Vec(double)> pos;            // s in [0, 1]
  std::function<Vec(double)> vel;            // optional; FD of pos otherwise
  double weight = 1.0;
};

class Curve {
 public:
  Curve() = default;
  explicit Curve(std::vector<CurveSegment> segments);

  static Curve polyline(const std::vector<Vec>& points, bool close = false);

  const std::vector<CurveSegment>& segments() const { return segments_; }
  double total_weight() const { return total_weight_; }

  Vec start() const;
  Vec end() const;
  bool closed(double tol = 1e-12) const;

 private:
  std::vector<CurveSegment> segments_;
  double total_weight_ = 0.0;
};

/// Metric length of the curve by composite quadrature over `steps` samples.
double curve_length(const MetricField& metric, const Curve& curve, int steps);

/// Net transport matrix along the curve in frame components: RK4 on
///   d tau^m / ds = -gamma^m_kn v^k(s) tau^n,  v^k = h^k_u dx^u/ds,
/// marching forward along the curve. Throws CurveError when the curve leaves
/// the chart; zero-length segments are skipped.
Mat transport_matrix_along_curve(const DeformationField& def,
                                 const Curve& curve, int steps);

/// Transport of an initial frame-component vector along the curve.
Vec transport_along_curve(const DeformationField& def, const Curve& curve,
                          const Vec& tau0, int steps);

/// Net transport around a closed loop; throws CurveError when the endpoints
/// do not coincide.
Mat holonomy(const DeformationField& def, const Curve& loop, int steps);

/// Rotation angle of a 2x2 transport matrix.
double rotation_angle(const Mat& m);

}  // namespace dgeo
