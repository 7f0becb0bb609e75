#include "dgeo/transport.hpp"

#include <cmath>

#include "dgeo/errors.hpp"

namespace dgeo {
namespace {

bool is_zero(const Vec& v) {
  for (int i = 0; i < v.size(); ++i)
    if (v[i] != 0.0) return false;
  return true;
}

Vec segment_velocity(const CurveSegment& seg, double s) {
  if (seg.vel) return seg.vel(s);
  const double h = 1e-6;
  const double a = std::max(0.0, s - h);
  const double b = std::min(1.0, s + h);
  return (seg.pos(b) - seg.pos(a)) / (b - a);
}

}  // namespace

TransportMatrix lambda_matrix(const DeformationField& def, const Vec& x,
                              const Vec& t) {
  const int n = def.chart().dimension();
  TransportMatrix out;
  out.x = x;
  if (is_zero(t)) {
    out.x_prime = x;
    out.lambda = Mat::Identity(n, n);
    return out;
  }
  const CubicMap fwd = def.forward_at(x);
  const Vec u = fwd.inverse().apply(t);
  out.x_prime = x + u;
  if (!def.chart().contains(out.x_prime))
    throw DomainError("translation leaves chart");
  out.lambda = fwd.jacobian(u) * def.frame_inv_at(out.x_prime);
  return out;
}

Vec transport_vector(const DeformationField& def, const Vec& x, const Vec& t,
                     const Vec& tau_frame_at_xprime) {
  return lambda_matrix(def, x, t).lambda * tau_frame_at_xprime;
}

Vec transport_vector_coords(const DeformationField& def, const Vec& x,
                            const Vec& t, const Vec& tau_coord_at_xprime) {
  if (is_zero(t)) return tau_coord_at_xprime;
  const CubicMap fwd = def.forward_at(x);
  const Vec u = fwd.inverse().apply(t);
  const Vec xp = x + u;
  if (!def.chart().contains(xp))
    throw DomainError("translation leaves chart");
  return def.frame_inv_at(x) * (fwd.jacobian(u) * tau_coord_at_xprime);
}

Vec covariant_derivative(const ConnectionField& connection,
                         const Field<Vec>& tau, const Vec& x, int direction) {
  const Chart& chart = connection.chart();
  const int n = chart.dimension();
  const Tensor3 G = connection.at(x);
  const Vec dtau = differentiate(chart, tau, x, direction);
  const Vec tv = tau.eval(x);
  Vec out(n);
  for (int u = 0; u < n; ++u) {
    double sum = dtau[u];
    for (int s = 0; s < n; ++s) sum += G(u, s, direction) * tv[s];
    out[u] = sum;
  }
  return out;
}

Curve::Curve(std::vector<CurveSegment> segments)
    : segments_(std::move(segments)) {
  for (const CurveSegment& s : segments_) {
    if (s.weight < 0.0) throw CurveError("segment weights must be >= 0");
    total_weight_ += s.weight;
  }
  if (segments_.empty() || total_weight_ <= 0.0)
    throw CurveError("curve needs at least one segment with positive weight");
}

Curve Curve::polyline(const std::vector<Vec>& points, bool close) {
  if (points.size() < 2) throw CurveError("polyline needs at least two points");
  std::vector<Vec> pts = points;
  if (close && (pts.back() - pts.front()).norm() > 0.0)
    pts.push_back(pts.front());
  std::vector<CurveSegment> segs;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Vec a = pts[i];
    const Vec b = pts[i + 1];
    CurveSegment seg;
    seg.pos = [a, b](double s) { return Vec(a + s * (b - a)); };
    seg.vel = [a, b](double) { return Vec(b - a); };
    seg.weight = 1.0;
    segs.push_back(std::move(seg));
  }
  return Curve(std::move(segs));
}

Vec Curve::start() const { return segments_.front().pos(0.0); }
Vec Curve::end() const { return segments_.back().pos(1.0); }

bool Curve::closed(double tol) const {
  return (end() - start()).lpNorm<Eigen::Infinity>() <= tol;
}

double curve_length(const MetricField& metric, const Curve& curve, int steps) {
  double len = 0.0;
  for (const CurveSegment& seg : curve.segments()) {
    const int k = std::max(1, static_cast<int>(std::lround(
                                  steps * seg.weight / curve.total_weight())));
    const double h = 1.0 / k;
    for (int i = 0; i < k; ++i) {
      const double s = (i + 0.5) * h;
      const Vec x = seg.pos(s);
      const Vec v = segment_velocity(seg, s);
      const double speed2 = v.dot(metric.at(x) * v);
      len += std::sqrt(std::max(0.0, speed2)) * h;
    }
  }
  return len;
}

Mat transport_matrix_along_curve(const DeformationField& def,
                                 const Curve& curve, int steps) {
  if (steps < 1) throw CurveError("transport needs steps >= 1");
  const Chart& chart = def.chart();
  const int n = chart.dimension();

  const auto derivative = [&](const Vec& x, const Vec& xdot, const Mat& M) {
    if (!chart.contains(x)) throw CurveError("curve exits chart domain");
    const Mat h = def.frame_at(x);
    const Tensor3 gamma = def.gamma_at(x);
    const Vec v = h * xdot;  // frame components of the velocity
    Mat A = Mat::Zero(n, n);
    for (int m = 0; m < n; ++m)
      for (int p = 0; p < n; ++p) {
        double sum = 0.0;
        for (int k = 0; k < n; ++k) sum += gamma(m, k, p) * v[k];
        A(m, p) = -sum;
      }
    return Mat(A * M);
  };

  Mat M = Mat::Identity(n, n);
  for (const CurveSegment& seg : curve.segments()) {
    const int k = std::max(1, static_cast<int>(std::lround(
                                  steps * seg.weight / curve.total_weight())));
    const double h = 1.0 / k;

    // degenerate segments contribute nothing
    if ((seg.pos(1.0) - seg.pos(0.0)).norm() == 0.0 && !seg.vel) continue;

    for (int i = 0; i < k; ++i) {
      const double s0 = i * h;
      const double s1 = s0 + 0.5 * h;
      const double s2 = s0 + h;
      const Vec x0 = seg.pos(s0), x1 = seg.pos(s1), x2 = seg.pos(s2);
      const Vec v0 = segment_velocity(seg, s0);
      const Vec v1 = segment_velocity(seg, s1);
      const Vec v2 = segment_velocity(seg, s2);

      const Mat k1 = derivative(x0, v0, M);
      const Mat k2 = derivative(x1, v1, M + (0.5 * h) * k1);
      const Mat k3 = derivative(x1, v1, M + (0.5 * h) * k2);
      const Mat k4 = derivative(x2, v2, M + h * k3);
      M += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
  }
  return M;
}

Vec transport_along_curve(const DeformationField& def, const Curve& curve,
                          const Vec& tau0, int steps) {
  return transport_matrix_along_curve(def, curve, steps) * tau0;
}

Mat holonomy(const DeformationField& def, const Curve& loop, int steps) {
  if (!loop.closed())
    throw CurveError("holonomy requires a closed curve");
  return transport_matrix_along_curve(def, loop, steps);
}

double rotation_angle(const Mat& m) {
  return std::atan2(m(1, 0), m(0, 0));
}

}  // namespace dgeo
