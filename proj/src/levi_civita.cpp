#include "dgeo/levi_civita.hpp"

#include <Eigen/Cholesky>
#include <cmath>

#include "dgeo/errors.hpp"

namespace dgeo {

Tensor3 christoffel(const MetricField& metric, const Vec& x) {
  const Chart& chart = metric.chart();
  const int n = chart.dimension();
  const Mat ginv = metric.inverse_at(x);

  std::vector<Mat> dg(n);
  for (int s = 0; s < n; ++s)
    dg[s] = differentiate(chart, metric.components(), x, s);

  Tensor3 G(n);
  for (int r = 0; r < n; ++r)
    for (int u = 0; u < n; ++u)
      for (int v = u; v < n; ++v) {
        double sum = 0.0;
        for (int s = 0; s < n; ++s)
          sum += ginv(r, s) * (dg[u](v, s) + dg[v](u, s) - dg[s](u, v));
        G(r, u, v) = 0.5 * sum;
        G(r, v, u) = G(r, u, v);
      }
  return G;
}

ConnectionField christoffel_field(const MetricField& metric) {
  const Chart& chart = metric.chart();
  Field<Tensor3> f;
  const MetricField m = metric;
  f.eval = [m](const Vec& x) { return christoffel(m, x); };
  f.fd = chart.fd().second();
  return ConnectionField(chart, std::move(f));
}

Tensor4 riemann(const ConnectionField& connection, const Vec& x) {
  const Chart& chart = connection.chart();
  const int n = chart.dimension();
  const Tensor3 G = connection.at(x);

  std::vector<Tensor3> dG(n);
  for (int s = 0; s < n; ++s)
    dG[s] = differentiate(chart, connection.coefficients(), x, s);

  Tensor4 R(n);
  for (int u = 0; u < n; ++u)
    for (int l = 0; l < n; ++l)
      for (int k = 0; k < n; ++k)
        for (int v = 0; v < n; ++v) {
          double sum = dG[k](u, v, l) - dG[v](u, k, l);
          for (int s = 0; s < n; ++s)
            sum += G(u, k, s) * G(s, v, l) - G(u, v, s) * G(s, k, l);
          R(u, l, k, v) = sum;
        }
  return R;
}

Mat orthonormal_frame(const MetricField& metric, const Vec& x) {
  const Mat g = metric.at(x);
  const int n = static_cast<int>(g.rows());

  // Factor the index-reversed metric so the result is lower-triangular with
  // a positive diagonal in the original ordering.
  Mat rev(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rev(i, j) = g(n - 1 - i, n - 1 - j);

  Eigen::LLT<Mat> llt(rev);
  if (llt.info() != Eigen::Success)
    throw NumericError("metric is not positive-definite");
  const Mat L = llt.matrixL();

  Mat h(n, n);
  for (int m = 0; m < n; ++m)
    for (int u = 0; u < n; ++u) h(m, u) = L(n - 1 - u, n - 1 - m);
  return h;
}

FrameField orthonormal_frame_field(const MetricField& metric) {
  const Chart& chart = metric.chart();
  Field<Mat> f;
  const MetricField m = metric;
  f.eval = [m](const Vec& x) { return orthonormal_frame(m, x); };
  f.fd = chart.fd().first();
  f.shape.indices = {IndexKind::FrameUpper, IndexKind::CoordLower};
  return FrameField(chart, std::move(f));
}

Anholonomity anholonomity(const FrameField& frame, const Vec& x) {
  const Chart& chart = frame.chart();
  const int n = chart.dimension();
  const Mat hinv = frame.reciprocal_at(x);

  std::vector<Mat> dh(n);
  for (int u = 0; u < n; ++u)
    dh[u] = differentiate(chart, frame.forward(), x, u);

  Anholonomity out{Tensor3(n), Tensor3(n)};
  for (int m = 0; m < n; ++m)
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        out.coord(m, u, v) = -(dh[u](m, v) - dh[v](m, u));
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k)
      for (int l = k + 1; l < n; ++l) {
        double sum = 0.0;
        for (int u = 0; u < n; ++u)
          for (int v = 0; v < n; ++v)
            sum += hinv(u, k) * hinv(v, l) * out.coord(m, u, v);
        out.frame(m, k, l) = sum;
        out.frame(m, l, k) = -sum;
      }
  return out;
}

Tensor3 metricity_residual(const MetricField& metric,
                           const ConnectionField& connection, const Vec& x) {
  const Chart& chart = metric.chart();
  const int n = chart.dimension();
  const Mat g = metric.at(x);
  const Tensor3 G = connection.at(x);

  // lowered connection G._uvs = g_ur G^r_vs
  Tensor3 lowered(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      for (int s = 0; s < n; ++s) {
        double sum = 0.0;
        for (int r = 0; r < n; ++r) sum += g(u, r) * G(r, v, s);
        lowered(u, v, s) = sum;
      }

  std::vector<Mat> dg(n);
  for (int s = 0; s < n; ++s)
    dg[s] = differentiate(chart, metric.components(), x, s);

  Tensor3 res(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      for (int s = 0; s < n; ++s)
        res(u, v, s) = dg[s](u, v) - lowered(u, v, s) - lowered(v, u, s);
  return res;
}

}  // namespace dgeo
