#include "dgeo/deformation.hpp"

#include <cmath>

#include "dgeo/errors.hpp"

namespace dgeo {
namespace {

// Third-order coefficient of the inverse map when the point action follows
// geodesics of the connection: the cubic Taylor term of the geodesic flow at
// unit time, symmetrized.
Tensor4 geodesic_inverse_cubic(const Chart& chart,
                               const ConnectionField& connection, const Vec& x,
                               const Mat& frame_inv) {
  const int n = chart.dimension();
  const Tensor3 G = connection.at(x);

  std::vector<Tensor3> dG(n);
  for (int s = 0; s < n; ++s)
    dG[s] = differentiate(chart, connection.coefficients(), x, s);

  // x'''(0)^u = [-d_s G^u_vr + 2 G^u_vk G^k_rs] v^v v^r v^s
  Tensor4 K(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          double sum = -dG[s](u, v, r);
          for (int k = 0; k < n; ++k) sum += 2.0 * G(u, v, k) * G(k, r, s);
          K(u, v, r, s) = sum;
        }
  K = sym_last3(K);

  // convert velocity slots to frame indices: v = h^u_m t^m
  Tensor4 c(n);
  for (int u = 0; u < n; ++u)
    for (int m = 0; m < n; ++m)
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
          double sum = 0.0;
          for (int v = 0; v < n; ++v)
            for (int r = 0; r < n; ++r)
              for (int s = 0; s < n; ++s)
                sum += K(u, v, r, s) * frame_inv(v, m) * frame_inv(r, p) *
                       frame_inv(s, q);
          c(u, m, p, q) = sum / 6.0;
        }
  return c;
}

bool is_zero(const Vec& v) {
  for (int i = 0; i < v.size(); ++i)
    if (v[i] != 0.0) return false;
  return true;
}

}  // namespace

DeformationField::DeformationField(const Chart& chart, FrameField frame,
                                   ConnectionField connection,
                                   DeltaPolicy policy)
    : chart_(&chart),
      frame_(std::move(frame)),
      connection_(std::move(connection)),
      policy_(policy) {}

DeformationJet DeformationField::jet_at(const Vec& x) const {
  const int n = chart_->dimension();
  DeformationJet jet;
  jet.x = x;
  jet.h = frame_.at(x);
  jet.gamma = connection_.at(x);
  if (policy_ == DeltaPolicy::Zero) {
    jet.delta = Tensor4(n);
    return jet;
  }

  // Invert the geodesic displacement series to get the forward cubic term.
  const Mat hinv = frame_.reciprocal_at(x);
  CubicMap inv;
  inv.A = hinv;
  inv.B = Tensor3(n);
  const Tensor3 G = jet.gamma;
  for (int u = 0; u < n; ++u)
    for (int m = 0; m < n; ++m)
      for (int p = 0; p < n; ++p) {
        double sum = 0.0;
        for (int v = 0; v < n; ++v)
          for (int r = 0; r < n; ++r)
            sum += G(u, v, r) * hinv(v, m) * hinv(r, p);
        inv.B(u, m, p) = -0.5 * sum;
      }
  inv.C = geodesic_inverse_cubic(*chart_, connection_, x, hinv);

  const CubicMap fwd = inv.inverse();
  Tensor4 delta(n);
  for (int u = 0; u < n; ++u)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double sum = 0.0;
          for (int m = 0; m < n; ++m) sum += hinv(u, m) * fwd.C(m, i, j, k);
          delta(u, i, j, k) = 6.0 * sum;
        }
  jet.delta = sym_last3(delta);
  return jet;
}

Vec DeformationField::displacement(const Vec& x, const Vec& t) const {
  if (is_zero(t)) return Vec::Zero(x.size());
  return inverse_at(x).apply(t);
}

Vec DeformationField::act(const Vec& x, const Vec& t) const {
  Vec xp = x + displacement(x, t);
  if (!chart_->contains(xp)) throw DomainError("translation leaves chart");
  return xp;
}

Tensor3 DeformationField::gamma_at(const Vec& x) const {
  const int n = chart_->dimension();
  const Mat h = frame_.at(x);
  const Mat hinv = frame_.reciprocal_at(x);
  const Tensor3 G = connection_.at(x);

  std::vector<Mat> dhinv(n);
  for (int v = 0; v < n; ++v)
    dhinv[v] = differentiate(*chart_, frame_.reciprocal(), x, v);

  Tensor3 gamma(n);
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k)
      for (int p = 0; p < n; ++p) {
        double sum = 0.0;
        for (int u = 0; u < n; ++u) {
          double inner = 0.0;
          for (int v = 0; v < n; ++v) {
            inner += dhinv[v](u, p) * hinv(v, k);
            for (int r = 0; r < n; ++r)
              inner += G(u, v, r) * hinv(v, k) * hinv(r, p);
          }
          sum += h(m, u) * inner;
        }
        gamma(m, k, p) = sum;
      }
  return gamma;
}

Field<Tensor3> DeformationField::gamma_field() const {
  Field<Tensor3> f;
  const DeformationField self = *this;
  f.eval = [self](const Vec& x) { return self.gamma_at(x); };
  f.fd = chart_->fd().second();
  return f;
}

GroupElement zero_element(int dimension) {
  GroupElement g;
  g.t.eval = [dimension](const Vec&) { return Vec(Vec::Zero(dimension)); };
  g.t.shape.indices = {IndexKind::FrameUpper};
  return g;
}

GroupElement constant_element(Vec value) {
  GroupElement g;
  g.t.eval = [value](const Vec&) { return value; };
  g.t.shape.indices = {IndexKind::FrameUpper};
  return g;
}

DeformationField build_deformation(const Chart& chart, FrameField frame,
                                   ConnectionField connection,
                                   DeltaPolicy policy) {
  return DeformationField(chart, std::move(frame), std::move(connection),
                          policy);
}

DeformationField metric_deformation(const MetricField& metric,
                                    DeltaPolicy policy) {
  return DeformationField(metric.chart(), orthonormal_frame_field(metric),
                          christoffel_field(metric), policy);
}

GroupProduct multiply_values(const DeformationField& def, const Vec& x,
                             const Vec& t_at_x, const Vec& tp_at_xprime) {
  GroupProduct out;
  if (is_zero(t_at_x)) {
    // left identity: x' = x, product is the second factor at x
    out.x_prime = x;
    out.value = tp_at_xprime;
    return out;
  }
  const DeformationJet jet_x = def.jet_at(x);
  const CubicMap fwd_x = jet_x.to_cubic();
  const CubicMap inv_x = fwd_x.inverse();
  const Vec u = inv_x.apply(t_at_x);
  out.x_prime = x + u;
  if (!def.chart().contains(out.x_prime))
    throw DomainError("translation leaves chart");
  if (is_zero(tp_at_xprime)) {
    out.value = t_at_x;  // right identity, exactly
    return out;
  }
  const Vec up = def.inverse_at(out.x_prime).apply(tp_at_xprime);
  out.value = fwd_x.apply(u + up);
  return out;
}

GroupProduct multiply(const DeformationField& def, const GroupElement& t,
                      const GroupElement& tp, const Vec& x) {
  const Vec tv = t(x);
  if (is_zero(tv)) {
    GroupProduct out;
    out.x_prime = x;
    out.value = tp(x);
    return out;
  }
  const Vec u = def.inverse_at(x).apply(tv);
  Vec xp = x + u;
  if (!def.chart().contains(xp)) throw DomainError("translation leaves chart");
  GroupProduct out = multiply_values(def, x, tv, tp(xp));
  return out;
}

GroupElement multiply(const DeformationField& def, const GroupElement& t,
                      const GroupElement& tp) {
  GroupElement prod;
  const DeformationField d = def;
  const GroupElement a = t;
  const GroupElement b = tp;
  prod.t.eval = [d, a, b](const Vec& x) { return multiply(d, a, b, x).value; };
  prod.t.shape.indices = {IndexKind::FrameUpper};
  return prod;
}

ExpansionCoefficients extract_expansion(const DeformationField& def,
                                        const Vec& x) {
  const Chart& chart = def.chart();
  const int n = chart.dimension();
  const Mat h = def.frame_at(x);
  const Mat hinv = def.frame_inv_at(x);
  const Tensor3 G = def.connection().at(x);
  const DeformationJet jet = def.jet_at(x);

  ExpansionCoefficients out;
  out.gamma = def.gamma_at(x);

  std::vector<Tensor3> dG(n);
  for (int v = 0; v < n; ++v)
    dG[v] = differentiate(chart, def.connection().coefficients(), x, v);

  // rho^m_lkn = h^m_u [ D^u_lkn - G^u_vs h^v_n G^s_kl(frame)
  //                     - h^v_n d_v G^u_kl(frame) ]
  out.rho = Tensor4(n);
  for (int m = 0; m < n; ++m)
    for (int l = 0; l < n; ++l)
      for (int k = 0; k < n; ++k)
        for (int p = 0; p < n; ++p) {
          double sum = 0.0;
          for (int u = 0; u < n; ++u) {
            double inner = 0.0;
            for (int v = 0; v < n; ++v)
              for (int r = 0; r < n; ++r)
                for (int s = 0; s < n; ++s)
                  inner += jet.delta(u, v, r, s) * hinv(v, l) * hinv(r, k) *
                           hinv(s, p);
            for (int v = 0; v < n; ++v)
              for (int s = 0; s < n; ++s)
                for (int kk = 0; kk < n; ++kk)
                  for (int ll = 0; ll < n; ++ll)
                    inner -= G(u, v, s) * hinv(v, p) * G(s, kk, ll) *
                             hinv(kk, k) * hinv(ll, l);
            for (int v = 0; v < n; ++v)
              for (int kk = 0; kk < n; ++kk)
                for (int ll = 0; ll < n; ++ll)
                  inner -=
                      hinv(v, p) * dG[v](u, kk, ll) * hinv(kk, k) * hinv(ll, l);
            sum += h(m, u) * inner;
          }
          out.rho(m, l, k, p) = sum;
        }

  out.F = Tensor3(n);
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k)
      for (int p = 0; p < n; ++p)
        out.F(m, k, p) = out.gamma(m, k, p) - out.gamma(m, p, k);

  out.R = Tensor4(n);
  for (int m = 0; m < n; ++m)
    for (int l = 0; l < n; ++l)
      for (int k = 0; k < n; ++k)
        for (int p = 0; p < n; ++p)
          out.R(m, l, k, p) = out.rho(m, l, k, p) - out.rho(m, l, p, k);
  return out;
}

DeformationJet compose_deformations(const DeformationField& def1,
                                    const DeformationField& def2,
                                    const Vec& x) {
  return compose_jets(def1.jet_at(x), def2.jet_at(x));
}

}  // namespace dgeo
