#include "dgeo/dt_group.hpp"

#include <cmath>
#include <random>

#include "dgeo/errors.hpp"

namespace dgeo {
namespace {

bool is_zero(const Vec& v) {
  for (int i = 0; i < v.size(); ++i)
    if (v[i] != 0.0) return false;
  return true;
}

bool is_identity(const Mat& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m(i, j) != (i == j ? 1.0 : 0.0)) return false;
  return true;
}

Mat checked_inverse(const Mat& m, const char* what) {
  if (std::abs(m.determinant()) <= 1e-14)
    throw NumericError(std::string("singular matrix factor in ") + what);
  return m.inverse();
}

}  // namespace

DTElement dt_identity(int n) {
  DTElement g;
  g.t.eval = [n](const Vec&) { return Vec(Vec::Zero(n)); };
  g.L.eval = [n](const Vec&) { return Mat(Mat::Identity(n, n)); };
  return g;
}

DTElement dt_pure_translation(GroupElement t, int n) {
  DTElement g;
  g.t = std::move(t.t);
  g.L.eval = [n](const Vec&) { return Mat(Mat::Identity(n, n)); };
  return g;
}

DTElement dt_pure_gauge(Field<Mat> L, int n) {
  DTElement g;
  g.t.eval = [n](const Vec&) { return Vec(Vec::Zero(n)); };
  g.L = std::move(L);
  return g;
}

DTProduct dt_multiply(const DeformationField& def, const DTElement& g,
                      const DTElement& gp, const Vec& x) {
  const Vec tv = g.t.eval(x);
  const Mat Lv = g.L.eval(x);

  DTProduct out;
  if (is_zero(tv) && is_identity(Lv)) {
    out.x_prime = x;
    out.value = {gp.t.eval(x), gp.L.eval(x)};
    return out;
  }

  const Vec xp = def.act(x, tv);
  const Vec tpv = gp.t.eval(xp);
  const Mat Lpv = gp.L.eval(xp);
  out.x_prime = xp;

  if (is_zero(tpv) && is_identity(Lpv)) {
    out.value = {tv, Lv};
    return out;
  }

  const Vec phi = multiply_values(def, x, tv, tpv).value;
  const Mat lam1 = lambda_matrix(def, x, tv).lambda;
  const Mat lam2 = lambda_matrix(def, xp, tpv).lambda;
  const Mat lam3 = lambda_matrix(def, x, phi).lambda;
  out.value.t = phi;
  out.value.L =
      Lv * lam1 * Lpv * lam2 * checked_inverse(lam3, "dt product");
  return out;
}

DTElement dt_multiply(const DeformationField& def, const DTElement& g,
                      const DTElement& gp) {
  DTElement prod;
  const DeformationField d = def;
  const DTElement a = g;
  const DTElement b = gp;
  prod.t.eval = [d, a, b](const Vec& x) { return dt_multiply(d, a, b, x).value.t; };
  prod.L.eval = [d, a, b](const Vec& x) { return dt_multiply(d, a, b, x).value.L; };
  return prod;
}

InverseTranslation inverse_translation(const DeformationField& def,
                                       const Field<Vec>& t, const Vec& x) {
  const Chart& chart = def.chart();
  Vec u = -def.displacement(x, t.eval(x));
  for (int iter = 0; iter < 80; ++iter) {
    Vec xt = x + u;
    if (!chart.contains(xt))
      throw DomainError("inverse translation leaves chart");
    Vec next = -def.displacement(xt, t.eval(xt));
    const double delta = (next - u).lpNorm<Eigen::Infinity>();
    u = next;
    if (delta <= 1e-14) {
      InverseTranslation out;
      out.x_tilde = x + u;
      out.t_inv = jet_apply(def.jet_at(x), u);
      return out;
    }
  }
  throw NumericError("inverse translation fixed point did not converge");
}

DTElement dt_inverse(const DeformationField& def, const DTElement& g) {
  DTElement inv;
  const DeformationField d = def;
  const DTElement e = g;
  inv.t.eval = [d, e](const Vec& x) {
    return inverse_translation(d, e.t, x).t_inv;
  };
  inv.L.eval = [d, e](const Vec& x) {
    const InverseTranslation it = inverse_translation(d, e.t, x);
    const Mat lam_inv = lambda_matrix(d, x, it.t_inv).lambda;
    const Mat lam_fwd = lambda_matrix(d, it.x_tilde, e.t.eval(it.x_tilde)).lambda;
    const Mat prod = lam_inv * e.L.eval(it.x_tilde) * lam_fwd;
    return checked_inverse(prod, "dt inverse");
  };
  return inv;
}

Vec dt_action_vector(const DeformationField& def, const DTElement& g,
                     const Field<Vec>& tau_frame, const Vec& x) {
  const Vec tv = g.t.eval(x);
  const Vec xp = def.act(x, tv);
  return g.L.eval(x) * (lambda_matrix(def, x, tv).lambda * tau_frame.eval(xp));
}

Mat dt_action_frame(const DeformationField& def, const DTElement& g,
                    const FrameField& frame, const Vec& x) {
  const InverseTranslation it = inverse_translation(def, g.t, x);
  const Mat lam = lambda_matrix(def, it.x_tilde, g.t.eval(it.x_tilde)).lambda;
  const Mat Linv = checked_inverse(g.L.eval(it.x_tilde), "frame action");
  return frame.reciprocal_at(x) * checked_inverse(lam, "frame action") * Linv;
}

DTStructure dt_structure(const DeformationField& def, const Vec& x) {
  const Chart& chart = def.chart();
  const int n = chart.dimension();
  const Mat h = def.frame_at(x);
  const Mat hinv = def.frame_inv_at(x);

  std::vector<Mat> dhinv(n);
  for (int v = 0; v < n; ++v)
    dhinv[v] = differentiate(chart, def.frame().reciprocal(), x, v);

  DTStructure out;
  out.translation = Tensor3(n);
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k)
      for (int l = k + 1; l < n; ++l) {
        double sum = 0.0;
        for (int u = 0; u < n; ++u)
          for (int v = 0; v < n; ++v)
            sum += h(m, u) *
                   (hinv(v, k) * dhinv[v](u, l) - hinv(v, l) * dhinv[v](u, k));
        out.translation(m, k, l) = sum;
        out.translation(m, l, k) = -sum;
      }

  const Tensor3 gamma = def.gamma_at(x);
  const Field<Tensor3> gfield = def.gamma_field();
  std::vector<Tensor3> dgamma(n);
  for (int s = 0; s < n; ++s) dgamma[s] = differentiate(chart, gfield, x, s);

  out.gauge = Tensor4(n);
  for (int m = 0; m < n; ++m)
    for (int p = 0; p < n; ++p)
      for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          double sum = 0.0;
          for (int s = 0; s < n; ++s) {
            sum -= gamma(m, s, p) * out.translation(s, k, l);
            sum += gamma(m, k, s) * gamma(s, l, p) -
                   gamma(m, l, s) * gamma(s, k, p);
          }
          for (int v = 0; v < n; ++v)
            sum += hinv(v, k) * dgamma[v](m, l, p) -
                   hinv(v, l) * dgamma[v](m, k, p);
          out.gauge(m, p, k, l) = sum;
          out.gauge(m, p, l, k) = -sum;
        }
  return out;
}

Vec frame_covariant_derivative(const DeformationField& def,
                               const Field<Vec>& tau_frame, const Vec& x,
                               int k) {
  const Chart& chart = def.chart();
  const int n = chart.dimension();
  const Mat hinv = def.frame_inv_at(x);
  const Tensor3 gamma = def.gamma_at(x);
  const Vec tv = tau_frame.eval(x);

  Vec xk = Vec::Zero(n);
  for (int v = 0; v < n; ++v) {
    if (hinv(v, k) == 0.0) continue;
    xk += hinv(v, k) * differentiate(chart, tau_frame, x, v);
  }
  for (int m = 0; m < n; ++m) {
    double sum = 0.0;
    for (int p = 0; p < n; ++p) sum += gamma(m, k, p) * tv[p];
    xk[m] += sum;
  }
  return xk;
}

double commutator_residual(const DeformationField& def, const Vec& x, int k,
                           int l, const std::vector<Field<Vec>>& probes) {
  const Chart& chart = def.chart();
  const int n = chart.dimension();
  const DTStructure st = dt_structure(def, x);
  const DeformationField d = def;

  double worst = 0.0;
  for (const Field<Vec>& tau : probes) {
    auto nabla_field = [&](int dir) {
      Field<Vec> w;
      const Field<Vec> probe = tau;
      w.eval = [d, probe, dir](const Vec& y) {
        return frame_covariant_derivative(d, probe, y, dir);
      };
      w.fd = chart.fd().second();
      return w;
    };
    const Field<Vec> wk = nabla_field(k);
    const Field<Vec> wl = nabla_field(l);

    const Vec lhs = frame_covariant_derivative(def, wl, x, k) -
                    frame_covariant_derivative(def, wk, x, l);

    Vec rhs = Vec::Zero(n);
    for (int s = 0; s < n; ++s) {
      if (st.translation(s, k, l) == 0.0) continue;
      rhs += st.translation(s, k, l) * frame_covariant_derivative(def, tau, x, s);
    }
    const Vec tv = tau.eval(x);
    for (int m = 0; m < n; ++m) {
      double sum = 0.0;
      for (int p = 0; p < n; ++p) sum += st.gauge(m, p, k, l) * tv[p];
      rhs[m] += sum;
    }
    worst = std::max(worst, (lhs - rhs).lpNorm<Eigen::Infinity>());
  }
  return worst;
}

double commutator_residual(const DeformationField& def, const Vec& x,
                           const std::vector<Field<Vec>>& probes) {
  const int n = def.chart().dimension();
  double worst = 0.0;
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l)
      worst = std::max(worst, commutator_residual(def, x, k, l, probes));
  return worst;
}

CartanResidual cartan_residual(const DeformationField& def, const Vec& x) {
  const Chart& chart = def.chart();
  const int n = chart.dimension();
  const Mat h = def.frame_at(x);
  const DeformationField d = def;

  // connection one-form coefficients w^m_(u)n = gamma^m_kn h^k_u
  Field<Tensor3> omega;
  omega.eval = [d, n](const Vec& y) {
    const Tensor3 gamma = d.gamma_at(y);
    const Mat hy = d.frame_at(y);
    Tensor3 w(n);
    for (int m = 0; m < n; ++m)
      for (int u = 0; u < n; ++u)
        for (int p = 0; p < n; ++p) {
          double sum = 0.0;
          for (int k = 0; k < n; ++k) sum += gamma(m, k, p) * hy(k, u);
          w(m, u, p) = sum;
        }
    return w;
  };
  omega.fd = chart.fd().second();
  const Tensor3 w = omega.eval(x);

  std::vector<Mat> dh(n);
  std::vector<Tensor3> dw(n);
  for (int u = 0; u < n; ++u) {
    dh[u] = differentiate(chart, def.frame().forward(), x, u);
    dw[u] = differentiate(chart, omega, x, u);
  }

  const DTStructure st = dt_structure(def, x);

  CartanResidual out{Tensor3(n), Tensor4(n)};
  for (int m = 0; m < n; ++m)
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        double sum = dh[u](m, v) - dh[v](m, u);
        for (int p = 0; p < n; ++p)
          sum -= h(p, u) * w(m, v, p) - h(p, v) * w(m, u, p);
        out.torsion(m, u, v) = sum;
      }

  for (int m = 0; m < n; ++m)
    for (int p = 0; p < n; ++p)
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
          double sum = dw[u](m, v, p) - dw[v](m, u, p);
          for (int k = 0; k < n; ++k)
            sum -= w(k, u, p) * w(m, v, k) - w(k, v, p) * w(m, u, k);
          double r = 0.0;
          for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
              r += st.gauge(m, p, k, l) * h(k, u) * h(l, v);
          out.curvature(m, p, u, v) = sum - r;
        }
  return out;
}

Tensor3 gauge_transformed_gamma(const DeformationField& def,
                                const Field<Mat>& L, const Vec& x) {
  const Chart& chart = def.chart();
  const int n = chart.dimension();
  const Tensor3 gamma = def.gamma_at(x);
  const Mat hinv = def.frame_inv_at(x);
  const Mat Lv = L.eval(x);

  Field<Mat> Linv_field;
  const Field<Mat> Lf = L;
  Linv_field.eval = [Lf](const Vec& y) {
    return Mat(Lf.eval(y).inverse());
  };
  Linv_field.fd = L.fd;
  const Mat Linv = Linv_field.eval(x);

  std::vector<Mat> dLinv(n);
  for (int s = 0; s < n; ++s)
    dLinv[s] = differentiate(chart, Linv_field, x, s);

  Tensor3 out(n);
  for (int a = 0; a < n; ++a)
    for (int s = 0; s < n; ++s)
      for (int m = 0; m < n; ++m) {
        double sum = 0.0;
        for (int k = 0; k < n; ++k) {
          double inner = 0.0;
          for (int r = 0; r < n; ++r) {
            for (int l = 0; l < n; ++l)
              inner += gamma(k, r, l) * Linv(r, s) * Linv(l, m);
            for (int sig = 0; sig < n; ++sig)
              inner += Linv(r, s) * hinv(sig, r) * dLinv[sig](k, m);
          }
          sum += Lv(a, k) * inner;
        }
        out(a, s, m) = sum;
      }
  return out;
}

ClosureReport dt_subgroup_closure_check(const DeformationField& def,
                                        const std::vector<Vec>& samples,
                                        double amplitude, std::uint64_t seed,
                                        double tol) {
  const int n = def.chart().dimension();
  const DTElement g1 = dt_pure_translation(
      smooth_translation_field(def.chart(), amplitude, seed), n);
  const DTElement g2 = dt_pure_translation(
      smooth_translation_field(def.chart(), amplitude, seed + 1), n);

  ClosureReport rep{true, 0.0, samples.empty() ? Vec() : samples.front()};
  const Mat id = Mat::Identity(n, n);
  for (const Vec& x : samples) {
    const DTProduct p = dt_multiply(def, g1, g2, x);
    const double dev = (p.value.L - id).lpNorm<Eigen::Infinity>();
    if (dev > rep.max_deviation) {
      rep.max_deviation = dev;
      rep.witness = x;
    }
  }
  rep.closed = rep.max_deviation <= tol;
  return rep;
}

GroupElement smooth_translation_field(const Chart& chart, double amplitude,
                                      std::uint64_t seed) {
  const int n = chart.dimension();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_real_distribution<double> freq(0.5, 1.5);

  Mat a(n, n), k(n, n), phase(n, n);
  for (int m = 0; m < n; ++m)
    for (int u = 0; u < n; ++u) {
      a(m, u) = coef(rng);
      k(m, u) = freq(rng);
      phase(m, u) = M_PI * coef(rng);
    }

  GroupElement g;
  g.t.eval = [n, amplitude, a, k, phase](const Vec& x) {
    Vec t(n);
    for (int m = 0; m < n; ++m) {
      double s = 0.0;
      for (int u = 0; u < n; ++u)
        s += a(m, u) * std::sin(k(m, u) * x[u] + phase(m, u));
      t[m] = amplitude * s / n;
    }
    return t;
  };
  g.t.shape.indices = {IndexKind::FrameUpper};
  return g;
}

Field<Mat> smooth_gauge_field(const Chart& chart, double amplitude,
                              std::uint64_t seed) {
  const int n = chart.dimension();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_real_distribution<double> freq(0.5, 1.5);

  std::vector<double> a, k, phase;
  std::vector<int> dir;
  for (int i = 0; i < n * n; ++i) {
    a.push_back(coef(rng));
    k.push_back(freq(rng));
    phase.push_back(M_PI * coef(rng));
    dir.push_back(static_cast<int>(rng() % static_cast<std::uint64_t>(n)));
  }

  Field<Mat> L;
  L.eval = [n, amplitude, a, k, phase, dir](const Vec& x) {
    Mat m = Mat::Identity(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const int idx = i * n + j;
        m(i, j) += amplitude * a[idx] *
                   std::sin(k[idx] * x[dir[idx]] + phase[idx]);
      }
    return m;
  };
  return L;
}

}  // namespace dgeo
