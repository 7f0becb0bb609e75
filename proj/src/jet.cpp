#include "dgeo/jet.hpp"

#include <cmath>

#include "dgeo/errors.hpp"

namespace dgeo {
namespace {

// Symmetric cubic coefficient of 2 B(a u, b u^2): the three placements of the
// linear slot, each weighted 2/3.
Tensor4 cross_term(const Tensor3& B, const Mat& a, const Tensor3& b) {
  const int n = B.dim();
  Tensor4 out(n);
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double sum = 0.0;
          for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
              sum += B(m, p, q) * (a(p, i) * b(q, j, k) + a(p, j) * b(q, i, k) +
                                   a(p, k) * b(q, i, j));
          out(m, i, j, k) = (2.0 / 3.0) * sum;
        }
  return out;
}

Mat checked_inverse(const Mat& A, const char* what) {
  if (std::abs(A.determinant()) <= 1e-14)
    throw NumericError(std::string("singular linear coefficient in ") + what);
  return A.inverse();
}

}  // namespace

CubicMap CubicMap::identity(int n) {
  return {Mat::Identity(n, n), Tensor3(n), Tensor4(n)};
}

CubicMap CubicMap::zero_higher(Mat a) {
  const int n = static_cast<int>(a.rows());
  return {std::move(a), Tensor3(n), Tensor4(n)};
}

Vec CubicMap::apply(const Vec& u) const {
  const int n = dim();
  Vec v = A * u;
  for (int m = 0; m < n; ++m) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double uij = u[i] * u[j];
        s += B(m, i, j) * uij;
        for (int k = 0; k < n; ++k) s += C(m, i, j, k) * uij * u[k];
      }
    v[m] += s;
  }
  return v;
}

Mat CubicMap::jacobian(const Vec& u) const {
  const int n = dim();
  Mat J = A;
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) {
        s += 2.0 * B(m, i, j) * u[j];
        for (int k = 0; k < n; ++k) s += 3.0 * C(m, i, j, k) * u[j] * u[k];
      }
      J(m, i) += s;
    }
  return J;
}

CubicMap compose(const CubicMap& P, const CubicMap& Q) {
  const int n = P.dim();
  CubicMap R;
  R.A = P.A * Q.A;

  R.B = Tensor3(n);
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double sum = 0.0;
        for (int p = 0; p < n; ++p) {
          sum += P.A(m, p) * Q.B(p, i, j);
          for (int q = 0; q < n; ++q)
            sum += P.B(m, p, q) * Q.A(p, i) * Q.A(q, j);
        }
        R.B(m, i, j) = sum;
      }

  R.C = cross_term(P.B, Q.A, Q.B);
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double sum = 0.0;
          for (int p = 0; p < n; ++p) {
            sum += P.A(m, p) * Q.C(p, i, j, k);
            for (int q = 0; q < n; ++q)
              for (int r = 0; r < n; ++r)
                sum += P.C(m, p, q, r) * Q.A(p, i) * Q.A(q, j) * Q.A(r, k);
          }
          R.C(m, i, j, k) += sum;
        }
  return R;
}

CubicMap CubicMap::inverse() const {
  const int n = dim();
  CubicMap inv;
  inv.A = checked_inverse(A, "series reversion");

  inv.B = Tensor3(n);
  for (int u = 0; u < n; ++u)
    for (int m = 0; m < n; ++m)
      for (int k = 0; k < n; ++k) {
        double sum = 0.0;
        for (int p = 0; p < n; ++p)
          for (int q = 0; q < n; ++q)
            for (int r = 0; r < n; ++r)
              sum += inv.A(u, p) * B(p, q, r) * inv.A(q, m) * inv.A(r, k);
        inv.B(u, m, k) = -sum;
      }

  Tensor4 rhs = cross_term(B, inv.A, inv.B);
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double sum = 0.0;
          for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
              for (int r = 0; r < n; ++r)
                sum += C(m, p, q, r) * inv.A(p, i) * inv.A(q, j) * inv.A(r, k);
          rhs(m, i, j, k) += sum;
        }

  inv.C = Tensor4(n);
  for (int u = 0; u < n; ++u)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double sum = 0.0;
          for (int m = 0; m < n; ++m) sum += inv.A(u, m) * rhs(m, i, j, k);
          inv.C(u, i, j, k) = -sum;
        }
  return inv;
}

DeformationJet DeformationJet::identity(Vec x, int n) {
  return {std::move(x), Mat::Identity(n, n), Tensor3(n), Tensor4(n)};
}

CubicMap DeformationJet::to_cubic() const {
  const int n = dim();
  CubicMap c;
  c.A = h;
  c.B = Tensor3(n);
  c.C = Tensor4(n);
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double sb = 0.0;
        for (int u = 0; u < n; ++u) sb += h(m, u) * gamma(u, i, j);
        c.B(m, i, j) = 0.5 * sb;
        for (int k = 0; k < n; ++k) {
          double sc = 0.0;
          for (int u = 0; u < n; ++u) sc += h(m, u) * delta(u, i, j, k);
          c.C(m, i, j, k) = sc / 6.0;
        }
      }
  return c;
}

DeformationJet DeformationJet::from_cubic(Vec x, const CubicMap& c) {
  const int n = c.dim();
  DeformationJet jet;
  jet.x = std::move(x);
  jet.h = c.A;
  const Mat hinv = checked_inverse(c.A, "jet extraction");
  jet.gamma = Tensor3(n);
  jet.delta = Tensor4(n);
  for (int u = 0; u < n; ++u)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double sg = 0.0;
        for (int m = 0; m < n; ++m) sg += hinv(u, m) * c.B(m, i, j);
        jet.gamma(u, i, j) = 2.0 * sg;
        for (int k = 0; k < n; ++k) {
          double sd = 0.0;
          for (int m = 0; m < n; ++m) sd += hinv(u, m) * c.C(m, i, j, k);
          jet.delta(u, i, j, k) = 6.0 * sd;
        }
      }
  jet.gamma = sym_last2(jet.gamma);
  jet.delta = sym_last3(jet.delta);
  return jet;
}

Vec jet_apply(const DeformationJet& jet, const Vec& u) {
  return jet.to_cubic().apply(u);
}

CubicMap jet_invert(const DeformationJet& jet) {
  return jet.to_cubic().inverse();
}

DeformationJet compose_jets(const DeformationJet& outer,
                            const DeformationJet& inner) {
  return DeformationJet::from_cubic(inner.x,
                                    compose(outer.to_cubic(), inner.to_cubic()));
}

}  // namespace dgeo
