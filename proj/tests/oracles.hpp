#pragma once

// Closed-form and brute-force reference computations used by the test
// suites. Everything here is independent of the library's implementation
// paths: hand-differentiated catalog geometry, a dense polynomial-map
// composer, and a plain RK4 geodesic integrator.

#include <cmath>
#include <random>
#include <vector>

#include "dgeo/catalog.hpp"
#include "dgeo/jet.hpp"
#include "dgeo/levi_civita.hpp"
#include "dgeo/transport.hpp"

namespace oracles {

using dgeo::Mat;
using dgeo::Tensor3;
using dgeo::Tensor4;
using dgeo::Vec;

// ---- unit sphere, coordinates (theta, phi), g = diag(1, sin^2 theta) ----

inline Tensor3 sphere_christoffel(double theta) {
  Tensor3 G(2);
  G(0, 1, 1) = -std::sin(theta) * std::cos(theta);
  G(1, 0, 1) = G(1, 1, 0) = std::cos(theta) / std::sin(theta);
  return G;
}

// slots (upper, lower, skew1, skew2)
inline Tensor4 sphere_riemann(double theta) {
  const double s2 = std::sin(theta) * std::sin(theta);
  Tensor4 R(2);
  R(0, 1, 0, 1) = s2;
  R(0, 1, 1, 0) = -s2;
  R(1, 0, 0, 1) = -1.0;
  R(1, 0, 1, 0) = 1.0;
  return R;
}

// ---- half-plane, coordinates (x, y), g = diag(1/y^2, 1/y^2) ----

inline Tensor3 halfplane_christoffel(double y) {
  Tensor3 G(2);
  G(0, 0, 1) = G(0, 1, 0) = -1.0 / y;
  G(1, 0, 0) = 1.0 / y;
  G(1, 1, 1) = -1.0 / y;
  return G;
}

inline Tensor4 halfplane_riemann(double y) {
  const double w = 1.0 / (y * y);
  Tensor4 R(2);
  R(0, 1, 0, 1) = -w;
  R(0, 1, 1, 0) = w;
  R(1, 0, 0, 1) = w;
  R(1, 0, 1, 0) = -w;
  return R;
}

// ---- dense polynomial maps of total degree <= 3 (no constant term) ----
//
// Coefficients are stored without symmetry assumptions; composition expands
// products monomial by monomial. This is the brute-force cross-check for the
// library's symmetric-tensor jet algebra.

struct Poly3 {
  int n = 0;
  Mat c1;     // c1(m, i)
  Tensor3 c2;  // c2(m, i, j)
  Tensor4 c3;  // c3(m, i, j, k)

  explicit Poly3(int dim) : n(dim), c1(Mat::Zero(dim, dim)), c2(dim), c3(dim) {}

  Vec eval(const Vec& u) const {
    Vec out = c1 * u;
    for (int m = 0; m < n; ++m) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          s += c2(m, i, j) * u[i] * u[j];
          for (int k = 0; k < n; ++k)
            s += c3(m, i, j, k) * u[i] * u[j] * u[k];
        }
      out[m] += s;
    }
    return out;
  }
};

inline Poly3 from_cubic(const dgeo::CubicMap& c) {
  Poly3 p(c.dim());
  p.c1 = c.A;
  p.c2 = c.B;
  p.c3 = c.C;
  return p;
}

// (P after Q), truncated at total degree 3 by explicit expansion
inline Poly3 compose(const Poly3& P, const Poly3& Q) {
  const int n = P.n;
  Poly3 R(n);
  for (int m = 0; m < n; ++m) {
    // linear substitution
    for (int p = 0; p < n; ++p) {
      for (int i = 0; i < n; ++i) R.c1(m, i) += P.c1(m, p) * Q.c1(p, i);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          R.c2(m, i, j) += P.c1(m, p) * Q.c2(p, i, j);
          for (int k = 0; k < n; ++k)
            R.c3(m, i, j, k) += P.c1(m, p) * Q.c3(p, i, j, k);
        }
    }
    // quadratic substitution: Q_p Q_q expanded to degree 3
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        const double b = P.c2(m, p, q);
        if (b == 0.0) continue;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            R.c2(m, i, j) += b * Q.c1(p, i) * Q.c1(q, j);
            for (int k = 0; k < n; ++k) {
              R.c3(m, i, j, k) += b * Q.c1(p, i) * Q.c2(q, j, k);
              R.c3(m, i, j, k) += b * Q.c2(p, i, j) * Q.c1(q, k);
            }
          }
      }
    // cubic substitution: only the all-linear part stays within degree 3
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        for (int r = 0; r < n; ++r) {
          const double c = P.c3(m, p, q, r);
          if (c == 0.0) continue;
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
              for (int k = 0; k < n; ++k)
                R.c3(m, i, j, k) += c * Q.c1(p, i) * Q.c1(q, j) * Q.c1(r, k);
        }
  }
  return R;
}

// max coefficient difference after symmetrizing both sides (the dense store
// spreads a symmetric coefficient over equivalent monomials)
inline double coefficient_distance(const Poly3& a, const Poly3& b) {
  const int n = a.n;
  double worst = 0.0;
  worst = std::max(worst, (a.c1 - b.c1).lpNorm<Eigen::Infinity>());
  for (int m = 0; m < n; ++m) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double sa = a.c2(m, i, j) + a.c2(m, j, i);
        const double sb = b.c2(m, i, j) + b.c2(m, j, i);
        worst = std::max(worst, std::abs(sa - sb));
      }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double sa = 0.0, sb = 0.0;
          const int idx[3] = {i, j, k};
          int perm[3] = {0, 1, 2};
          // sum over the six slot orders
          for (int p0 = 0; p0 < 3; ++p0)
            for (int p1 = 0; p1 < 3; ++p1)
              for (int p2 = 0; p2 < 3; ++p2) {
                if (p0 == p1 || p1 == p2 || p0 == p2) continue;
                perm[0] = idx[p0];
                perm[1] = idx[p1];
                perm[2] = idx[p2];
                sa += a.c3(m, perm[0], perm[1], perm[2]);
                sb += b.c3(m, perm[0], perm[1], perm[2]);
              }
          worst = std::max(worst, std::abs(sa - sb));
        }
  }
  return worst;
}

inline dgeo::DeformationJet random_jet(int n, std::uint64_t seed,
                                       double scale = 0.4) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  dgeo::DeformationJet jet;
  jet.x = Vec::Zero(n);
  jet.h = Mat::Identity(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) jet.h(i, j) += scale * u(rng);
  jet.gamma = Tensor3(n);
  jet.delta = Tensor4(n);
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        const double v = scale * u(rng);
        jet.gamma(a, i, j) = v;
        jet.gamma(a, j, i) = v;
      }
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) jet.delta(a, i, j, k) = scale * u(rng);
  jet.delta = dgeo::sym_last3(jet.delta);
  return jet;
}

// ---- geodesic integration (plain RK4 on the second-order system) ----

inline Vec integrate_geodesic(const dgeo::MetricField& metric, const Vec& x0,
                              const Vec& v0, int steps) {
  const int n = static_cast<int>(x0.size());
  Vec x = x0, v = v0;
  const double h = 1.0 / steps;
  const auto acc = [&](const Vec& xx, const Vec& vv) {
    const Tensor3 G = dgeo::christoffel(metric, xx);
    Vec a(n);
    for (int u = 0; u < n; ++u) {
      double s = 0.0;
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) s += G(u, p, q) * vv[p] * vv[q];
      a[u] = -s;
    }
    return a;
  };
  for (int i = 0; i < steps; ++i) {
    const Vec k1x = v, k1v = acc(x, v);
    const Vec k2x = v + 0.5 * h * k1v, k2v = acc(x + 0.5 * h * k1x, v + 0.5 * h * k1v);
    const Vec k3x = v + 0.5 * h * k2v, k3v = acc(x + 0.5 * h * k2x, v + 0.5 * h * k2v);
    const Vec k4x = v + h * k3v, k4v = acc(x + h * k3x, v + h * k3v);
    x += (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    v += (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
  }
  return x;
}

// ---- the band loop on the sphere used for holonomy checks ----

struct SphereLoop {
  dgeo::Curve curve;
  double area;  // enclosed area = rotation angle by the surface-integral rule
};

inline SphereLoop sphere_band_loop(double theta_top = 0.12, double phi1 = 0.3,
                                   double dphi = M_PI / 2.0) {
  Vec A(2), B(2), C(2), D(2);
  A << M_PI / 2.0, phi1;
  B << M_PI / 2.0, phi1 + dphi;
  C << theta_top, phi1 + dphi;
  D << theta_top, phi1;
  SphereLoop out{dgeo::Curve::polyline({A, B, C, D}, true),
                 dphi * std::cos(theta_top)};
  return out;
}

// least-squares slope of log(y) against log(x)
inline double loglog_slope(const std::vector<double>& x,
                           const std::vector<double>& y) {
  const int n = static_cast<int>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace oracles
