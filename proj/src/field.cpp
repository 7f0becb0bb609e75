#include "dgeo/field.hpp"

#include <random>

namespace dgeo {

VectorField random_polynomial_vector_field(const Chart& chart,
                                           std::uint64_t seed) {
  const int n = chart.dimension();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);

  Vec c0(n);
  Mat c1(n, n);
  Tensor3 c2(n);
  for (int m = 0; m < n; ++m) {
    c0[m] = coef(rng);
    for (int i = 0; i < n; ++i) c1(m, i) = coef(rng);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        const double v = 0.3 * coef(rng);
        c2(m, i, j) = v;
        c2(m, j, i) = v;
      }
  }

  VectorField f;
  f.shape.indices = {IndexKind::FrameUpper};
  f.eval = [n, c0, c1, c2](const Vec& x) {
    Vec v(n);
    for (int m = 0; m < n; ++m) {
      double s = c0[m];
      for (int i = 0; i < n; ++i) {
        s += c1(m, i) * x[i];
        for (int j = 0; j < n; ++j) s += c2(m, i, j) * x[i] * x[j];
      }
      v[m] = s;
    }
    return v;
  };
  f.partial = [n, c1, c2](const Vec& x, int d) {
    Vec v(n);
    for (int m = 0; m < n; ++m) {
      double s = c1(m, d);
      for (int j = 0; j < n; ++j) s += 2.0 * c2(m, d, j) * x[j];
      v[m] = s;
    }
    return v;
  };
  return f;
}

}  // namespace dgeo
