#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstring>
#include <thread>

#include "dgeo/catalog.hpp"
#include "dgeo/errors.hpp"
#include "dgeo/field.hpp"
#include "dgeo/levi_civita.hpp"
#include "doctest.h"

using namespace dgeo;

namespace {

Chart unit_chart(int n) {
  return Chart(std::vector<Interval>(n, Interval{-4.0, 4.0}));
}

ScalarField scalar(std::function<double(const Vec&)> f, FdSpec fd = {}) {
  ScalarField s;
  s.eval = std::move(f);
  s.fd = fd;
  return s;
}

Vec point(std::initializer_list<double> vals) {
  Vec v(static_cast<int>(vals.size()));
  int i = 0;
  for (double d : vals) v[i++] = d;
  return v;
}

}  // namespace

TEST_CASE("finite differences hit simple derivatives") {
  const Chart chart = unit_chart(1);
  const auto square = scalar([](const Vec& x) { return x[0] * x[0]; });
  CHECK(differentiate(chart, square, point({3.0}), 0) ==
        doctest::Approx(6.0).epsilon(1e-9));

  const auto sine = scalar([](const Vec& x) { return std::sin(x[0]); });
  CHECK(differentiate(chart, sine, point({0.0}), 0) ==
        doctest::Approx(1.0).epsilon(1e-8));

  const auto constant = scalar([](const Vec&) { return 2.5; });
  CHECK(differentiate(chart, constant, point({1.0}), 0) == 0.0);
}

TEST_CASE("analytic derivatives short-circuit the stencil") {
  const Chart chart = unit_chart(1);
  ScalarField f = scalar([](const Vec& x) { return x[0] * x[0]; });
  f.partial = [](const Vec&, int) { return 123.0; };
  CHECK(differentiate(chart, f, point({3.0}), 0) == 123.0);
}

TEST_CASE("order-2 scheme: halving the step reduces the error by >= 3.5") {
  const Chart chart = unit_chart(2);
  struct Case {
    std::function<double(const Vec&)> f;
    std::function<double(const Vec&)> df0;  // d/dx0
  };
  const Case cases[] = {
      {[](const Vec& x) { return std::sin(x[0]) * std::cos(x[1]); },
       [](const Vec& x) { return std::cos(x[0]) * std::cos(x[1]); }},
      {[](const Vec& x) { return std::exp(0.3 * x[0] + 0.7 * x[1]); },
       [](const Vec& x) { return 0.3 * std::exp(0.3 * x[0] + 0.7 * x[1]); }},
      {[](const Vec& x) { return 1.0 / (6.0 + x[0] + 0.5 * x[1]); },
       [](const Vec& x) {
         const double d = 6.0 + x[0] + 0.5 * x[1];
         return -1.0 / (d * d);
       }},
  };
  const Vec x = point({0.7, -0.4});
  for (const Case& c : cases) {
    const ScalarField f = scalar(c.f);
    const double exact = c.df0(x);
    const double coarse =
        differentiate(chart, f, x, 0, FdSpec{1e-2, false});
    const double fine = differentiate(chart, f, x, 0, FdSpec{5e-3, false});
    const double e1 = std::abs(coarse - exact);
    const double e2 = std::abs(fine - exact);
    REQUIRE(e2 > 0.0);
    CHECK(e1 / e2 >= 3.5);
  }
}

TEST_CASE("richardson extrapolation improves on the plain stencil") {
  const Chart chart = unit_chart(1);
  const auto f = scalar([](const Vec& x) { return std::sin(x[0]); });
  const Vec x = point({0.9});
  const double exact = std::cos(0.9);
  const double plain =
      std::abs(differentiate(chart, f, x, 0, FdSpec{1e-3, false}) - exact);
  const double rich =
      std::abs(differentiate(chart, f, x, 0, FdSpec{1e-3, true}) - exact);
  CHECK(rich < plain);
  CHECK(rich < 1e-12);
}

TEST_CASE("stencils outside the margin-shrunk box are rejected") {
  const Chart chart = unit_chart(1);
  const auto f = scalar([](const Vec& x) { return x[0]; });
  const double edge = chart.inner(0).hi;
  CHECK_THROWS_AS(differentiate(chart, f, point({edge}), 0), DomainError);
  CHECK_THROWS_AS(differentiate(chart, f, point({edge - 1e-9}), 0),
                  DomainError);
  CHECK_NOTHROW(differentiate(chart, f, point({edge - 1.0}), 0));
}

TEST_CASE("non-finite evaluations are reported") {
  const Chart chart = unit_chart(1);
  const auto f = scalar([](const Vec& x) { return 1.0 / (x[0] - 1.0); });
  CHECK_THROWS_AS(differentiate(chart, f, point({1.0}), 0), NumericError);
}

TEST_CASE("sampling: determinism, cardinality, domain") {
  const Chart chart = unit_chart(3);
  const auto a = chart.sample(37, 5);
  const auto b = chart.sample(37, 5);
  REQUIRE(a.size() == 37);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(chart.contains(a[i]));
    // bit-identical across runs with the same seed
    CHECK(std::memcmp(a[i].data(), b[i].data(), sizeof(double) * 3) == 0);
  }

  const auto c = chart.sample(37, 6);
  bool differs = false;
  for (std::size_t i = 0; i < a.size() && !differs; ++i)
    differs = (a[i] - c[i]).lpNorm<Eigen::Infinity>() > 0.0;
  CHECK(differs);

  const auto single = chart.sample(1, 0);
  const auto single2 = chart.sample(1, 0);
  CHECK(single.size() == 1);
  CHECK(chart.contains(single[0]));
  CHECK(single[0] == single2[0]);

  CHECK_THROWS_AS(chart.sample(0, 0), ConfigError);
}

TEST_CASE("chart construction validates its invariants") {
  CHECK_THROWS_AS(Chart(std::vector<Interval>{}), ConfigError);
  CHECK_THROWS_AS(Chart({Interval{0.0, 1.0}}, {0.6}), ConfigError);
  CHECK_THROWS_AS(Chart({Interval{0.0, 1.0}}, {-0.1}), ConfigError);
  const Chart ok({Interval{0.0, 1.0}}, {0.1});
  CHECK(ok.inner(0).lo == doctest::Approx(0.1));
  CHECK(ok.inner(0).hi == doctest::Approx(0.9));
}

TEST_CASE("evaluation is pure and safe under concurrent use") {
  const Manifold m = make_catalog_manifold("sphere2");
  const ConnectionField conn = christoffel_field(m.metric);
  const auto pts = m.chart->sample(8, 3);

  const Tensor3 reference = conn.at(pts[0]);
  std::vector<Tensor3> results(4);
  std::vector<std::thread> workers;
  for (int i = 0; i < 4; ++i)
    workers.emplace_back([&, i] {
      for (const Vec& p : pts) conn.at(p);
      results[i] = conn.at(pts[0]);
    });
  for (auto& w : workers) w.join();

  const int n = reference.dim();
  for (const Tensor3& r : results)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) CHECK(r(a, b, c) == reference(a, b, c));
}

TEST_CASE("polynomial probe fields carry matching analytic derivatives") {
  const Chart chart = unit_chart(2);
  const VectorField probe = random_polynomial_vector_field(chart, 11);
  const Vec x = point({0.3, -1.2});
  for (int d = 0; d < 2; ++d) {
    const Vec analytic = probe.partial(x, d);
    // order-4 stencil against the closed form
    Field<Vec> no_partial;
    no_partial.eval = probe.eval;
    const Vec fd = differentiate(chart, no_partial, x, d, FdSpec{1e-5, true});
    CHECK((analytic - fd).lpNorm<Eigen::Infinity>() < 1e-9);
  }
}
