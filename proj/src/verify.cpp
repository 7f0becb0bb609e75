#include "dgeo/verify.hpp"

#include <chrono>
#include <cmath>
#include <ctime>

#include "dgeo/errors.hpp"
#include "dgeo/levi_civita.hpp"

namespace dgeo {
namespace {

const std::map<std::string, double>& tolerance_table() {
  static const std::map<std::string, double> table = {
      {"metricity", 1e-6},        {"maurer-cartan", 1e-4},
      {"cartan-1", 1e-5},         {"cartan-2", 1e-5},
      {"eq41-vs-riemann", 1e-5},  {"jet-vs-riemann", 1e-5},
      {"delta-independence", 1e-9}, {"dt-closure", 1e-6},
  };
  return table;
}

struct Accumulator {
  double max = 0.0;
  Vec witness;
  void feed(double v, const Vec& x) {
    if (v >= max || witness.size() == 0) {
      max = v;
      witness = x;
    }
  }
};

}  // namespace

double default_tolerance(const std::string& identity) {
  const auto& table = tolerance_table();
  auto it = table.find(identity);
  if (it == table.end())
    throw ConfigError("unknown identity '" + identity + "' in tolerance override");
  return it->second;
}

Tensor4 to_frame_indices(const Tensor4& r, const Mat& h, const Mat& hinv) {
  const int n = r.dim();
  Tensor4 out(n);
  for (int m = 0; m < n; ++m)
    for (int l = 0; l < n; ++l)
      for (int k = 0; k < n; ++k)
        for (int p = 0; p < n; ++p) {
          double sum = 0.0;
          for (int u = 0; u < n; ++u)
            for (int lam = 0; lam < n; ++lam)
              for (int kap = 0; kap < n; ++kap)
                for (int nu = 0; nu < n; ++nu)
                  sum += h(m, u) * r(u, lam, kap, nu) * hinv(lam, l) *
                         hinv(kap, k) * hinv(nu, p);
          out(m, l, k, p) = sum;
        }
  return out;
}

std::vector<IdentityResult> run_verification(const Manifold& manifold,
                                             const VerifyOptions& opts) {
  const Chart& chart = *manifold.chart;
  const MetricField& metric = manifold.metric;

  const ConnectionField conn = christoffel_field(metric);
  const DeformationField def_geo =
      metric_deformation(metric, DeltaPolicy::Geodesic);
  const DeformationField def_zero =
      metric_deformation(metric, DeltaPolicy::Zero);

  const std::vector<Vec> pts = chart.sample(opts.samples, opts.seed);

  Accumulator metricity, cartan1, cartan2, eq41, jet_vs, delta_indep;
  double curvature_scale = 0.0;

  for (const Vec& x : pts) {
    metricity.feed(metricity_residual(metric, conn, x).max_abs(), x);

    const CartanResidual cr = cartan_residual(def_geo, x);
    cartan1.feed(cr.torsion.max_abs(), x);
    cartan2.feed(cr.curvature.max_abs(), x);

    const Mat h = def_geo.frame_at(x);
    const Mat hinv = def_geo.frame_inv_at(x);
    const Tensor4 r_frame = to_frame_indices(riemann(conn, x), h, hinv);
    curvature_scale = std::max(curvature_scale, r_frame.max_abs());

    const DTStructure st = dt_structure(def_geo, x);
    eq41.feed((st.gauge - r_frame).max_abs(), x);

    const ExpansionCoefficients eg = extract_expansion(def_geo, x);
    const ExpansionCoefficients ez = extract_expansion(def_zero, x);
    jet_vs.feed((eg.R - r_frame).max_abs(), x);
    delta_indep.feed((eg.R - ez.R).max_abs(), x);
  }

  // commutator identity on a subset of points with seeded probe fields
  Accumulator commutator;
  {
    std::vector<Field<Vec>> probes;
    for (int i = 0; i < opts.probes; ++i)
      probes.push_back(
          random_polynomial_vector_field(chart, opts.seed + 1000 + i));
    const int npts = std::min<int>(opts.commutator_points,
                                   static_cast<int>(pts.size()));
    for (int i = 0; i < npts; ++i)
      commutator.feed(commutator_residual(def_geo, pts[i], probes), pts[i]);
  }

  // translation-subgroup closure on interior samples: closure is expected
  // exactly when the curvature vanishes
  const std::vector<Vec> interior =
      chart.shrunk(0.15).sample(opts.closure_points, opts.seed + 5);
  const ClosureReport closure =
      dt_subgroup_closure_check(def_geo, interior, 0.02, opts.seed + 7);
  const bool expect_closed = curvature_scale < 1e-6;

  const auto tol = [&](const std::string& name) {
    auto it = opts.tolerance_overrides.find(name);
    return it != opts.tolerance_overrides.end() ? it->second
                                                : default_tolerance(name);
  };
  const int ns = static_cast<int>(pts.size());

  std::vector<IdentityResult> out;
  const auto add = [&](const std::string& name, const Accumulator& acc,
                       int count) {
    IdentityResult r;
    r.name = name;
    r.max_residual = acc.max;
    r.samples = count;
    r.tolerance = tol(name);
    r.pass = acc.max <= r.tolerance;
    r.witness = acc.witness;
    out.push_back(std::move(r));
  };

  add("metricity", metricity, ns);
  add("maurer-cartan", commutator,
      std::min<int>(opts.commutator_points, ns));
  add("cartan-1", cartan1, ns);
  add("cartan-2", cartan2, ns);
  add("eq41-vs-riemann", eq41, ns);
  add("jet-vs-riemann", jet_vs, ns);
  add("delta-independence", delta_indep, ns);

  IdentityResult cl;
  cl.name = "dt-closure";
  cl.max_residual = closure.max_deviation;
  cl.samples = static_cast<int>(interior.size());
  cl.tolerance = tol("dt-closure");
  cl.pass = expect_closed ? closure.closed : !closure.closed;
  cl.witness = closure.witness;
  out.push_back(std::move(cl));
  return out;
}

bool all_pass(const std::vector<IdentityResult>& results) {
  for (const IdentityResult& r : results)
    if (!r.pass) return false;
  return true;
}

std::string iso_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Report report_vec(const Vec& v) {
  Report a = Report::array();
  for (int i = 0; i < v.size(); ++i) a.push(Report::number(v[i]));
  return a;
}

Report report_mat(const Mat& m) {
  Report a = Report::array();
  for (int i = 0; i < m.rows(); ++i) {
    Report row = Report::array();
    for (int j = 0; j < m.cols(); ++j) row.push(Report::number(m(i, j)));
    a.push(std::move(row));
  }
  return a;
}

Report report_tensor3(const Tensor3& t) {
  const int n = t.dim();
  Report a = Report::array();
  for (int i = 0; i < n; ++i) {
    Report bi = Report::array();
    for (int j = 0; j < n; ++j) {
      Report cj = Report::array();
      for (int k = 0; k < n; ++k) cj.push(Report::number(t(i, j, k)));
      bi.push(std::move(cj));
    }
    a.push(std::move(bi));
  }
  return a;
}

Report report_tensor4(const Tensor4& t) {
  const int n = t.dim();
  Report a = Report::array();
  for (int i = 0; i < n; ++i) {
    Report bi = Report::array();
    for (int j = 0; j < n; ++j) {
      Report cj = Report::array();
      for (int k = 0; k < n; ++k) {
        Report dk = Report::array();
        for (int l = 0; l < n; ++l) dk.push(Report::number(t(i, j, k, l)));
        cj.push(std::move(dk));
      }
      bi.push(std::move(cj));
    }
    a.push(std::move(bi));
  }
  return a;
}

Report verification_report(const Manifold& manifold, const VerifyOptions& opts,
                           const std::vector<IdentityResult>& results,
                           bool with_timestamp) {
  Report doc = Report::object();
  doc.set("manifold", Report::string(manifold.name));
  doc.set("samples", Report::integer(opts.samples));
  doc.set("seed", Report::integer(static_cast<long long>(opts.seed)));
  if (with_timestamp) doc.set("timestamp", Report::string(iso_timestamp()));

  Report arr = Report::array();
  for (const IdentityResult& r : results) {
    Report item = Report::object();
    item.set("name", Report::string(r.name));
    item.set("max_residual", Report::number(r.max_residual));
    item.set("samples", Report::integer(r.samples));
    item.set("tolerance", Report::number(r.tolerance));
    item.set("pass", Report::boolean(r.pass));
    item.set("witness", report_vec(r.witness));
    arr.push(std::move(item));
  }
  doc.set("identities", std::move(arr));
  doc.set("pass", Report::boolean(all_pass(results)));
  return doc;
}

}  // namespace dgeo
