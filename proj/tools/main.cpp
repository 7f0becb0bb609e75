#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dgeo/catalog.hpp"
#include "dgeo/errors.hpp"
#include "dgeo/levi_civita.hpp"
#include "dgeo/verify.hpp"
#include "nlohmann/json.hpp"

namespace {

using namespace dgeo;

constexpr int kExitPass = 0;
constexpr int kExitIdentityFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitDomain = 3;
constexpr int kExitCurve = 4;

struct CommonOptions {
  std::string manifold_name;
  std::string spec_path;
  std::uint64_t seed = 0;
  std::string out_path;
};

FdPolicy policy_from_env() {
  FdPolicy fd;
  if (const char* env = std::getenv("DEFORMED_TRANSPORT_FD_H0")) {
    char* end = nullptr;
    const double h0 = std::strtod(env, &end);
    if (end == env || !(h0 > 0.0))
      throw ConfigError("DEFORMED_TRANSPORT_FD_H0 must be a positive real");
    fd.h0_first = h0;
    fd.h0_second = 10.0 * h0;
  }
  return fd;
}

Manifold resolve_manifold(const CommonOptions& common) {
  const FdPolicy fd = policy_from_env();
  if (!common.manifold_name.empty() && !common.spec_path.empty())
    throw ConfigError("give either --manifold or --spec, not both");
  if (!common.manifold_name.empty())
    return make_catalog_manifold(common.manifold_name, fd);
  if (!common.spec_path.empty()) return load_manifold_spec(common.spec_path, fd);
  throw ConfigError("a manifold is required: --manifold NAME or --spec PATH");
}

Vec parse_csv_point(const std::string& csv, int dimension) {
  std::vector<double> vals;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      vals.push_back(std::stod(item, &used));
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used])))
        ++used;
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("cannot parse '" + item + "' as a real number");
    }
  }
  if (static_cast<int>(vals.size()) != dimension)
    throw ConfigError("expected " + std::to_string(dimension) +
                      " comma-separated values, got " +
                      std::to_string(vals.size()));
  Vec v(dimension);
  for (int i = 0; i < dimension; ++i) v[i] = vals[i];
  return v;
}

Curve load_curve(const std::string& path, int dimension) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open curve file: " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("curve file: invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("segments") ||
      !doc["segments"].is_array() || doc["segments"].empty())
    throw ConfigError("curve file: expected {\"segments\": [...]}");

  std::vector<CurveSegment> segments;
  for (const auto& seg : doc["segments"]) {
    if (!seg.is_object() || !seg.contains("exprs") || !seg["exprs"].is_array() ||
        static_cast<int>(seg["exprs"].size()) != dimension)
      throw ConfigError(
          "curve file: each segment needs an \"exprs\" list with one "
          "expression per coordinate (parameter symbol: x0)");
    std::vector<Expression::Ptr> exprs;
    for (const auto& e : seg["exprs"]) {
      if (!e.is_string())
        throw ConfigError("curve file: expressions must be strings");
      try {
        exprs.push_back(parse_expression(e.get<std::string>(), 1));
      } catch (const ParseError& pe) {
        throw ConfigError(std::string("curve file: ") + pe.what());
      }
    }
    CurveSegment s;
    s.weight = seg.contains("weight") ? seg["weight"].get<double>() : 1.0;
    const int dim = dimension;
    s.pos = [exprs, dim](double t) {
      Vec p(1);
      p[0] = t;
      Vec out(dim);
      for (int i = 0; i < dim; ++i) out[i] = evaluate(exprs[i], p);
      return out;
    };
    segments.push_back(std::move(s));
  }
  return Curve(std::move(segments));
}

void emit(const Report& report, const std::string& out_path) {
  const std::string text = report.dump();
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + out_path);
  out << text;
}

int cmd_curvature(const CommonOptions& common,
                  const std::vector<std::string>& point_csvs) {
  const Manifold m = resolve_manifold(common);
  const int n = m.chart->dimension();
  if (point_csvs.empty())
    throw ConfigError("curvature requires at least one --point");

  const ConnectionField conn = christoffel_field(m.metric);
  const FrameField frame = orthonormal_frame_field(m.metric);

  Report doc = Report::object();
  doc.set("manifold", Report::string(m.name));
  doc.set("timestamp", Report::string(iso_timestamp()));
  Report pts = Report::array();
  for (const std::string& csv : point_csvs) {
    const Vec x = parse_csv_point(csv, n);
    if (!m.chart->contains(x))
      throw DomainError("point lies outside the margin-shrunk chart domain");
    const Tensor3 G = conn.at(x);
    const Tensor4 R = riemann(conn, x);
    const Mat h = frame.at(x);
    const Mat hinv = frame.reciprocal_at(x);
    const Anholonomity F = anholonomity(frame, x);

    Report entry = Report::object();
    entry.set("point", report_vec(x));
    entry.set("frame", report_mat(h));
    entry.set("christoffel", report_tensor3(G));
    entry.set("riemann_coord", report_tensor4(R));
    entry.set("riemann_frame", report_tensor4(to_frame_indices(R, h, hinv)));
    entry.set("structure_coord", report_tensor3(F.coord));
    entry.set("structure_frame", report_tensor3(F.frame));
    pts.push(std::move(entry));
  }
  doc.set("points", std::move(pts));
  emit(doc, common.out_path);
  return kExitPass;
}

int cmd_transport(const CommonOptions& common, const std::string& curve_path,
                  const std::string& vector_csv, int steps,
                  bool want_holonomy) {
  const Manifold m = resolve_manifold(common);
  const int n = m.chart->dimension();
  if (curve_path.empty()) throw ConfigError("transport requires --curve PATH");
  const Curve curve = load_curve(curve_path, n);
  if (want_holonomy && !curve.closed())
    throw CurveError("holonomy requested for a curve that is not closed");

  Vec tau0 = vector_csv.empty() ? Vec(Vec::Unit(n, 0))
                                : parse_csv_point(vector_csv, n);

  const DeformationField def = metric_deformation(m.metric);
  const Mat M = transport_matrix_along_curve(def, curve, steps);
  const Vec tau_end_frame = M * tau0;
  const Vec end = curve.end();
  const Vec tau_end_coord = def.frame_inv_at(end) * tau_end_frame;
  const double length = curve_length(m.metric, curve, std::max(steps, 256));
  const double norm_in = tau0.norm();
  const double norm_out = tau_end_frame.norm();
  const double drift = std::abs(norm_out - norm_in);

  Report doc = Report::object();
  doc.set("manifold", Report::string(m.name));
  doc.set("timestamp", Report::string(iso_timestamp()));
  doc.set("steps", Report::integer(steps));
  doc.set("curve_length", Report::number(length));
  doc.set("start", report_vec(curve.start()));
  doc.set("end", report_vec(end));
  doc.set("vector_in_frame", report_vec(tau0));
  doc.set("vector_out_frame", report_vec(tau_end_frame));
  doc.set("vector_out_coord", report_vec(tau_end_coord));
  doc.set("norm_in", Report::number(norm_in));
  doc.set("norm_out", Report::number(norm_out));
  doc.set("norm_drift", Report::number(drift));
  doc.set("norm_drift_per_length",
          Report::number(length > 0 ? drift / length : drift));
  if (curve.closed()) {
    doc.set("holonomy", report_mat(M));
    if (n == 2) doc.set("rotation_angle", Report::number(rotation_angle(M)));
  }
  emit(doc, common.out_path);
  return kExitPass;
}

int cmd_verify(const CommonOptions& common, int samples,
               const std::vector<std::string>& tol_overrides) {
  const Manifold m = resolve_manifold(common);
  VerifyOptions opts;
  opts.samples = samples;
  opts.seed = common.seed;
  for (const std::string& kv : tol_overrides) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos)
      throw ConfigError("--tol expects KEY=VALUE, got '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    default_tolerance(key);  // validates the name
    char* end = nullptr;
    const double val = std::strtod(kv.c_str() + eq + 1, &end);
    if (end == kv.c_str() + eq + 1 || *end != '\0' || !(val > 0.0))
      throw ConfigError("--tol value must be a positive real in '" + kv + "'");
    opts.tolerance_overrides[key] = val;
  }

  const std::vector<IdentityResult> results = run_verification(m, opts);
  emit(verification_report(m, opts, results), common.out_path);
  if (!all_pass(results)) {
    for (const IdentityResult& r : results)
      if (!r.pass)
        std::cerr << "identity failed: " << r.name
                  << " (max residual " << format_double(r.max_residual)
                  << " > tolerance " << format_double(r.tolerance) << ")\n";
    return kExitIdentityFailure;
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "deformed-transport: Riemannian geometry from deformed diffeomorphism "
      "groups - curvature, parallel transport and identity verification"};
  app.require_subcommand(1);

  CommonOptions common;
  std::vector<std::string> point_csvs;
  std::string curve_path, vector_csv;
  std::vector<std::string> tol_overrides;
  int steps = 1000;
  int samples = 100;
  bool want_holonomy = false;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--manifold", common.manifold_name,
                    "catalog manifold name (euclidean-N, sphere2, "
                    "hyperbolic2, polar2)");
    sub->add_option("--spec", common.spec_path, "manifold spec JSON file");
    sub->add_option("--seed", common.seed, "sampling seed (default 0)");
    sub->add_option("--out", common.out_path, "write the JSON report here");
  };

  CLI::App* curv = app.add_subcommand(
      "curvature", "connection, curvature and frame structure at points");
  add_common(curv);
  curv->add_option("--point", point_csvs,
                   "point as comma-separated coordinates (repeatable)");

  CLI::App* trans = app.add_subcommand(
      "transport", "parallel transport along a curve, holonomy for loops");
  add_common(trans);
  trans->add_option("--curve", curve_path, "curve JSON file");
  trans->add_option("--vector", vector_csv,
                    "initial frame components (default: first basis vector)");
  trans->add_option("--steps", steps, "integration steps (default 1000)");
  trans->add_flag("--holonomy", want_holonomy,
                  "require a closed loop and report its holonomy");

  CLI::App* ver = app.add_subcommand(
      "verify", "run the structural identity suite and report residuals");
  add_common(ver);
  ver->add_option("--samples", samples, "sample points (default 100)");
  ver->add_option("--tol", tol_overrides,
                  "tolerance override IDENTITY=VALUE (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;  // --help
    std::cerr << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (curv->parsed()) return cmd_curvature(common, point_csvs);
    if (trans->parsed())
      return cmd_transport(common, curve_path, vector_csv, steps,
                           want_holonomy);
    return cmd_verify(common, samples, tol_overrides);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const CurveError& e) {
    std::cerr << "curve error: " << e.what() << "\n";
    return kExitCurve;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
