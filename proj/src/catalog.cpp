#include "dgeo/catalog.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "dgeo/errors.hpp"
#include "nlohmann/json.hpp"

namespace dgeo {
namespace {

using nlohmann::json;

Manifold from_closure(std::string name, std::vector<Interval> domain,
                      std::function<Mat(const Vec&)> g, FdPolicy fd) {
  Manifold m;
  m.name = std::move(name);
  m.chart = std::make_shared<Chart>(std::move(domain), fd);
  Field<Mat> comp;
  comp.eval = std::move(g);
  comp.fd = m.chart->fd().first();
  m.metric = MetricField(*m.chart, std::move(comp));
  return m;
}

Manifold make_euclidean(int n, FdPolicy fd) {
  if (n < 1) throw ConfigError("euclidean-N needs N >= 1");
  std::vector<Interval> dom(n, Interval{-1.5, 1.5});
  return from_closure(
      "euclidean-" + std::to_string(n), std::move(dom),
      [n](const Vec&) { return Mat(Mat::Identity(n, n)); }, fd);
}

Manifold make_sphere2(FdPolicy fd) {
  return from_closure(
      "sphere2", {{0.1, M_PI - 0.1}, {0.1, 2.0 * M_PI - 0.1}},
      [](const Vec& x) {
        Mat g = Mat::Zero(2, 2);
        g(0, 0) = 1.0;
        const double s = std::sin(x[0]);
        g(1, 1) = s * s;
        return g;
      },
      fd);
}

Manifold make_hyperbolic2(FdPolicy fd) {
  return from_closure(
      "hyperbolic2", {{-2.0, 2.0}, {0.5, 5.0}},
      [](const Vec& x) {
        Mat g = Mat::Zero(2, 2);
        const double w = 1.0 / (x[1] * x[1]);
        g(0, 0) = w;
        g(1, 1) = w;
        return g;
      },
      fd);
}

Manifold make_polar2(FdPolicy fd) {
  return from_closure(
      "polar2", {{0.4, 2.2}, {0.1, 2.0 * M_PI - 0.1}},
      [](const Vec& x) {
        Mat g = Mat::Zero(2, 2);
        g(0, 0) = 1.0;
        g(1, 1) = x[0] * x[0];
        return g;
      },
      fd);
}

void require_keys(const json& obj, std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional) {
  for (const char* k : required)
    if (!obj.contains(k))
      throw ConfigError(std::string("manifold spec: missing key '") + k + "'");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : required) known = known || it.key() == k;
    for (const char* k : optional) known = known || it.key() == k;
    if (!known)
      throw ConfigError("manifold spec: unknown key '" + it.key() + "'");
  }
}

}  // namespace

Manifold make_catalog_manifold(const std::string& name, FdPolicy fd) {
  if (name == "sphere2") return make_sphere2(fd);
  if (name == "hyperbolic2") return make_hyperbolic2(fd);
  if (name == "polar2") return make_polar2(fd);
  constexpr std::string_view prefix = "euclidean-";
  if (name.rfind(prefix, 0) == 0) {
    int n = 0;
    const char* first = name.data() + prefix.size();
    const char* last = name.data() + name.size();
    auto [p, ec] = std::from_chars(first, last, n);
    if (ec == std::errc{} && p == last) return make_euclidean(n, fd);
  }
  throw ConfigError("unknown catalog manifold '" + name +
                    "' (expected euclidean-N, sphere2, hyperbolic2, polar2)");
}

Manifold parse_manifold_spec(const std::string& text, FdPolicy fd) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("manifold spec: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("manifold spec: expected an object");
  require_keys(doc, {"dimension", "coordinates", "domain", "metric"},
               {"margins", "name"});

  if (!doc["dimension"].is_number_integer())
    throw ConfigError("manifold spec: 'dimension' must be an integer");
  const int n = doc["dimension"].get<int>();
  if (n < 1) throw ConfigError("manifold spec: dimension must be >= 1");

  const auto& coords = doc["coordinates"];
  if (!coords.is_array() || static_cast<int>(coords.size()) != n)
    throw ConfigError("manifold spec: 'coordinates' must list n names");
  for (int i = 0; i < n; ++i) {
    const std::string expect = "x" + std::to_string(i);
    if (!coords[i].is_string() || coords[i].get<std::string>() != expect)
      throw ConfigError("manifold spec: coordinate " + std::to_string(i) +
                        " must be named '" + expect + "'");
  }

  const auto& dom = doc["domain"];
  if (!dom.is_array() || static_cast<int>(dom.size()) != n)
    throw ConfigError("manifold spec: 'domain' must list n intervals");
  std::vector<Interval> intervals;
  for (int i = 0; i < n; ++i) {
    const auto& iv = dom[i];
    if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number() ||
        !iv[1].is_number())
      throw ConfigError("manifold spec: domain entries must be [lo, hi]");
    intervals.push_back(Interval{iv[0].get<double>(), iv[1].get<double>()});
    if (!(intervals.back().lo < intervals.back().hi))
      throw ConfigError("manifold spec: domain interval " + std::to_string(i) +
                        " must satisfy lo < hi");
  }

  std::vector<double> margins;
  if (doc.contains("margins")) {
    const auto& ms = doc["margins"];
    if (!ms.is_array() || static_cast<int>(ms.size()) != n)
      throw ConfigError("manifold spec: 'margins' must list n values");
    for (int i = 0; i < n; ++i) {
      if (!ms[i].is_number())
        throw ConfigError("manifold spec: margins must be numbers");
      margins.push_back(ms[i].get<double>());
    }
  } else {
    for (const Interval& iv : intervals) margins.push_back(1e-3 * iv.length());
  }

  const auto& metric = doc["metric"];
  if (!metric.is_array() || static_cast<int>(metric.size()) != n)
    throw ConfigError("manifold spec: 'metric' must be an n-by-n matrix");
  std::vector<std::vector<Expression::Ptr>> entries(n);
  for (int i = 0; i < n; ++i) {
    const auto& row = metric[i];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw ConfigError("manifold spec: metric row " + std::to_string(i) +
                        " must have n entries");
    for (int j = 0; j < n; ++j) {
      if (!row[j].is_string())
        throw ConfigError("manifold spec: metric entries must be expression strings");
      try {
        entries[i].push_back(parse_expression(row[j].get<std::string>(), n));
      } catch (const ParseError& e) {
        throw ConfigError("manifold spec: metric[" + std::to_string(i) + "][" +
                          std::to_string(j) + "]: " + e.what());
      }
    }
  }

  Manifold m;
  m.name = doc.contains("name") ? doc["name"].get<std::string>() : "spec";
  m.chart =
      std::make_shared<Chart>(std::move(intervals), std::move(margins), fd);
  Field<Mat> comp;
  comp.fd = m.chart->fd().first();
  comp.eval = [entries, n](const Vec& x) {
    Mat g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = evaluate(entries[i][j], x);
    return g;
  };
  m.metric = MetricField(*m.chart, std::move(comp));

  // Symmetry must hold exactly under IEEE evaluation of the given entries.
  for (const Vec& x : m.chart->sample(25, 0)) {
    const Mat g = m.metric.at(x);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (g(i, j) != g(j, i))
          throw ConfigError(
              "manifold spec: metric is not symmetric: entries (" +
              std::to_string(i) + "," + std::to_string(j) + ") and (" +
              std::to_string(j) + "," + std::to_string(i) +
              ") disagree at a sampled point");
    m.metric.validate_at(x);
  }
  return m;
}

Manifold load_manifold_spec(const std::string& path, FdPolicy fd) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open manifold spec file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_manifold_spec(ss.str(), fd);
}

}  // namespace dgeo
