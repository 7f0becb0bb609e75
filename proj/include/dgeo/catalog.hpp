#pragma once

#include <memory>
#include <string>

#include "dgeo/expression.hpp"
#include "dgeo/metric.hpp"

namespace dgeo {

/// A named chart with its metric. The chart is owned behind a stable pointer
/// so fields holding chart references stay valid across copies.
struct Manifold {
  std::string name;
  std::shared_ptr<const Chart> chart;
  MetricField metric;
};

/// Built-in manifolds: "euclidean-N" (N >= 1), "sphere2" (unit 2-sphere),
/// "hyperbolic2" (upper half-plane), "polar2" (flat plane, polar chart).
Manifold make_catalog_manifold(const std::string& name, FdPolicy fd = {});

/// Loads a manifold from a JSON spec file:
///   { "dimension": n, "coordinates": ["x0",...], "domain": [[lo,hi],...],
///     "margins": [...], "metric": [[expr,...],...] }
/// The metric matrix must be given in full; symmetry is validated on sampled
/// points, unknown keys are rejected.
Manifold load_manifold_spec(const std::string& path, FdPolicy fd = {});

/// Same, but parsing an already-read JSON document text.
Manifold parse_manifold_spec(const std::string& text, FdPolicy fd = {});

}  // namespace dgeo
