#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dgeo/catalog.hpp"
#include "dgeo/dt_group.hpp"
#include "dgeo/report.hpp"

namespace dgeo {

struct VerifyOptions {
  int samples = 100;
  std::uint64_t seed = 0;
  int probes = 10;
  int commutator_points = 50;
  int closure_points = 25;
  std::map<std::string, double> tolerance_overrides;
};

struct IdentityResult {
  std::string name;
  double max_residual = 0.0;
  int samples = 0;
  double tolerance = 0.0;
  bool pass = false;
  Vec witness;
};

/// Default tolerance for a named identity; throws ConfigError for unknown
/// names (used to validate CLI overrides).
double default_tolerance(const std::string& identity);

/// Runs the full identity suite on sampled points of the manifold:
/// metricity, the commutator form of the structure equations, both exterior
/// structure equations, the two curvature routes against the direct tensor,
/// third-order-coefficient independence, and translation-subgroup closure.
std::vector<IdentityResult> run_verification(const Manifold& manifold,
                                             const VerifyOptions& opts);

bool all_pass(const std::vector<IdentityResult>& results);

Report verification_report(const Manifold& manifold, const VerifyOptions& opts,
                           const std::vector<IdentityResult>& results,
                           bool with_timestamp = true);

/// Frame-index form of a coordinate-index curvature tensor with slots
/// (upper, lower, skew1, skew2).
Tensor4 to_frame_indices(const Tensor4& r_coord, const Mat& frame_fwd,
                         const Mat& frame_inv);

std::string iso_timestamp();

Report report_vec(const Vec& v);
Report report_mat(const Mat& m);
Report report_tensor3(const Tensor3& t);
Report report_tensor4(const Tensor4& t);

}  // namespace dgeo
