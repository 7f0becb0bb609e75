#pragma once

#include <vector>

#include "dgeo/transport.hpp"

namespace dgeo {

/// An element of the parallel-transport automorphism group: a translation
/// field plus a gauge linear field, both over the chart.
struct DTElement {
  Field<Vec> t;
  Field<Mat> L;
};

struct DTValue {
  Vec t;
  Mat L;
};

DTElement dt_identity(int dimension);
DTElement dt_pure_translation(GroupElement t, int dimension);
DTElement dt_pure_gauge(Field<Mat> L, int dimension);

struct DTProduct {
  DTValue value;
  Vec x_prime;
};

/// Group law: translation part is the deformed-group product; the linear
/// part is the five-factor product
///   L(x) lam(x,t) L'(x') lam(x',t') lam(x, t*t')^{-1}.
/// Identity factors short-circuit so the group identities hold exactly.
DTProduct dt_multiply(const DeformationField& def, const DTElement& g,
                      const DTElement& gp, const Vec& x);

/// Field-level product (lazy evaluation of the law at every point).
DTElement dt_multiply(const DeformationField& def, const DTElement& g,
                      const DTElement& gp);

struct InverseTranslation {
  Vec t_inv;    // inverse translation parameter at x
  Vec x_tilde;  // image of x under the inverse translation
};

/// Solves the inverse-element condition for the translation sector by fixed
/// point through the truncated jets: the displacement u with
/// x~ = x + u and H^-1_{x~}(t(x~)) = -u; then t_inv = H_x(u).
InverseTranslation inverse_translation(const DeformationField& def,
                                       const Field<Vec>& t, const Vec& x);

/// Group inverse of a DT element (lazy field).
DTElement dt_inverse(const DeformationField& def, const DTElement& g);

/// Action on tangent vectors: L(x) lam(x, t(x)) tau(x').
Vec dt_action_vector(const DeformationField& def, const DTElement& g,
                     const Field<Vec>& tau_frame, const Vec& x);

/// Action on affine frames (columns are frame vectors in coordinates):
///   h_par(x) = h(x) lam^-1(x~, t(x~)) L^-1(x~),  x~ = f(x, t^-1(x)).
Mat dt_action_frame(const DeformationField& def, const DTElement& g,
                    const FrameField& frame, const Vec& x);

/// Structure functions of the group in the translation sector and the mixed
/// gauge sector. Both antisymmetric in (k, l) bit-exactly; the gauge sector
/// carries the curvature tensor.
struct DTStructure {
  Tensor3 translation;  // F^m_kl
  Tensor4 gauge;        // F^m_n,kl  with slots (m, n, k, l)
};

DTStructure dt_structure(const DeformationField& def, const Vec& x);

/// Covariant derivative of a frame-component vector field along frame
/// direction k: X_k tau^m + gamma^m_kn tau^n.
Vec frame_covariant_derivative(const DeformationField& def,
                               const Field<Vec>& tau_frame, const Vec& x,
                               int k);

/// Max residual of the operator commutation identity
///   [nabla_k, nabla_l] tau = F^s_kl nabla_s tau + F^m_n,kl tau^n
/// over one direction pair and a set of probe fields.
double commutator_residual(const DeformationField& def, const Vec& x, int k,
                           int l, const std::vector<Field<Vec>>& probes);

/// Max over all direction pairs.
double commutator_residual(const DeformationField& def, const Vec& x,
                           const std::vector<Field<Vec>>& probes);

/// Residuals of the first and second structure equations of a torsion-free
/// curved space, with the exterior derivative realized by antisymmetrized
/// finite differences of the form coefficients.
struct CartanResidual {
  Tensor3 torsion;    // d w^m - w^n ^ w^m_n           (slots m, u, v)
  Tensor4 curvature;  // d w^m_n - w^k_n ^ w^m_k - R^m_n (slots m, n, u, v)
};

CartanResidual cartan_residual(const DeformationField& def, const Vec& x);

/// Gauge transform of the frame-basis connection under a linear field:
///   gbar^n_sm = L^n_k ( g^k_rl Linv^r_s Linv^l_m
///                       + Linv^r_s h^sig_r d_sig Linv^k_m ).
Tensor3 gauge_transformed_gamma(const DeformationField& def,
                                const Field<Mat>& L, const Vec& x);

struct ClosureReport {
  bool closed;           // linear parts stay at identity on all samples
  double max_deviation;  // max |linear - I| seen
  Vec witness;           // point of max deviation
};

/// Composes two pure-translation elements at each sample and reports whether
/// the linear part stays within `tol` of identity. On curved charts the
/// witness shows where closure fails.
ClosureReport dt_subgroup_closure_check(const DeformationField& def,
                                        const std::vector<Vec>& samples,
                                        double amplitude = 0.02,
                                        std::uint64_t seed = 7,
                                        double tol = 1e-6);

/// Deterministic smooth translation field bounded by `amplitude`.
GroupElement smooth_translation_field(const Chart& chart, double amplitude,
                                      std::uint64_t seed);

/// Deterministic smooth gauge field L = I + amplitude * M with |M| <= 1.
Field<Mat> smooth_gauge_field(const Chart& chart, double amplitude,
                              std::uint64_t seed);

}  // namespace dgeo
