#pragma once

#include "dgeo/tensor.hpp"

namespace dgeo {

/// Truncated cubic map R^n -> R^n:
///   P(u)^m = A^m_i u^i + B^m_ij u^i u^j + C^m_ijk u^i u^j u^k
/// with B symmetric in its pair and C totally symmetric in its triple.
/// Composition and inversion are exact polynomial algebra on coefficients,
/// truncated at order three.
struct CubicMap {
  Mat A;
  Tensor3 B;
  Tensor4 C;

  int dim() const { return static_cast<int>(A.rows()); }

  static CubicMap identity(int n);
  static CubicMap zero_higher(Mat a);  // linear map, B = C = 0

  Vec apply(const Vec& u) const;

  /// Jacobian dP/du at u: A + 2 B(.,u) + 3 C(.,u,u).
  Mat jacobian(const Vec& u) const;

  /// Order-three series reversion; requires det A != 0. Composing the result
  /// with *this gives identity coefficients at orders one to three.
  CubicMap inverse() const;
};

/// Truncated composition P after Q.
CubicMap compose(const CubicMap& P, const CubicMap& Q);

/// Order-three expansion data of a deformation map at a base point:
///   H(u)^m = h^m_u [ u^u + 1/2 G^u_vr u^v u^r + 1/6 D^u_vrs u^v u^r u^s ].
/// h is invertible, G symmetric in its pair, D totally symmetric; H(0) = 0
/// holds by construction (no constant term).
struct DeformationJet {
  Vec x;
  Mat h;          // h^m_u
  Tensor3 gamma;  // G^u_vr
  Tensor4 delta;  // D^u_vrs

  int dim() const { return static_cast<int>(h.rows()); }

  static DeformationJet identity(Vec x, int n);

  CubicMap to_cubic() const;
  static DeformationJet from_cubic(Vec x, const CubicMap& c);
};

/// Evaluates the truncated series at a parameter vector.
Vec jet_apply(const DeformationJet& jet, const Vec& u);

/// Truncated inverse series; requires det h != 0.
CubicMap jet_invert(const DeformationJet& jet);

/// Series substitution of two deformations applied one after another
/// (first applies `inner`, then `outer`), truncated at order three.
DeformationJet compose_jets(const DeformationJet& outer,
                            const DeformationJet& inner);

}  // namespace dgeo
