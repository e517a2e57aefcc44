#pragma once

// Self-adjoint contraction extensions of the Hermitian contraction B: the
// extremal pair B^mu ⪯ B^M, the canonical family between them, and the
// generalized resolvent for constant parameters.

#include "mmp/operator_model.hpp"

namespace mmp {

struct ExtensionInterval {
  ContractionModel model;
  /// Lower-right blocks of B^mu and B^M in the D ⊕ R basis.
  HermMatrix x_mu;
  HermMatrix x_max;
  /// Operators on H in the coordinates of the Gram space.
  HermMatrix b_mu;
  HermMatrix b_max;
  HermMatrix c;  // b_max - b_mu
  RealVector b_mu_spectrum;
  bool determinate = true;
  /// dim R_0, the part of R where B^mu and B^M agree.
  Index r0_dim = 0;
  /// Orthonormal basis of range(C) = R ⊖ R_0 (r x s) and the matching eigenvalues of C.
  Matrix support_basis;
  RealVector support_values;

  Index support_dim() const { return support_basis.cols(); }
  Index dim() const { return b_mu.dim(); }
  /// C^{1/2} on H.
  Matrix c_sqrt() const;
};

/// Constant parameter K with 0 ⪯ K ⪯ I on the defect support range(C).
class CanonicalParameter {
 public:
  /// K = t I on whatever support it is applied to; needs t in [0, 1].
  static CanonicalParameter scalar(double t);
  /// Explicit matrix; throws ParameterError unless 0 ⪯ K ⪯ I.
  static CanonicalParameter matrix(const HermMatrix& k);

  /// The matrix on a support of dimension `dim`; ParameterError on mismatch.
  HermMatrix resolve(Index dim) const;
  bool is_scalar() const { return scalar_; }
  double scalar_value() const { return t_; }

 private:
  bool scalar_ = true;
  double t_ = 0.0;
  HermMatrix k_;
};

/// B^mu and B^M via the Schur-complement completions of the column [P; Q]:
///   X_mu = Q (I + P)^+ Q* - I,   X_M = I - Q (I - P)^+ Q*.
/// Throws InternalInconsistencyError if [P; Q] or either completion has norm > 1 + 1e-8.
ExtensionInterval extremal_extensions(const ContractionModel& model);

/// B_K = B^mu + C^{1/2} K C^{1/2}, K extended by zero off range(C).
HermMatrix canonical_extension(const ExtensionInterval& interval, const CanonicalParameter& k);

/// Q_mu(z) = (C^{1/2} (B^mu - z)^{-1} C^{1/2} + I) compressed to R.
Matrix qmu(const ExtensionInterval& interval, Complex z);

/// R~_z = R_z - R_z C^{1/2} K (I + (Q_mu(z) - I) K)^{-1} C^{1/2} R_z with
/// R_z = (B^mu - z)^{-1}; the middle inverse is taken on range(C).
Matrix generalized_resolvent(const ExtensionInterval& interval, const CanonicalParameter& k, Complex z);

/// Same, with K already resolved on the support (no validation); used by the sweep kernels.
Matrix generalized_resolvent_unchecked(const ExtensionInterval& interval, const HermMatrix& k, Complex z);

}  // namespace mmp
