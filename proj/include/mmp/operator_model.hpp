#pragma once

// Gram-space realization of Gamma_d and the Hermitian contraction B built on it.

#include "mmp/moments.hpp"

namespace mmp {

/// Vectors x_0..x_{(d+1)N-1} in C^r whose Gram matrix is Gamma_d under the
/// inner product <u, v> = sum_i u_i conj(v_i), i.e. <x_n, x_m> = gamma_{n,m}.
/// They span C^r, r being the numerical rank of Gamma_d.
struct GramSpace {
  double a = 0.0;
  double b = 1.0;
  int d = 0;
  Index block_size = 0;
  Index rank = 0;
  Matrix vectors;  // r x (d+1)N, column n is x_n
  /// Largest |eigenvalue| of Gamma_d left out of the factorization, floored at rounding level.
  double noise_floor = 0.0;
  /// Absolute error carried by the moments themselves, zero for exact data.
  double data_noise = 0.0;

  /// <x_n, x_m> for all n, m, laid out as an ((d+1)N)^2 matrix.
  Matrix gram() const { return vectors.transpose() * vectors.conjugate(); }
  /// First N vectors x_0..x_{N-1}.
  Matrix probes() const { return vectors.leftCols(block_size); }
};

/// Hermitian contraction B in block form with respect to H = D ⊕ R, where
/// D = span{x_0..x_{dN-1}} is the domain and R its orthogonal complement.
/// `p` = D* B D and `q` = R* B D; the block column [P; Q] is B on D.
struct ContractionModel {
  GramSpace gram;
  Matrix domain_basis;      // r x dim D, orthonormal
  Matrix complement_basis;  // r x dim R, orthonormal
  HermMatrix p;
  Matrix q;
  /// ||G_s (I - G_a^+ G_a)|| and the threshold it was tested against.
  double well_defined_residual = 0.0;
  double well_defined_threshold = 0.0;

  Index domain_dim() const { return domain_basis.cols(); }
  Index defect_dim() const { return complement_basis.cols(); }
  bool no_defect() const { return defect_dim() == 0; }
  /// Unitary [D R].
  Matrix basis() const;
  /// B on D in the coordinates of H: (r x dim D) matrix B D.
  Matrix column() const;
};

/// Relative eigenvalue cutoff of the Gram factorization. Lower than kRankTol:
/// eigenvalues of Gamma_d between the two are genuine for data from a measure,
/// and dropping them breaks B x_n = x_{n+N} at the square root of their size.
inline constexpr double kGramRankTol = 1e-13;
/// Squared singular values of G_a must exceed this multiple of the Gram noise floor.
inline constexpr double kDomainFloorFactor = 100.0;
/// How far ||B|| and the extremal completions may exceed 1 before the model is
/// rejected. Boundary data (an endpoint of the S-interval) sits at this level.
inline constexpr double kContractionSlack = 1e-5;

/// Rank-revealing factorization of Gamma_d (l = 2d). Throws ValidationError
/// when Gamma_d is not PSD (beyond `data_noise`) and ParityError for odd l or l < 2.
GramSpace build_gram_space(const MomentSequence& seq, double rank_tol = kGramRankTol, double data_noise = 0.0);

/// Constructs A: G_a alpha -> G_s alpha and B = (2/(b-a)) A - ((a+b)/(b-a)) I on D.
/// Throws IllDefinedOperatorError when G_s does not annihilate the kernel of G_a.
ContractionModel build_operators(const GramSpace& gram, double floor_factor = kDomainFloorFactor);

}  // namespace mmp
