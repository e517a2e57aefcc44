#pragma once

// Solution measures from self-adjoint contraction extensions, and their verification.

#include "mmp/extensions.hpp"
#include "mmp/solvability.hpp"

namespace mmp {

/// Spectral data of an extension seen through the probe vectors x_0..x_{N-1}:
/// distinct eigenvalues (clustered) and the N x N weights <Pi_i x_j, x_n>.
struct SpectralData {
  std::vector<double> eigenvalues;
  std::vector<HermMatrix> weights;
};

/// Eigenvalues closer than `cluster_tol` share one eigenprojection.
SpectralData spectral_data(const HermMatrix& extension, const Matrix& probes, double cluster_tol = 1e-9);

struct VerificationReport {
  bool pass = false;
  /// Max entrywise |moments_of(measure)_n - S_n| per n, and the allowed value tol * max(1, ||S_n||).
  std::vector<double> deviations;
  std::vector<double> thresholds;
  bool moments_ok = false;
  bool support_ok = false;
  bool weights_psd = false;
  bool block_size_ok = false;
  double worst_ratio = 0.0;
};

VerificationReport verify(const DiscreteMatrixMeasure& measure, const MomentSequence& seq, double tol = 1e-8);

struct SolveOptions {
  SolvabilityOptions solvability{};
  double gram_rank_tol = kGramRankTol;
  double domain_floor_factor = kDomainFloorFactor;
  /// Absolute error already present in the moments; see GramSpace::data_noise.
  double data_noise = 0.0;
  double verify_tol = 1e-8;
};

/// Everything the odd-case pipeline builds before choosing a parameter.
struct OddPipeline {
  SolvabilityReport report;
  ExtensionInterval interval;
};

/// check_odd, Gram space, operators and extremal extensions. Throws UnsolvableError.
OddPipeline build_odd_pipeline(const MomentSequence& seq, const SolveOptions& opt = {});

/// Atoms x_i = ((b-a)/2) lambda_i + (a+b)/2 from the spectral data of an extension.
DiscreteMatrixMeasure measure_from_extension(const GramSpace& gram, const HermMatrix& extension);

/// l = 2d: measure generated by the canonical extension B_K. Verified before return.
DiscreteMatrixMeasure solve_odd(const MomentSequence& seq, const CanonicalParameter& k, const SolveOptions& opt = {});

/// S_{2d+2} = S_min + D^{1/2} T D^{1/2}, D = S_max - S_min, for 0 ⪯ T ⪯ I.
HermMatrix select_next_moment(const EvenCaseData& data, const CanonicalParameter& t);

/// l = 2d+1: append the S_{2d+2} selected by T and solve the odd problem with K.
DiscreteMatrixMeasure solve_even(const MomentSequence& seq, const CanonicalParameter& t,
                                 const CanonicalParameter& k, const SolveOptions& opt = {});

/// l = 0: the single atom ((a+b)/2, S_0); empty when S_0 = 0.
DiscreteMatrixMeasure solve_l0(const HermMatrix& s0, double a, double b);

/// Dispatches on l; T is ignored for l even, K for l = 0.
DiscreteMatrixMeasure solve(const MomentSequence& seq, const CanonicalParameter& k, const CanonicalParameter& t,
                            const SolveOptions& opt = {});

}  // namespace mmp
