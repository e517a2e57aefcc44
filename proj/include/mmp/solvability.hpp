#pragma once

// Solvability criteria for the truncated matricial moment problem on [a, b].

#include "mmp/moments.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mmp {

enum class ProblemCase { L0, Odd, Even };
std::string_view to_string(ProblemCase c);

struct SolvabilityOptions {
  double psd_tol = kPsdTol;
  double rank_tol = kRankTol;
  /// Absolute part (relative to max(1, ||GammaHat||)) of the kernel-inclusion test.
  double kernel_tol = 1e-8;
  /// Relative residual allowed for the linear systems of the even case.
  double residual_tol = 1e-8;
};

struct Condition {
  std::string name;
  bool passed;
  /// Diagnostic value: min eigenvalue for PSD tests, residual for consistency tests.
  double value;
  double threshold;
};

/// Data of the even case l = 2d+1: minimal-norm solutions X, Y of the two
/// block systems and the admissible interval [s_min, s_max] for S_{2d+2}.
struct EvenCaseData {
  Matrix x;
  Matrix y;
  HermMatrix s_min;
  HermMatrix s_max;
  /// Estimated absolute rounding error of s_min and s_max.
  double rounding = 0.0;
};

struct SolvabilityReport {
  bool solvable = false;
  ProblemCase problem_case = ProblemCase::L0;
  int d = 0;
  std::vector<Condition> conditions;
  std::optional<EvenCaseData> even;
  /// Verdict of the CDFK block Hankel pair; equals `solvable` when not applicable (l = 0).
  bool cdfk_solvable = false;
  bool criteria_agreement = true;
  /// The two criteria still disagree after widening every tolerance to 1e-8.
  bool hard_disagreement = false;

  std::vector<std::string> failed_conditions() const;
  const Condition* find(std::string_view name) const;
};

namespace condition {
inline constexpr std::string_view kS0Psd = "S0 PSD";
inline constexpr std::string_view kGammaPsd = "Gamma PSD";
inline constexpr std::string_view kGammaTildePsd = "GammaTilde PSD";
inline constexpr std::string_view kKernelInclusion = "kernel inclusion";
inline constexpr std::string_view kXSystem = "X-system consistent";
inline constexpr std::string_view kYSystem = "Y-system consistent";
inline constexpr std::string_view kInterval = "S-interval nonempty";
}  // namespace condition

/// l = 2d, d >= 1: Gamma_d ⪰ 0, GammaTilde_d ⪰ 0 and Ker Gamma_{d-1} ⊆ Ker GammaHat_{d-1}.
SolvabilityReport check_odd(const MomentSequence& seq, const SolvabilityOptions& opt = {});
/// l = 2d+1, d >= 0: PSD of Gamma_d, GammaTilde_d, consistency of the X and Y
/// systems, and X*Gamma_d X ⪯ -ab S_2d + (a+b) S_2d+1 - Y*GammaTilde_d Y.
SolvabilityReport check_even(const MomentSequence& seq, const SolvabilityOptions& opt = {});
/// l = 0: S_0 ⪰ 0.
SolvabilityReport check_l0(const HermMatrix& s0, const SolvabilityOptions& opt = {});
/// Dispatches on l.
SolvabilityReport check(const MomentSequence& seq, const SolvabilityOptions& opt = {});

/// CDFK criterion: Gamma_d, GammaTilde_d ⪰ 0 for l = 2d; H_d, HTilde_d ⪰ 0 for l = 2d+1. Needs l >= 1.
bool check_cdfk(const MomentSequence& seq, double psd_tol = kPsdTol);

/// Result of the kernel-inclusion test on a pair (Gamma_{d-1}, GammaHat_{d-1}).
struct KernelInclusion {
  bool holds;
  double worst_ratio;  // max over kernel vectors of residual / allowed
};

/// Tests ||GammaHat z|| against a per-vector bound for each vector z of the
/// numerical kernel of Gamma_{d-1}. For data coming from a measure on [a, b],
/// ||GammaHat z||^2 <= ||GammaHat|| z*GammaHat z <= ||GammaHat|| c^2 mu with
/// c = max(|a|, |b|) and mu = z*Gamma_{d-1} z, so the bound is
/// c sqrt(||GammaHat|| mu) plus an absolute kernel_tol * max(1, ||GammaHat||).
KernelInclusion kernel_inclusion(const HermMatrix& gamma_prev, const HermMatrix& gamma_hat,
                                 double scale_c, const SolvabilityOptions& opt = {});

}  // namespace mmp
