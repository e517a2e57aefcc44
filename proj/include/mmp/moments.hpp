#pragma once

// Moment sequences, block Hankel builders and atomic matrix measures.

#include "mmp/numeric.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace mmp {

/// Power moments S_0..S_l of an N x N matrix measure on [a, b].
class MomentSequence {
 public:
  /// Validates a < b, a nonempty list, and a common Hermitian block size.
  MomentSequence(double a, double b, std::vector<HermMatrix> moments);
  /// Scalar (N = 1) convenience constructor.
  static MomentSequence scalar(double a, double b, std::initializer_list<double> moments);

  double a() const { return a_; }
  double b() const { return b_; }
  Index block_size() const { return n_; }
  /// Index of the last moment.
  int l() const { return static_cast<int>(moments_.size()) - 1; }
  const HermMatrix& operator[](int n) const { return moments_.at(static_cast<std::size_t>(n)); }
  const std::vector<HermMatrix>& moments() const { return moments_; }

  MomentSequence appended(const HermMatrix& next) const;
  MomentSequence truncated(int new_l) const;

 private:
  double a_;
  double b_;
  Index n_;
  std::vector<HermMatrix> moments_;
};

enum class HankelKind { Gamma, GammaTilde, H, HTilde, GammaHat };
std::string_view to_string(HankelKind kind);

struct BlockHankel {
  HankelKind kind;
  int k;
  HermMatrix matrix;
};

/// Gamma_k = (S_{i+j})_{i,j=0..k}. Needs 2k <= l.
BlockHankel build_gamma(const MomentSequence& seq, int k);
/// GammaTilde_k = (-ab S_{i+j} + (a+b) S_{i+j+1} - S_{i+j+2})_{i,j=0..k-1}; empty for k = 0.
BlockHankel build_gamma_tilde(const MomentSequence& seq, int k);
/// (H_k, HTilde_k) with blocks -a S_{i+j} + S_{i+j+1} and b S_{i+j} - S_{i+j+1}. Needs 2k+1 <= l.
std::pair<BlockHankel, BlockHankel> build_h_pair(const MomentSequence& seq, int k);
/// GammaHat_{d-1} = (S_{i+j+2})_{i,j=0..d-1}. Needs d >= 1, 2d <= l.
BlockHankel build_gamma_hat(const MomentSequence& seq, int d);

/// Stacked column of blocks [S_from; S_{from+1}; ...; S_{from+count-1}].
Matrix block_column(const MomentSequence& seq, int from, int count);

struct Atom {
  double x;
  HermMatrix weight;
};

/// Finite sum of point masses sum_i W_i delta_{x_i} on [a, b]. The induced
/// distribution function M(x) = sum_{x_i < x} W_i is left-continuous with M(a) = 0.
///
/// Atoms are kept canonical: sorted by position, atoms closer than
/// 1e-12 (b - a) merged, and atoms with ||W_i|| <= 1e-12 ||sum W|| pruned.
class DiscreteMatrixMeasure {
 public:
  /// Canonicalizes, then requires every x_i in [a, b] and every W_i PSD.
  static DiscreteMatrixMeasure make(double a, double b, Index n, std::vector<Atom> atoms);
  /// Canonicalizes only; support and positivity are left for verify() to report.
  static DiscreteMatrixMeasure unchecked(double a, double b, Index n, std::vector<Atom> atoms);

  double a() const { return a_; }
  double b() const { return b_; }
  Index block_size() const { return n_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }

  HermMatrix total_mass() const;
  /// M(x) = sum of W_i over atoms with x_i < x.
  HermMatrix distribution(double x) const;

 private:
  DiscreteMatrixMeasure(double a, double b, Index n, std::vector<Atom> atoms);

  double a_;
  double b_;
  Index n_;
  std::vector<Atom> atoms_;
};

/// S_n = sum_i x_i^n W_i for n = 0..l, with 0^0 = 1.
MomentSequence moments_of(const DiscreteMatrixMeasure& measure, int l);

/// Seeded random measure: positions uniform in (a, b), sorted; weights
/// W_i = G_i* G_i with G_i a complex Gaussian N x N factor.
DiscreteMatrixMeasure gen_random_measure(std::uint64_t seed, Index n, int num_atoms, double a,
                                         double b);

}  // namespace mmp
