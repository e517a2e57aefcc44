#pragma once

// Seeded generators and independent oracles shared by the test binaries.

#include "mmp/moments.hpp"

#include <random>

namespace mmp::test {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  Complex cnormal() { return {normal(), normal()}; }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

Matrix random_matrix(Rng& rng, Index rows, Index cols);
HermMatrix random_hermitian(Rng& rng, Index n);
/// Hermitian with spectrum drawn uniformly from [lo, hi].
HermMatrix random_hermitian_spectrum(Rng& rng, Index n, double lo, double hi);
Matrix random_unitary(Rng& rng, Index n);

double max_abs(const Matrix& m);

/// Moments computed term by term with std::pow, independent of moments_of.
std::vector<Matrix> naive_moments(const std::vector<double>& x, const std::vector<Matrix>& w, int l);

/// Block column [P; Q] of a random Hermitian contraction of size p + q, and that contraction.
struct ContractionColumn {
  HermMatrix p;
  Matrix q;
  HermMatrix full;
};
ContractionColumn random_contraction_column(Rng& rng, Index p, Index q);

/// [[P, Q*], [Q, X]].
Matrix completion(const HermMatrix& p, const Matrix& q, const Matrix& x);

/// Smallest and largest admissible X found by sampling: counts accepted
/// candidates and reports the worst Loewner violation against [lo, hi].
struct SampleOutcome {
  int accepted = 0;
  double worst_below = 0.0;  // max over accepted X of -min eig(X - lo)
  double worst_above = 0.0;  // max over accepted X of -min eig(hi - X)
};
SampleOutcome sample_completions(const ContractionColumn& col, const HermMatrix& lo, const HermMatrix& hi,
                                 int samples, std::uint64_t seed);

}  // namespace mmp::test

#include "mmp/operator_model.hpp"

namespace mmp::test {

/// Model with D and R the first p and last q coordinate axes.
ContractionModel model_from_column(const ContractionColumn& col);

}  // namespace mmp::test
