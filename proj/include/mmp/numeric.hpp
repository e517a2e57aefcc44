#pragma once

// Dense Hermitian linear algebra over std::complex<double>.

#include <Eigen/Dense>

#include <complex>
#include <initializer_list>

namespace mmp {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kPsdTol = 1e-10;
inline constexpr double kRankTol = 1e-10;
// Relative slack, against the max absolute entry, for accepting a matrix as Hermitian.
inline constexpr double kHermitianTol = 1e-12;

/// Complex Hermitian matrix. Construction validates the Hermitian property
/// and stores the exactly symmetrized value (A + A*)/2, so downstream code
/// can rely on exact conjugate symmetry. The 0x0 matrix is a legal value.
class HermMatrix {
 public:
  HermMatrix() = default;
  explicit HermMatrix(Index dim) : m_(Matrix::Zero(dim, dim)) {}

  /// Throws ValidationError if `m` is not square or deviates from its
  /// adjoint by more than `rel_tol` times its largest absolute entry.
  static HermMatrix from(const Matrix& m, double rel_tol = kHermitianTol);
  /// Symmetrizes without checking; for values Hermitian up to roundoff.
  static HermMatrix symmetrized(const Matrix& m);
  static HermMatrix identity(Index dim);
  static HermMatrix diagonal(std::initializer_list<double> entries);
  static HermMatrix scalar(double value) { return diagonal({value}); }

  const Matrix& mat() const { return m_; }
  Index dim() const { return m_.rows(); }
  Complex operator()(Index i, Index j) const { return m_(i, j); }

  /// Spectral norm (largest |eigenvalue|).
  double norm() const;
  double max_abs_entry() const;

  HermMatrix operator+(const HermMatrix& o) const;
  HermMatrix operator-(const HermMatrix& o) const;
  HermMatrix operator*(double s) const;
  HermMatrix& operator+=(const HermMatrix& o);

  /// X* A X, symmetrized.
  HermMatrix congruence(const Matrix& x) const;

 private:
  Matrix m_;
};

inline HermMatrix operator*(double s, const HermMatrix& a) { return a * s; }

struct EigDecomposition {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // orthonormal columns

  Index size() const { return eigenvalues.size(); }
  double min() const { return size() ? eigenvalues(0) : 0.0; }
  double max() const { return size() ? eigenvalues(size() - 1) : 0.0; }
  double abs_max() const;
  Matrix reconstruct() const;
  /// V f(Λ) V* for a real function applied to the eigenvalues.
  template <typename F>
  Matrix apply(F&& f) const {
    RealVector mapped = eigenvalues.unaryExpr(f);
    return eigenvectors * mapped.asDiagonal() * eigenvectors.adjoint();
  }
};

EigDecomposition hermitian_eig(const HermMatrix& a);

/// True iff the smallest eigenvalue is >= -tol * max(1, ||A||).
bool check_psd(const HermMatrix& a, double tol = kPsdTol);
double min_eigenvalue(const HermMatrix& a);

/// Moore-Penrose pseudo-inverse of a PSD matrix. Eigenvalues below
/// rank_tol * lambda_max are treated as zero. Throws ValidationError when A
/// has a negative eigenvalue beyond the PSD slack.
HermMatrix pinv_psd(const HermMatrix& a, double rank_tol = kRankTol);

/// Unique PSD square root; tiny negative eigenvalues within the PSD slack are clamped.
HermMatrix sqrt_psd(const HermMatrix& a);

/// A ⪯ B in the Loewner order, i.e. B - A is PSD within tol.
bool loewner_leq(const HermMatrix& a, const HermMatrix& b, double tol = kPsdTol);

// ---- general helpers -------------------------------------------------------

/// Operator 2-norm of an arbitrary (possibly empty) complex matrix.
double op_norm(const Matrix& m);

/// Orthonormal basis of the eigenvectors of A with eigenvalue below
/// rank_tol * max(lambda_max, 0); the numerical kernel.
Matrix kernel_basis(const HermMatrix& a, double rank_tol = kRankTol);

/// Split of an orthonormal eigenbasis into range and kernel parts under the
/// shared relative cutoff.
struct RangeSplit {
  Matrix range;            // columns spanning the numerical range
  RealVector range_values;  // eigenvalues belonging to `range`
  Matrix kernel;           // orthonormal complement
  RealVector kernel_values;
};
RangeSplit split_range(const HermMatrix& a, double rank_tol = kRankTol);

}  // namespace mmp
