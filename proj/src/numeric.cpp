#include "mmp/numeric.hpp"

#include "mmp/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace mmp {

HermMatrix HermMatrix::from(const Matrix& m, double rel_tol) {
  if (m.rows() != m.cols()) {
    throw ValidationError(fmt::format("expected a square matrix, got {}x{}", m.rows(), m.cols()));
  }
  if (m.size() > 0) {
    const double scale = m.cwiseAbs().maxCoeff();
    const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (asym > rel_tol * scale) {
      throw ValidationError(
          fmt::format("matrix is not Hermitian: |A - A*| = {:.3e} exceeds {:.1e} * {:.3e}", asym,
                      rel_tol, scale));
    }
  }
  return symmetrized(m);
}

HermMatrix HermMatrix::symmetrized(const Matrix& m) {
  HermMatrix h;
  h.m_ = 0.5 * (m + m.adjoint());
  return h;
}

HermMatrix HermMatrix::identity(Index dim) {
  HermMatrix h;
  h.m_ = Matrix::Identity(dim, dim);
  return h;
}

HermMatrix HermMatrix::diagonal(std::initializer_list<double> entries) {
  HermMatrix h(static_cast<Index>(entries.size()));
  Index i = 0;
  for (double e : entries) {
    h.m_(i, i) = e;
    ++i;
  }
  return h;
}

double HermMatrix::norm() const { return hermitian_eig(*this).abs_max(); }

double HermMatrix::max_abs_entry() const { return m_.size() ? m_.cwiseAbs().maxCoeff() : 0.0; }

HermMatrix HermMatrix::operator+(const HermMatrix& o) const {
  if (dim() != o.dim()) throw ValidationError("dimension mismatch in HermMatrix addition");
  HermMatrix h;
  h.m_ = m_ + o.m_;
  return h;
}

HermMatrix HermMatrix::operator-(const HermMatrix& o) const {
  if (dim() != o.dim()) throw ValidationError("dimension mismatch in HermMatrix subtraction");
  HermMatrix h;
  h.m_ = m_ - o.m_;
  return h;
}

HermMatrix HermMatrix::operator*(double s) const {
  HermMatrix h;
  h.m_ = m_ * s;
  return h;
}

HermMatrix& HermMatrix::operator+=(const HermMatrix& o) {
  if (dim() != o.dim()) throw ValidationError("dimension mismatch in HermMatrix addition");
  m_ += o.m_;
  return *this;
}

HermMatrix HermMatrix::congruence(const Matrix& x) const {
  if (x.rows() != dim()) throw ValidationError("dimension mismatch in congruence");
  return symmetrized(x.adjoint() * m_ * x);
}

double EigDecomposition::abs_max() const {
  return size() ? std::max(std::abs(min()), std::abs(max())) : 0.0;
}

Matrix EigDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

EigDecomposition hermitian_eig(const HermMatrix& a) {
  EigDecomposition out;
  if (a.dim() == 0) {
    out.eigenvalues.resize(0);
    out.eigenvectors.resize(0, 0);
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.mat(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw InternalInconsistencyError("Hermitian eigensolver did not converge");
  }
  out.eigenvalues = solver.eigenvalues();
  out.eigenvectors = solver.eigenvectors();
  return out;
}

double min_eigenvalue(const HermMatrix& a) {
  if (a.dim() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.mat(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

bool check_psd(const HermMatrix& a, double tol) {
  if (a.dim() == 0) return true;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.mat(), Eigen::EigenvaluesOnly);
  const RealVector& ev = solver.eigenvalues();
  const double norm = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  return ev(0) >= -tol * std::max(1.0, norm);
}

namespace {

EigDecomposition psd_eig(const HermMatrix& a, const char* what) {
  EigDecomposition e = hermitian_eig(a);
  if (e.size() && e.min() < -kPsdTol * std::max(1.0, e.abs_max())) {
    throw ValidationError(
        fmt::format("{}: matrix is not PSD (min eigenvalue {:.3e})", what, e.min()));
  }
  return e;
}

}  // namespace

HermMatrix pinv_psd(const HermMatrix& a, double rank_tol) {
  EigDecomposition e = psd_eig(a, "pinv_psd");
  if (e.size() == 0) return a;
  const double cut = rank_tol * std::max(e.max(), 0.0);
  return HermMatrix::symmetrized(
      e.apply([cut](double v) { return (v > cut && v > 0.0) ? 1.0 / v : 0.0; }));
}

HermMatrix sqrt_psd(const HermMatrix& a) {
  EigDecomposition e = psd_eig(a, "sqrt_psd");
  if (e.size() == 0) return a;
  return HermMatrix::symmetrized(e.apply([](double v) { return v > 0.0 ? std::sqrt(v) : 0.0; }));
}

bool loewner_leq(const HermMatrix& a, const HermMatrix& b, double tol) {
  if (a.dim() != b.dim()) {
    throw ValidationError(fmt::format("loewner_leq: dimension mismatch {} vs {}", a.dim(), b.dim()));
  }
  return check_psd(b - a, tol);
}

double op_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

RangeSplit split_range(const HermMatrix& a, double rank_tol) {
  EigDecomposition e = hermitian_eig(a);
  const Index n = e.size();
  const double cut = rank_tol * std::max(e.max(), 0.0);
  Index k = 0;  // eigenvalues ascending: kernel first
  while (k < n && !(e.eigenvalues(k) > cut && e.eigenvalues(k) > 0.0)) ++k;
  RangeSplit s;
  s.kernel = e.eigenvectors.leftCols(k);
  s.kernel_values = e.eigenvalues.head(k);
  s.range = e.eigenvectors.rightCols(n - k);
  s.range_values = e.eigenvalues.tail(n - k);
  return s;
}

Matrix kernel_basis(const HermMatrix& a, double rank_tol) { return split_range(a, rank_tol).kernel; }

}  // namespace mmp
