#include "support.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace mmp::test {

Matrix random_matrix(Rng& rng, Index rows, Index cols) {
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = rng.cnormal();
  return m;
}

HermMatrix random_hermitian(Rng& rng, Index n) {
  const Matrix g = random_matrix(rng, n, n);
  return HermMatrix::symmetrized((g + g.adjoint()) * 0.5);
}

Matrix random_unitary(Rng& rng, Index n) {
  Eigen::HouseholderQR<Matrix> qr(random_matrix(rng, n, n));
  return qr.householderQ() * Matrix::Identity(n, n);
}

HermMatrix random_hermitian_spectrum(Rng& rng, Index n, double lo, double hi) {
  const Matrix u = random_unitary(rng, n);
  RealVector ev(n);
  for (Index i = 0; i < n; ++i) ev(i) = rng.uniform(lo, hi);
  return HermMatrix::symmetrized(u * ev.cast<Complex>().asDiagonal() * u.adjoint());
}

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

std::vector<Matrix> naive_moments(const std::vector<double>& x, const std::vector<Matrix>& w, int l) {
  const Index n = w.empty() ? 0 : w.front().rows();
  std::vector<Matrix> out(static_cast<std::size_t>(l + 1), Matrix::Zero(n, n));
  for (int k = 0; k <= l; ++k)
    for (std::size_t i = 0; i < x.size(); ++i) out[static_cast<std::size_t>(k)] += (k == 0 ? 1.0 : std::pow(x[i], k)) * w[i];
  return out;
}

ContractionColumn random_contraction_column(Rng& rng, Index p, Index q) {
  HermMatrix full = random_hermitian(rng, p + q);
  Eigen::SelfAdjointEigenSolver<Matrix> es(full.mat());
  const double scale = es.eigenvalues().cwiseAbs().maxCoeff();
  // a third of the instances sit on the unit sphere, the rest strictly inside
  const double target = rng.integer(0, 2) == 0 ? 1.0 : rng.uniform(0.3, 0.99);
  full = full * (target / scale);
  ContractionColumn col;
  col.full = full;
  col.p = HermMatrix::symmetrized(full.mat().topLeftCorner(p, p));
  col.q = full.mat().bottomLeftCorner(q, p);
  return col;
}

Matrix completion(const HermMatrix& p, const Matrix& q, const Matrix& x) {
  const Index n = p.dim(), m = x.rows();
  Matrix full(n + m, n + m);
  full.topLeftCorner(n, n) = p.mat();
  full.topRightCorner(n, m) = q.adjoint();
  full.bottomLeftCorner(m, n) = q;
  full.bottomRightCorner(m, m) = x;
  return full;
}

SampleOutcome sample_completions(const ContractionColumn& col, const HermMatrix& lo, const HermMatrix& hi, int samples,
                                 std::uint64_t seed) {
  const Index m = col.q.rows();
  const Matrix x0 = col.full.mat().bottomRightCorner(m, m);
  const double scales[] = {1.0, 0.1, 0.01};
  SampleOutcome out;
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const Matrix x = x0 + scales[s % 3] * random_hermitian(rng, m).mat();
    Eigen::SelfAdjointEigenSolver<Matrix> es(completion(col.p, col.q, x), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().cwiseAbs().maxCoeff() > 1.0) continue;
    ++out.accepted;
    Eigen::SelfAdjointEigenSolver<Matrix> below(x - lo.mat(), Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Matrix> above(hi.mat() - x, Eigen::EigenvaluesOnly);
    out.worst_below = std::max(out.worst_below, -below.eigenvalues()(0));
    out.worst_above = std::max(out.worst_above, -above.eigenvalues()(0));
  }
  return out;
}

}  // namespace mmp::test

namespace mmp::test {

ContractionModel model_from_column(const ContractionColumn& col) {
  const Index p = col.p.dim(), q = col.q.rows();
  ContractionModel m;
  m.gram.rank = p + q;
  m.domain_basis = Matrix::Identity(p + q, p + q).leftCols(p);
  m.complement_basis = Matrix::Identity(p + q, p + q).rightCols(q);
  m.p = col.p;
  m.q = col.q;
  return m;
}

}  // namespace mmp::test
