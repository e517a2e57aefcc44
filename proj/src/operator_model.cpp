#include "mmp/operator_model.hpp"

#include "mmp/errors.hpp"

#include <fmt/format.h>

#include <limits>

#include <algorithm>
#include <cmath>

namespace mmp {

namespace {
constexpr double kRounding = 64.0 * std::numeric_limits<double>::epsilon();
}  // namespace

Matrix ContractionModel::basis() const {
  Matrix u(domain_basis.rows(), domain_dim() + defect_dim());
  u << domain_basis, complement_basis;
  return u;
}

Matrix ContractionModel::column() const { return domain_basis * p.mat() + complement_basis * q; }

GramSpace build_gram_space(const MomentSequence& seq, double rank_tol, double data_noise) {
  if (seq.l() < 2 || seq.l() % 2 != 0) {
    throw ParityError(fmt::format("Gram space needs l = 2d with d >= 1, got l = {}", seq.l()));
  }
  GramSpace g;
  g.a = seq.a();
  g.b = seq.b();
  g.d = seq.l() / 2;
  g.block_size = seq.block_size();
  g.data_noise = data_noise;
  const HermMatrix gamma = build_gamma(seq, g.d).matrix;
  const RangeSplit split = split_range(gamma, rank_tol);
  const double lowest = split.kernel_values.size() ? split.kernel_values.minCoeff() : 0.0;
  if (!check_psd(gamma) && lowest < -data_noise) {
    throw ValidationError("Gamma_d is not PSD; no Gram realization exists");
  }

  g.rank = split.range.cols();
  // Gamma = V L V*; with x_n[i] = sqrt(l_i) V[n, i] we get sum_i x_n[i] conj(x_m[i]) = gamma_{n,m}.
  const RealVector roots = split.range_values.cwiseSqrt();
  g.vectors = roots.cast<Complex>().asDiagonal() * split.range.transpose();
  const double dropped = split.kernel_values.size() ? split.kernel_values.cwiseAbs().maxCoeff() : 0.0;
  const double top = split.range_values.size() ? split.range_values.maxCoeff() : 0.0;
  g.noise_floor = std::max(dropped, kRounding * static_cast<double>(gamma.dim()) * top);
  return g;
}

ContractionModel build_operators(const GramSpace& gram, double floor_factor) {
  const Index n = gram.block_size;
  const Index dn = gram.d * n;
  const Index r = gram.rank;
  if (gram.vectors.cols() != (gram.d + 1) * n) throw ValidationError("Gram space has the wrong number of vectors");

  ContractionModel m;
  m.gram = gram;
  if (r == 0) {
    m.domain_basis.resize(0, 0);
    m.complement_basis.resize(0, 0);
    m.p = HermMatrix(0);
    m.q.resize(0, 0);
    return m;
  }

  const Matrix g_a = gram.vectors.leftCols(dn);
  const Matrix g_s = gram.vectors.middleCols(n, dn);
  const double scale = std::max(std::abs(gram.a), std::abs(gram.b));
  const double g_norm = op_norm(gram.vectors);

  Eigen::JacobiSVD<Matrix> svd(g_a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector& sigma = svd.singularValues();
  // G_a* G_a reproduces Gamma_{d-1} up to the noise floor of the factorization, and
  // Gamma_{d-1} may carry genuine eigenvalues below the Gamma_d cutoff, so the domain
  // rank is decided against that floor.
  const double cut = std::sqrt(floor_factor * gram.noise_floor);
  Index p = 0;
  while (p < sigma.size() && sigma(p) > cut) ++p;

  // Well-definedness: on exact data ||G_s v|| <= max(|a|,|b|) ||G_a v|| for every v,
  // so discarded directions may only leak in proportion to their singular value.
  m.well_defined_residual = 0.0;
  m.well_defined_threshold = 0.0;
  double worst = 0.0;
  const Matrix& v = svd.matrixV();
  for (Index k = p; k < dn; ++k) {
    const double sv = k < sigma.size() ? sigma(k) : 0.0;
    const double leak = (g_s * v.col(k)).norm();
    const double allowed = scale * sv * (1.0 + 1e-6) + 1e-8 * std::max(1.0, g_norm) + std::sqrt(gram.data_noise);
    if (leak / allowed > worst) {
      worst = leak / allowed;
      m.well_defined_residual = leak;
      m.well_defined_threshold = allowed;
    }
  }
  if (worst > 1.0) {
    throw IllDefinedOperatorError(fmt::format(
        "operator A is ill-defined: shifted vectors leak {:.3e} out of the kernel (allowed {:.3e})",
        m.well_defined_residual, m.well_defined_threshold));
  }

  m.domain_basis = svd.matrixU().leftCols(p);
  m.complement_basis = svd.matrixU().rightCols(r - p);

  // B G_a = (2/(b-a)) G_s - ((a+b)/(b-a)) G_a; on D = G_a V_p S_p^{-1}.
  const double len = gram.b - gram.a;
  const Matrix b_cols = (2.0 / len) * g_s - ((gram.a + gram.b) / len) * g_a;
  const RealVector inv_sigma = sigma.head(p).cwiseInverse();
  const Matrix b_on_d = b_cols * v.leftCols(p) * inv_sigma.cast<Complex>().asDiagonal();
  m.p = HermMatrix::symmetrized(m.domain_basis.adjoint() * b_on_d);
  m.q = m.complement_basis.adjoint() * b_on_d;
  return m;
}

}  // namespace mmp
