#include "mmp/extensions.hpp"

#include "mmp/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace mmp {

namespace {

constexpr double kDefectTol = 1e-10;
constexpr double kSpectrumMargin = 1e-8;
constexpr double kMaxCondition = 1e12;

// Pseudo-inverse of a matrix that is PSD up to the contraction slack; small
// negative eigenvalues come from ||P|| = 1 + O(eps) and are treated as zero.
Matrix pinv_clamped(const HermMatrix& a) {
  const EigDecomposition e = hermitian_eig(a);
  if (e.size() == 0) return a.mat();
  const double cut = kRankTol * std::max(e.max(), 0.0);
  return e.apply([cut](double v) { return (v > cut && v > 0.0) ? 1.0 / v : 0.0; });
}

HermMatrix assemble(const ContractionModel& m, const HermMatrix& lower_right) {
  const Index p = m.domain_dim();
  const Index q = m.defect_dim();
  Matrix block(p + q, p + q);
  block.topLeftCorner(p, p) = m.p.mat();
  block.topRightCorner(p, q) = m.q.adjoint();
  block.bottomLeftCorner(q, p) = m.q;
  block.bottomRightCorner(q, q) = lower_right.mat();
  const Matrix u = m.basis();
  return HermMatrix::symmetrized(u * block * u.adjoint());
}

void check_admissible(const ExtensionInterval& iv, Complex z) {
  if (z.imag() == 0.0 && z.real() >= -1.0 && z.real() <= 1.0) {
    throw SingularResolventError(fmt::format("z = {} lies in [-1, 1]", z.real()));
  }
  for (Index i = 0; i < iv.b_mu_spectrum.size(); ++i) {
    if (std::abs(z - iv.b_mu_spectrum(i)) < kSpectrumMargin) {
      throw SingularResolventError(
          fmt::format("z = ({}, {}) is within {} of the spectrum of B^mu", z.real(), z.imag(), kSpectrumMargin));
    }
  }
}

Matrix resolvent_mu(const ExtensionInterval& iv, Complex z) {
  const Index r = iv.dim();
  Matrix shifted = iv.b_mu.mat() - z * Matrix::Identity(r, r);
  return shifted.partialPivLu().inverse();
}

// F = S diag(sqrt(c_i)) maps support coordinates into H: C^{1/2} K C^{1/2} = F K F*.
Matrix support_factor(const ExtensionInterval& iv) {
  return iv.support_basis * iv.support_values.cwiseSqrt().cast<Complex>().asDiagonal();
}

}  // namespace

Matrix ExtensionInterval::c_sqrt() const {
  const Matrix f = support_basis * support_values.cwiseSqrt().cast<Complex>().asDiagonal();
  return f * support_basis.adjoint();
}

CanonicalParameter CanonicalParameter::scalar(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw ParameterError(fmt::format("scalar parameter {} is outside [0, 1]", t));
  CanonicalParameter k;
  k.scalar_ = true;
  k.t_ = t;
  return k;
}

CanonicalParameter CanonicalParameter::matrix(const HermMatrix& k) {
  if (!check_psd(k) || !check_psd(HermMatrix::identity(k.dim()) - k)) {
    throw ParameterError("parameter matrix must satisfy 0 <= K <= I");
  }
  CanonicalParameter out;
  out.scalar_ = false;
  out.k_ = k;
  return out;
}

HermMatrix CanonicalParameter::resolve(Index dim) const {
  if (scalar_) return HermMatrix::identity(dim) * t_;
  if (k_.dim() != dim) {
    throw ParameterError(fmt::format("parameter matrix is {}x{}, the defect support has dimension {}",
                                     k_.dim(), k_.dim(), dim));
  }
  return k_;
}

ExtensionInterval extremal_extensions(const ContractionModel& model) {
  ExtensionInterval iv;
  iv.model = model;
  const Index p = model.domain_dim();
  const Index q = model.defect_dim();
  const Index r = p + q;

  Matrix column(r, p);
  column << model.p.mat(), model.q;
  const double col_norm = op_norm(column);
  if (col_norm > 1.0 + kContractionSlack) {
    throw InternalInconsistencyError(fmt::format("B is not a contraction on its domain (norm {:.12f})", col_norm));
  }

  const HermMatrix id_d = HermMatrix::identity(p);
  const Matrix plus_inv = pinv_clamped(id_d + model.p);
  const Matrix minus_inv = pinv_clamped(id_d - model.p);
  const Matrix id_r = Matrix::Identity(q, q);
  iv.x_mu = HermMatrix::symmetrized(model.q * plus_inv * model.q.adjoint() - id_r);
  iv.x_max = HermMatrix::symmetrized(id_r - model.q * minus_inv * model.q.adjoint());

  iv.b_mu = assemble(model, iv.x_mu);
  iv.b_max = assemble(model, iv.x_max);
  const EigDecomposition mu_eig = hermitian_eig(iv.b_mu);
  iv.b_mu_spectrum = mu_eig.eigenvalues;
  const double mu_norm = mu_eig.abs_max();
  const double max_norm = iv.b_max.norm();
  if (mu_norm > 1.0 + kContractionSlack || max_norm > 1.0 + kContractionSlack) {
    throw InternalInconsistencyError(
        fmt::format("extremal completion is not a contraction (norms {:.12f}, {:.12f})", mu_norm, max_norm));
  }

  // C = R (X_M - X_mu) R*; its support is R ⊖ R_0.
  const HermMatrix c_r = iv.x_max - iv.x_mu;
  const EigDecomposition ce = hermitian_eig(c_r);
  const double c_norm = ce.abs_max();
  iv.determinate = c_norm <= kDefectTol;
  const double cut = std::max(kDefectTol, kRankTol * c_norm);
  Index first = 0;
  while (first < ce.size() && ce.eigenvalues(first) <= cut) ++first;
  const Index s = ce.size() - first;
  iv.r0_dim = q - s;
  iv.support_basis = model.complement_basis * ce.eigenvectors.rightCols(s);
  iv.support_values = ce.eigenvalues.tail(s);
  iv.c = HermMatrix::symmetrized(model.complement_basis * c_r.mat() * model.complement_basis.adjoint());
  return iv;
}

HermMatrix canonical_extension(const ExtensionInterval& iv, const CanonicalParameter& k) {
  const HermMatrix kk = k.resolve(iv.support_dim());
  if (iv.support_dim() == 0) return iv.b_mu;
  const Matrix f = support_factor(iv);
  return iv.b_mu + HermMatrix::symmetrized(f * kk.mat() * f.adjoint());
}

Matrix qmu(const ExtensionInterval& iv, Complex z) {
  check_admissible(iv, z);
  const Index q = iv.model.defect_dim();
  if (q == 0) return Matrix(0, 0);
  const Matrix rz = resolvent_mu(iv, z);
  const Matrix cs = iv.c_sqrt();
  const Matrix& rb = iv.model.complement_basis;
  return rb.adjoint() * (cs * rz * cs) * rb + Matrix::Identity(q, q);
}

Matrix generalized_resolvent_unchecked(const ExtensionInterval& iv, const HermMatrix& k, Complex z) {
  const Matrix rz = resolvent_mu(iv, z);
  const Index s = iv.support_dim();
  if (s == 0) return rz;
  const Matrix f = support_factor(iv);
  // On the support, Q_mu(z) - I = F* R_z F.
  const Matrix w = f.adjoint() * rz * f;
  const Matrix middle = Matrix::Identity(s, s) + w * k.mat();
  Eigen::JacobiSVD<Matrix> svd(middle);
  const RealVector& sv = svd.singularValues();
  if (!(sv(s - 1) > 0.0) || sv(0) / sv(s - 1) > kMaxCondition) {
    throw InternalInconsistencyError("generalized resolvent: middle factor is numerically singular");
  }
  const Matrix correction = k.mat() * middle.partialPivLu().solve(f.adjoint() * rz);
  return rz - rz * f * correction;
}

Matrix generalized_resolvent(const ExtensionInterval& iv, const CanonicalParameter& k, Complex z) {
  check_admissible(iv, z);
  return generalized_resolvent_unchecked(iv, k.resolve(iv.support_dim()), z);
}

}  // namespace mmp
