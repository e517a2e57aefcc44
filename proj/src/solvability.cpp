#include "mmp/solvability.hpp"

#include "mmp/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace mmp {

std::string_view to_string(ProblemCase c) {
  switch (c) {
    case ProblemCase::L0: return "l0";
    case ProblemCase::Odd: return "odd";
    case ProblemCase::Even: return "even";
  }
  return "?";
}

std::vector<std::string> SolvabilityReport::failed_conditions() const {
  std::vector<std::string> failed;
  for (const Condition& c : conditions) {
    if (!c.passed) failed.push_back(c.name);
  }
  return failed;
}

const Condition* SolvabilityReport::find(std::string_view name) const {
  for (const Condition& c : conditions) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

namespace {

// `scale` is the magnitude of the operands when m is a difference of larger terms.
Condition psd_condition(std::string_view name, const HermMatrix& m, double tol, double scale = 0.0) {
  const EigDecomposition e = hermitian_eig(m);
  const double threshold = -tol * std::max({1.0, e.abs_max(), scale});
  return {std::string(name), e.min() >= threshold, e.min(), threshold};
}

SolvabilityOptions widened(const SolvabilityOptions& opt) {
  SolvabilityOptions w = opt;
  w.psd_tol = std::max(opt.psd_tol, 1e-8);
  w.kernel_tol = opt.kernel_tol * 100.0;
  w.residual_tol = opt.residual_tol * 100.0;
  return w;
}

// Unit roundoff with headroom for the length of the accumulations.
constexpr double kRoundoff = 1e3 * std::numeric_limits<double>::epsilon();

constexpr int kRefinementSteps = 3;

double interval_scale(const MomentSequence& seq) { return std::max(std::abs(seq.a()), std::abs(seq.b())); }

SolvabilityReport evaluate_odd(const MomentSequence& seq, const SolvabilityOptions& opt) {
  SolvabilityReport r;
  r.problem_case = ProblemCase::Odd;
  r.d = seq.l() / 2;
  const BlockHankel gamma = build_gamma(seq, r.d);
  const BlockHankel gamma_tilde = build_gamma_tilde(seq, r.d);
  r.conditions.push_back(psd_condition(condition::kGammaPsd, gamma.matrix, opt.psd_tol));
  r.conditions.push_back(psd_condition(condition::kGammaTildePsd, gamma_tilde.matrix, opt.psd_tol));

  const HermMatrix gamma_prev = build_gamma(seq, r.d - 1).matrix;
  const HermMatrix gamma_hat = build_gamma_hat(seq, r.d).matrix;
  const KernelInclusion ki = kernel_inclusion(gamma_prev, gamma_hat, interval_scale(seq), opt);
  r.conditions.push_back({std::string(condition::kKernelInclusion), ki.holds, ki.worst_ratio, 1.0});

  r.solvable = r.failed_conditions().empty();
  r.cdfk_solvable = r.conditions[0].passed && r.conditions[1].passed;
  return r;
}

Matrix y_rhs(const MomentSequence& seq, int d) {
  const Index n = seq.block_size();
  const double a = seq.a(), b = seq.b();
  Matrix rhs(n * d, n);
  for (int k = 0; k < d; ++k) {
    const int s = d + k;
    rhs.middleRows(k * n, n) = -a * b * seq[s].mat() + (a + b) * seq[s + 1].mat() - seq[s + 2].mat();
  }
  return rhs;
}

using WideMatrix = Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic>;

WideMatrix widen(const Matrix& m) { return m.cast<std::complex<long double>>(); }

// Forward error of G^+ rhs grows like eps cond(G); residuals in extended precision
// bring it back to rounding level.
Matrix wide_residual(const HermMatrix& g, const Matrix& x, const Matrix& rhs) {
  const WideMatrix r = widen(rhs) - widen(g.mat()) * widen(x);
  return r.cast<Complex>();
}

HermMatrix wide_congruence(const HermMatrix& g, const Matrix& x) {
  const WideMatrix wx = widen(x);
  const WideMatrix q = wx.adjoint() * widen(g.mat()) * wx;
  return HermMatrix::symmetrized(q.cast<Complex>());
}

// Minimal-norm solution of G X = rhs; consistency is judged by the normwise
// backward error ||G X - rhs|| / (||G|| ||X|| + ||rhs||).
Matrix solve_consistent(const HermMatrix& g, const Matrix& rhs, std::string_view name,
                        const SolvabilityOptions& opt, std::vector<Condition>& out) {
  if (g.dim() == 0) {
    out.push_back({std::string(name), true, 0.0, 0.0});
    return Matrix(0, rhs.cols());
  }
  const Matrix pinv = pinv_psd(g, opt.rank_tol).mat();
  Matrix x = pinv * rhs;
  for (int it = 0; it < kRefinementSteps; ++it) x += pinv * wide_residual(g, x, rhs);
  const double residual = op_norm(g.mat() * x - rhs);
  const double threshold = opt.residual_tol * (g.norm() * op_norm(x) + op_norm(rhs));
  out.push_back({std::string(name), residual <= threshold, residual, threshold});
  return x;
}

// First-order size of the rounding error in X* G X for X = G^+ rhs.
double quadratic_form_error(const HermMatrix& g, const Matrix& x, const Matrix& rhs) {
  if (g.dim() == 0) return 0.0;
  const double nx = op_norm(x);
  return g.norm() * nx * nx + 2.0 * nx * op_norm(rhs);
}

SolvabilityReport evaluate_even(const MomentSequence& seq, const SolvabilityOptions& opt) {
  SolvabilityReport r;
  r.problem_case = ProblemCase::Even;
  r.d = (seq.l() - 1) / 2;
  const int d = r.d;
  const BlockHankel gamma = build_gamma(seq, d);
  const BlockHankel gamma_tilde = build_gamma_tilde(seq, d);
  r.conditions.push_back(psd_condition(condition::kGammaPsd, gamma.matrix, opt.psd_tol));
  r.conditions.push_back(psd_condition(condition::kGammaTildePsd, gamma_tilde.matrix, opt.psd_tol));

  if (r.conditions[0].passed && r.conditions[1].passed) {
    const Matrix x_rhs = block_column(seq, d + 1, d + 1);
    const Matrix y_rhs_m = y_rhs(seq, d);
    const Matrix x = solve_consistent(gamma.matrix, x_rhs, condition::kXSystem, opt, r.conditions);
    const Matrix y = solve_consistent(gamma_tilde.matrix, y_rhs_m, condition::kYSystem, opt, r.conditions);
    if (r.conditions[2].passed && r.conditions[3].passed) {
      const double a = seq.a(), b = seq.b();
      HermMatrix s_min = wide_congruence(gamma.matrix, x);
      HermMatrix s_max = (-a * b) * seq[2 * d] + (a + b) * seq[2 * d + 1];
      if (d > 0) s_max = s_max - wide_congruence(gamma_tilde.matrix, y);
      const double rounding = kRoundoff * (quadratic_form_error(gamma.matrix, x, x_rhs) +
                                           quadratic_form_error(gamma_tilde.matrix, y, y_rhs_m));
      Condition interval = psd_condition(condition::kInterval, s_max - s_min, opt.psd_tol,
                                         std::max(s_min.norm(), s_max.norm()));
      interval.threshold = std::min(interval.threshold, -rounding);
      interval.passed = interval.value >= interval.threshold;
      r.conditions.push_back(interval);
      r.even = EvenCaseData{x, y, std::move(s_min), std::move(s_max), rounding};
    }
  }
  r.solvable = r.failed_conditions().empty();
  const auto [h, ht] = build_h_pair(seq, d);
  r.cdfk_solvable = check_psd(h.matrix, opt.psd_tol) && check_psd(ht.matrix, opt.psd_tol);
  return r;
}

template <typename Evaluate>
SolvabilityReport with_agreement(const MomentSequence& seq, const SolvabilityOptions& opt, Evaluate eval) {
  SolvabilityReport r = eval(seq, opt);
  r.criteria_agreement = r.solvable == r.cdfk_solvable;
  if (!r.criteria_agreement) {
    const SolvabilityReport loose = eval(seq, widened(opt));
    r.hard_disagreement = loose.solvable != loose.cdfk_solvable;
  }
  return r;
}

}  // namespace

KernelInclusion kernel_inclusion(const HermMatrix& gamma_prev, const HermMatrix& gamma_hat,
                                 double scale_c, const SolvabilityOptions& opt) {
  if (gamma_prev.dim() != gamma_hat.dim()) throw ValidationError("kernel_inclusion: dimension mismatch");
  const RangeSplit split = split_range(gamma_prev, opt.rank_tol);
  const double hat_norm = gamma_hat.norm();
  KernelInclusion out{true, 0.0};
  for (Index i = 0; i < split.kernel.cols(); ++i) {
    const double residual = (gamma_hat.mat() * split.kernel.col(i)).norm();
    const double mu = std::max(split.kernel_values(i), 0.0);
    const double allowed =
        scale_c * std::sqrt(hat_norm * mu) * (1.0 + 1e-6) + opt.kernel_tol * std::max(1.0, hat_norm);
    const double ratio = residual / allowed;
    out.worst_ratio = std::max(out.worst_ratio, ratio);
    if (ratio > 1.0) out.holds = false;
  }
  return out;
}

SolvabilityReport check_odd(const MomentSequence& seq, const SolvabilityOptions& opt) {
  if (seq.l() < 2 || seq.l() % 2 != 0) {
    throw ParityError(fmt::format("check_odd needs l = 2d with d >= 1, got l = {}", seq.l()));
  }
  return with_agreement(seq, opt, evaluate_odd);
}

SolvabilityReport check_even(const MomentSequence& seq, const SolvabilityOptions& opt) {
  if (seq.l() < 1 || seq.l() % 2 != 1) {
    throw ParityError(fmt::format("check_even needs l = 2d+1, got l = {}", seq.l()));
  }
  return with_agreement(seq, opt, evaluate_even);
}

SolvabilityReport check_l0(const HermMatrix& s0, const SolvabilityOptions& opt) {
  SolvabilityReport r;
  r.problem_case = ProblemCase::L0;
  r.conditions.push_back(psd_condition(condition::kS0Psd, s0, opt.psd_tol));
  r.solvable = r.conditions[0].passed;
  r.cdfk_solvable = r.solvable;
  return r;
}

SolvabilityReport check(const MomentSequence& seq, const SolvabilityOptions& opt) {
  if (seq.l() == 0) return check_l0(seq[0], opt);
  return seq.l() % 2 == 0 ? check_odd(seq, opt) : check_even(seq, opt);
}

bool check_cdfk(const MomentSequence& seq, double psd_tol) {
  if (seq.l() < 1) throw ParityError("check_cdfk needs l >= 1");
  if (seq.l() % 2 == 0) {
    const int d = seq.l() / 2;
    return check_psd(build_gamma(seq, d).matrix, psd_tol) &&
           check_psd(build_gamma_tilde(seq, d).matrix, psd_tol);
  }
  const auto [h, ht] = build_h_pair(seq, (seq.l() - 1) / 2);
  return check_psd(h.matrix, psd_tol) && check_psd(ht.matrix, psd_tol);
}

}  // namespace mmp
