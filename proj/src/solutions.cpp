#include "mmp/solutions.hpp"

#include "mmp/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace mmp {

SpectralData spectral_data(const HermMatrix& extension, const Matrix& probes, double cluster_tol) {
  const EigDecomposition e = hermitian_eig(extension);
  SpectralData out;
  Index i = 0;
  while (i < e.size()) {
    Index j = i + 1;
    while (j < e.size() && e.eigenvalues(j) - e.eigenvalues(j - 1) <= cluster_tol) ++j;
    const Matrix v = e.eigenvectors.middleCols(i, j - i);
    // W[j][n] = <Pi x_j, x_n> = sum_k (v_k* x_j) conj(v_k* x_n).
    const Matrix y = v.adjoint() * probes;
    out.eigenvalues.push_back(e.eigenvalues.segment(i, j - i).mean());
    out.weights.push_back(HermMatrix::symmetrized((y.adjoint() * y).conjugate()));
    i = j;
  }
  return out;
}

VerificationReport verify(const DiscreteMatrixMeasure& measure, const MomentSequence& seq, double tol) {
  VerificationReport r;
  r.block_size_ok = measure.block_size() == seq.block_size();
  if (!r.block_size_ok) return r;

  r.support_ok = true;
  r.weights_psd = true;
  for (const Atom& at : measure.atoms()) {
    if (at.x < seq.a() || at.x > seq.b()) r.support_ok = false;
    if (!check_psd(at.weight)) r.weights_psd = false;
  }
  const MomentSequence got = moments_of(measure, seq.l());
  r.moments_ok = true;
  for (int n = 0; n <= seq.l(); ++n) {
    const double dev = (got[n].mat() - seq[n].mat()).cwiseAbs().maxCoeff();
    const double thr = tol * std::max(1.0, seq[n].norm());
    r.deviations.push_back(dev);
    r.thresholds.push_back(thr);
    r.worst_ratio = std::max(r.worst_ratio, dev / thr);
    if (!(dev <= thr)) r.moments_ok = false;
  }
  r.pass = r.moments_ok && r.support_ok && r.weights_psd;
  return r;
}

namespace {

ExtensionInterval interval_of(const MomentSequence& seq, const SolveOptions& opt) {
  const GramSpace gram = build_gram_space(seq, opt.gram_rank_tol, opt.data_noise);
  return extremal_extensions(build_operators(gram, opt.domain_floor_factor));
}

}  // namespace

OddPipeline build_odd_pipeline(const MomentSequence& seq, const SolveOptions& opt) {
  OddPipeline p;
  p.report = check_odd(seq, opt.solvability);
  if (!p.report.solvable) {
    std::string failed;
    for (const auto& c : p.report.failed_conditions()) failed += (failed.empty() ? "" : ", ") + c;
    throw UnsolvableError("moment problem is not solvable: " + failed);
  }
  p.interval = interval_of(seq, opt);
  return p;
}

DiscreteMatrixMeasure measure_from_extension(const GramSpace& gram, const HermMatrix& extension) {
  const SpectralData sd = spectral_data(extension, gram.probes());
  const double half = 0.5 * (gram.b - gram.a);
  const double mid = 0.5 * (gram.a + gram.b);
  // Spectrum of a contraction lies in [-1, 1]; allow the contraction slack before clamping.
  const double clamp_band = half * kContractionSlack;
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < sd.eigenvalues.size(); ++i) {
    double x = half * sd.eigenvalues[i] + mid;
    if (x < gram.a && x >= gram.a - clamp_band) x = gram.a;
    if (x > gram.b && x <= gram.b + clamp_band) x = gram.b;
    atoms.push_back({x, sd.weights[i]});
  }
  return DiscreteMatrixMeasure::make(gram.a, gram.b, gram.block_size, std::move(atoms));
}

namespace {

void require_verified(const DiscreteMatrixMeasure& m, const MomentSequence& seq, double tol) {
  const VerificationReport v = verify(m, seq, tol);
  if (!v.pass) {
    throw InternalInconsistencyError(
        fmt::format("constructed measure fails verification (worst moment ratio {:.3e}, support {}, psd {})",
                    v.worst_ratio, v.support_ok, v.weights_psd));
  }
}

}  // namespace

DiscreteMatrixMeasure solve_odd(const MomentSequence& seq, const CanonicalParameter& k, const SolveOptions& opt) {
  const OddPipeline p = build_odd_pipeline(seq, opt);
  const HermMatrix ext = canonical_extension(p.interval, k);
  DiscreteMatrixMeasure m = measure_from_extension(p.interval.model.gram, ext);
  require_verified(m, seq, opt.verify_tol);
  return m;
}

HermMatrix select_next_moment(const EvenCaseData& data, const CanonicalParameter& t) {
  const HermMatrix delta = data.s_max - data.s_min;
  // delta is PSD up to the tolerance that accepted the interval; clamp what remains.
  const EigDecomposition e = hermitian_eig(delta);
  const HermMatrix root =
      HermMatrix::symmetrized(e.apply([](double v) { return v > 0.0 ? std::sqrt(v) : 0.0; }));
  const HermMatrix tt = t.resolve(delta.dim());
  return data.s_min + tt.congruence(root.mat());
}

DiscreteMatrixMeasure solve_even(const MomentSequence& seq, const CanonicalParameter& t, const CanonicalParameter& k,
                                 const SolveOptions& opt) {
  const SolvabilityReport report = check_even(seq, opt.solvability);
  if (!report.solvable || !report.even) {
    std::string failed;
    for (const auto& c : report.failed_conditions()) failed += (failed.empty() ? "" : ", ") + c;
    throw UnsolvableError("moment problem is not solvable: " + failed);
  }
  // S_min and S_max are recomputed with the Gram cutoff: eigenvalues of Gamma_d
  // below the solvability rank tolerance are still genuine and shift both ends.
  SolvabilityOptions fine_opt = opt.solvability;
  fine_opt.rank_tol = std::min(opt.solvability.rank_tol, opt.gram_rank_tol);
  const SolvabilityReport fine = check_even(seq, fine_opt);
  const EvenCaseData& data = fine.solvable ? *fine.even : *report.even;

  // The appended sequence is solvable by construction but carries the rounding of
  // the chosen S_{2d+2}, so it goes straight to the operator model.
  SolveOptions inner = opt;
  inner.data_noise = std::max(opt.data_noise, data.rounding);
  const MomentSequence extended = seq.appended(select_next_moment(data, t));
  const ExtensionInterval iv = interval_of(extended, inner);
  DiscreteMatrixMeasure m = measure_from_extension(iv.model.gram, canonical_extension(iv, k));
  require_verified(m, seq, opt.verify_tol);
  return m;
}

DiscreteMatrixMeasure solve_l0(const HermMatrix& s0, double a, double b) {
  if (!check_psd(s0)) throw UnsolvableError("S_0 is not PSD");
  return DiscreteMatrixMeasure::make(a, b, s0.dim(), {{0.5 * (a + b), s0}});
}

DiscreteMatrixMeasure solve(const MomentSequence& seq, const CanonicalParameter& k, const CanonicalParameter& t,
                            const SolveOptions& opt) {
  if (seq.l() == 0) return solve_l0(seq[0], seq.a(), seq.b());
  if (seq.l() % 2 == 0) return solve_odd(seq, k, opt);
  return solve_even(seq, t, k, opt);
}

}  // namespace mmp
