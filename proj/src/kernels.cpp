#include "mmp/kernels.hpp"

#include "mmp/errors.hpp"

#include <cmath>
#include <numbers>

namespace mmp::kernels {

namespace {

Matrix cell_mass(const PerronSweep& s, Index c) {
  const ExtensionInterval& iv = *s.interval;
  const Index n = s.probes.cols();
  const double left = s.cells.lo + static_cast<double>(c) * s.cells.step;
  const double half = 0.5 * s.cells.step;
  Matrix acc = Matrix::Zero(n, n);
  for (std::size_t q = 0; q < s.nodes.size(); ++q) {
    const double t = left + half * (1.0 + s.nodes[q]);
    const Matrix res = generalized_resolvent_unchecked(iv, s.k, Complex(t, s.eps));
    // G = X0* R X0 holds <R x_j, x_n> at (n, j); the measure entry (j, n) is Im of the transpose.
    const Matrix g = s.probes.adjoint() * res * s.probes;
    const Matrix im = (g - g.adjoint()) / Complex(0.0, 2.0);
    acc += (half * s.weights[q] / std::numbers::pi) * im.transpose();
  }
  return acc;
}

RoundTripResult round_trip_one(const MomentSequence& seq, const CanonicalParameter& k,
                               const CanonicalParameter& t, const SolveOptions& opt) {
  RoundTripResult r;
  try {
    r.solvable = check(seq, opt.solvability).solvable;
    if (!r.solvable) return r;
    DiscreteMatrixMeasure m = solve(seq, k, t, opt);
    const VerificationReport v = verify(m, seq, opt.verify_tol);
    r.verified = v.pass;
    r.worst_ratio = v.worst_ratio;
    r.measure = std::move(m);
  } catch (const Error& e) {
    r.error = e.what();
  }
  return r;
}

}  // namespace

std::vector<Matrix> perron_masses_serial(const PerronSweep& sweep) {
  std::vector<Matrix> out(static_cast<std::size_t>(sweep.cells.count));
  for (Index c = 0; c < sweep.cells.count; ++c) out[static_cast<std::size_t>(c)] = cell_mass(sweep, c);
  return out;
}

std::vector<Matrix> perron_masses_omp(const PerronSweep& sweep) {
  std::vector<Matrix> out(static_cast<std::size_t>(sweep.cells.count));
  const Index count = sweep.cells.count;
#pragma omp parallel for schedule(static)
  for (Index c = 0; c < count; ++c) out[static_cast<std::size_t>(c)] = cell_mass(sweep, c);
  return out;
}

std::vector<RoundTripResult> round_trip_serial(const std::vector<MomentSequence>& problems,
                                               const CanonicalParameter& k, const CanonicalParameter& t,
                                               const SolveOptions& opt) {
  std::vector<RoundTripResult> out(problems.size());
  for (std::size_t i = 0; i < problems.size(); ++i) out[i] = round_trip_one(problems[i], k, t, opt);
  return out;
}

std::vector<RoundTripResult> round_trip_omp(const std::vector<MomentSequence>& problems,
                                            const CanonicalParameter& k, const CanonicalParameter& t,
                                            const SolveOptions& opt) {
  std::vector<RoundTripResult> out(problems.size());
  const auto count = static_cast<std::ptrdiff_t>(problems.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = round_trip_one(problems[static_cast<std::size_t>(i)], k, t, opt);
  }
  return out;
}

}  // namespace mmp::kernels
