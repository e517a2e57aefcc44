#include "mmp/perron.hpp"

#include "mmp/errors.hpp"
#include "mmp/kernels.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace mmp {

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  if (n < 1) throw ParameterError("Gauss-Legendre rule needs at least one point");
  // Jacobi matrix of the Legendre recurrence: off-diagonal k / sqrt(4k^2 - 1).
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double beta = k / std::sqrt(4.0 * k * k - 1.0);
    jac(k, k - 1) = beta;
    jac(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  std::vector<double> nodes(static_cast<std::size_t>(n)), weights(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    nodes[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    weights[static_cast<std::size_t>(i)] = 2.0 * v0 * v0;
  }
  return {nodes, weights};
}

PerronCells perron_cells(const PerronGrid& grid) {
  const double lo = -1.0 - grid.margin;
  const double span = 2.0 + 2.0 * grid.margin;
  const auto count = static_cast<Index>(std::ceil(span / grid.step - 1e-9));
  return {lo, grid.step, count};
}

namespace {

void validate(const PerronGrid& grid) {
  if (!(grid.eps >= 1e-8) || !(grid.step > 0.0) || !(grid.margin > 0.0) || grid.cell_points < 1 ||
      !(grid.peak_threshold >= 0.0)) {
    throw ParameterError("invalid Stieltjes-Perron grid parameters");
  }
  if (perron_cells(grid).count > 50'000'000) throw ParameterError("Stieltjes-Perron grid is too fine");
}

}  // namespace

std::vector<Matrix> perron_cell_masses(const ExtensionInterval& interval, const CanonicalParameter& k,
                                       const PerronGrid& grid) {
  validate(grid);
  auto [nodes, weights] = gauss_legendre(grid.cell_points);
  const kernels::PerronSweep sweep{&interval,
                                   k.resolve(interval.support_dim()),
                                   interval.model.gram.probes(),
                                   perron_cells(grid),
                                   grid.eps,
                                   std::move(nodes),
                                   std::move(weights)};
  return kernels::perron_masses_omp(sweep);
}

SpectralRecovery cluster_cells(const std::vector<Matrix>& masses, const PerronGrid& grid) {
  SpectralRecovery out;
  out.grid = grid;
  if (masses.empty()) return out;
  const Index n = masses.front().rows();
  const PerronCells cells = perron_cells(grid);

  std::vector<double> trace(masses.size());
  Matrix total = Matrix::Zero(n, n);
  for (std::size_t c = 0; c < masses.size(); ++c) {
    trace[c] = masses[c].trace().real();
    total += masses[c];
  }
  out.total_mass = HermMatrix::symmetrized(total);

  const double top = *std::max_element(trace.begin(), trace.end());
  if (!(top > 0.0)) return out;
  std::vector<std::size_t> peaks;
  for (std::size_t c = 0; c < trace.size(); ++c) {
    const double left = c > 0 ? trace[c - 1] : -1.0;
    const double right = c + 1 < trace.size() ? trace[c + 1] : -1.0;
    if (trace[c] > left && trace[c] >= right && trace[c] >= grid.peak_threshold * top) peaks.push_back(c);
  }

  std::size_t begin = 0;
  for (std::size_t p = 0; p < peaks.size(); ++p) {
    std::size_t end = trace.size();
    if (p + 1 < peaks.size()) {
      const auto valley = std::min_element(trace.begin() + static_cast<std::ptrdiff_t>(peaks[p]),
                                           trace.begin() + static_cast<std::ptrdiff_t>(peaks[p + 1]));
      end = static_cast<std::size_t>(valley - trace.begin());
    }
    Matrix w = Matrix::Zero(n, n);
    double moment = 0.0;
    double mass = 0.0;
    for (std::size_t c = begin; c < end; ++c) {
      const double center = cells.lo + (static_cast<double>(c) + 0.5) * cells.step;
      w += masses[c];
      moment += center * trace[c];
      mass += trace[c];
    }
    out.atoms.push_back({mass > 0.0 ? moment / mass : 0.0, HermMatrix::symmetrized(w)});
    begin = end;
  }
  return out;
}

SpectralRecovery stieltjes_perron_recover(const ExtensionInterval& interval, const CanonicalParameter& k,
                                          const PerronGrid& grid) {
  return cluster_cells(perron_cell_masses(interval, k, grid), grid);
}

DiscreteMatrixMeasure SpectralRecovery::to_measure(double a, double b) const {
  std::vector<Atom> atoms;
  const Index n = total_mass.dim();
  for (const SpectralAtom& at : this->atoms) {
    const double x = std::clamp(0.5 * (b - a) * at.lambda + 0.5 * (a + b), a, b);
    atoms.push_back({x, at.weight});
  }
  return DiscreteMatrixMeasure::unchecked(a, b, n, std::move(atoms));
}

}  // namespace mmp
