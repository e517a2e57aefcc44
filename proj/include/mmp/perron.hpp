#pragma once

// Stieltjes-Perron inversion of the generalized resolvent: an independent,
// resolvent-only route back to the spectral measure of an extension.

#include "mmp/extensions.hpp"
#include "mmp/moments.hpp"

#include <vector>

namespace mmp {

struct PerronGrid {
  double eps = 1e-4;   // distance of the evaluation line above the real axis
  double step = 1e-4;  // cell width in lambda
  double margin = 0.5;  // the sweep covers [-1 - margin, 1 + margin]
  int cell_points = 4;  // Gauss-Legendre points per cell
  /// Local maxima of the cell mass below this fraction of the largest cell are ignored.
  double peak_threshold = 1e-6;
};

struct SpectralAtom {
  double lambda;
  HermMatrix weight;
};

/// Approximate spectral measure in lambda coordinates.
struct SpectralRecovery {
  std::vector<SpectralAtom> atoms;
  HermMatrix total_mass;
  PerronGrid grid;

  /// Maps lambda to x = ((b-a)/2) lambda + (a+b)/2, clamping into [a, b].
  DiscreteMatrixMeasure to_measure(double a, double b) const;
};

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1] (Golub-Welsch).
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

/// Cell grid of a sweep: left edges t_c = lo + c * step.
struct PerronCells {
  double lo;
  double step;
  Index count;
};
PerronCells perron_cells(const PerronGrid& grid);

/// Masses (1/pi) Im <R~_{t+i eps} x_j, x_n> integrated over each cell; N x N per cell.
/// Uses the OpenMP kernel.
std::vector<Matrix> perron_cell_masses(const ExtensionInterval& interval, const CanonicalParameter& k,
                                       const PerronGrid& grid);

/// Groups cell masses into atoms: one atom per significant peak, cells split at
/// the minimum between neighbouring peaks, position = mass-weighted mean.
SpectralRecovery cluster_cells(const std::vector<Matrix>& masses, const PerronGrid& grid);

SpectralRecovery stieltjes_perron_recover(const ExtensionInterval& interval, const CanonicalParameter& k,
                                          const PerronGrid& grid = {});

}  // namespace mmp
