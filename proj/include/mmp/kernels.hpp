#pragma once

// Data-parallel loops of the library. Each kernel has a serial reference
// with identical semantics; the OpenMP variants must agree with it bitwise
// (every iteration is independent and writes only its own slot).

#include "mmp/perron.hpp"
#include "mmp/solutions.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mmp::kernels {

/// Inputs of a Stieltjes-Perron sweep after the parameter has been resolved.
struct PerronSweep {
  const ExtensionInterval* interval;
  HermMatrix k;
  Matrix probes;
  PerronCells cells;
  double eps;
  std::vector<double> nodes;    // Gauss-Legendre nodes on [-1, 1]
  std::vector<double> weights;  // matching weights
};

std::vector<Matrix> perron_masses_serial(const PerronSweep& sweep);
std::vector<Matrix> perron_masses_omp(const PerronSweep& sweep);

/// Outcome of solving one problem and verifying the result against its own moments.
struct RoundTripResult {
  bool solvable = false;
  bool verified = false;
  double worst_ratio = 0.0;
  std::optional<DiscreteMatrixMeasure> measure;
  std::string error;  // what() of a thrown mmp::Error, empty otherwise
};

std::vector<RoundTripResult> round_trip_serial(const std::vector<MomentSequence>& problems,
                                               const CanonicalParameter& k, const CanonicalParameter& t,
                                               const SolveOptions& opt = {});
std::vector<RoundTripResult> round_trip_omp(const std::vector<MomentSequence>& problems,
                                            const CanonicalParameter& k, const CanonicalParameter& t,
                                            const SolveOptions& opt = {});

}  // namespace mmp::kernels
