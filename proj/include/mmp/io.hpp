#pragma once

// Text file formats (JSON): problem files, measure files and parameter files.
//
// Complex entries are [re, im] pairs; a matrix is an array of rows. Flat
// row-major arrays of N*N pairs are accepted on input as well. Numbers are
// written in scientific notation with 17 significant digits.
//
//   problem:   {"a": .., "b": .., "N": n, "moments": [M_0, M_1, ...]}
//   measure:   {"a": .., "b": .., "N": n, "atoms": [{"x": .., "W": M}, ...]}
//   parameter: {"matrix": M}

#include "mmp/errors.hpp"
#include "mmp/moments.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace mmp::io {

/// Malformed or schema-violating input; the message carries the location.
class ParseError : public Error {
 public:
  using Error::Error;
};

inline constexpr double kFileHermitianTol = 1e-10;

std::string format_double(double v);

MomentSequence parse_problem(std::string_view text);
DiscreteMatrixMeasure parse_measure(std::string_view text);
HermMatrix parse_parameter(std::string_view text);

std::string serialize_problem(const MomentSequence& seq);
std::string serialize_measure(const DiscreteMatrixMeasure& measure);
std::string serialize_parameter(const HermMatrix& m);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace mmp::io
