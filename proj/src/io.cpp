#include "mmp/io.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <fstream>
#include <sstream>

namespace mmp::io {

using nlohmann::json;

std::string format_double(double v) { return fmt::format("{:.16e}", v); }

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(fmt::format("{}: {}", where, what));
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(fmt::format("malformed JSON at byte {}: {}", e.byte, e.what()));
  }
}

const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(where, fmt::format("missing field \"{}\"", key));
  return *it;
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  return v.get<double>();
}

Index block_size(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 1) fail(where, "expected a positive integer");
  return static_cast<Index>(v.get<long long>());
}

Complex complex_entry(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) fail(where, "expected a [re, im] pair");
  return {number(v[0], where + "[0]"), number(v[1], where + "[1]")};
}

Matrix matrix(const json& v, Index n, const std::string& where) {
  if (!v.is_array()) fail(where, "expected a matrix");
  Matrix m(n, n);
  const bool flat = v.size() == static_cast<std::size_t>(n * n) && (n == 1 || (v[0].is_array() && v[0].size() == 2 && v[0][0].is_number()));
  if (flat && !(n == 1 && v[0].is_array() && v[0].size() == 1)) {
    for (Index k = 0; k < n * n; ++k) m(k / n, k % n) = complex_entry(v[static_cast<std::size_t>(k)], fmt::format("{}[{}]", where, k));
    return m;
  }
  if (v.size() != static_cast<std::size_t>(n)) fail(where, fmt::format("expected {} rows", n));
  for (Index i = 0; i < n; ++i) {
    const json& row = v[static_cast<std::size_t>(i)];
    const std::string rw = fmt::format("{}[{}]", where, i);
    if (!row.is_array() || row.size() != static_cast<std::size_t>(n)) fail(rw, fmt::format("expected a row of {} entries", n));
    for (Index j = 0; j < n; ++j) m(i, j) = complex_entry(row[static_cast<std::size_t>(j)], fmt::format("{}[{}]", rw, j));
  }
  return m;
}

HermMatrix hermitian(const json& v, Index n, const std::string& where) {
  try {
    return HermMatrix::from(matrix(v, n, where), kFileHermitianTol);
  } catch (const ValidationError& e) {
    fail(where, e.what());
  }
}

void write_matrix(std::string& out, const Matrix& m, std::string_view indent) {
  out += "[";
  for (Index i = 0; i < m.rows(); ++i) {
    out += i ? ",\n" : "\n";
    out += indent;
    out += "  [";
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out += ", ";
      out += fmt::format("[{}, {}]", format_double(m(i, j).real()), format_double(m(i, j).imag()));
    }
    out += "]";
  }
  out += "\n";
  out += indent;
  out += "]";
}

}  // namespace

MomentSequence parse_problem(std::string_view text) {
  const json doc = parse_json(text);
  const double a = number(member(doc, "a", "$"), "$.a");
  const double b = number(member(doc, "b", "$"), "$.b");
  const Index n = block_size(member(doc, "N", "$"), "$.N");
  const json& ms = member(doc, "moments", "$");
  if (!ms.is_array() || ms.empty()) fail("$.moments", "expected a nonempty array");
  std::vector<HermMatrix> moments;
  for (std::size_t i = 0; i < ms.size(); ++i) moments.push_back(hermitian(ms[i], n, fmt::format("$.moments[{}]", i)));
  if (!(a < b)) fail("$", "interval endpoints must satisfy a < b");
  return MomentSequence(a, b, std::move(moments));
}

DiscreteMatrixMeasure parse_measure(std::string_view text) {
  const json doc = parse_json(text);
  const double a = number(member(doc, "a", "$"), "$.a");
  const double b = number(member(doc, "b", "$"), "$.b");
  const Index n = block_size(member(doc, "N", "$"), "$.N");
  if (!(a < b)) fail("$", "interval endpoints must satisfy a < b");
  const json& as = member(doc, "atoms", "$");
  if (!as.is_array()) fail("$.atoms", "expected an array");
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < as.size(); ++i) {
    const std::string where = fmt::format("$.atoms[{}]", i);
    atoms.push_back({number(member(as[i], "x", where), where + ".x"),
                     hermitian(member(as[i], "W", where), n, where + ".W")});
  }
  return DiscreteMatrixMeasure::unchecked(a, b, n, std::move(atoms));
}

HermMatrix parse_parameter(std::string_view text) {
  const json doc = parse_json(text);
  const json& m = member(doc, "matrix", "$");
  if (!m.is_array() || m.empty()) fail("$.matrix", "expected a nonempty matrix");
  const auto n = static_cast<Index>(m.size());
  return hermitian(m, n, "$.matrix");
}

std::string serialize_problem(const MomentSequence& seq) {
  std::string out = "{\n";
  out += fmt::format("  \"a\": {},\n  \"b\": {},\n  \"N\": {},\n  \"moments\": [", format_double(seq.a()),
                     format_double(seq.b()), seq.block_size());
  for (int k = 0; k <= seq.l(); ++k) {
    out += k ? ",\n    " : "\n    ";
    write_matrix(out, seq[k].mat(), "    ");
  }
  out += "\n  ]\n}\n";
  return out;
}

std::string serialize_measure(const DiscreteMatrixMeasure& measure) {
  std::string out = "{\n";
  out += fmt::format("  \"a\": {},\n  \"b\": {},\n  \"N\": {},\n  \"atoms\": [", format_double(measure.a()),
                     format_double(measure.b()), measure.block_size());
  const auto& atoms = measure.atoms();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    out += i ? ",\n" : "\n";
    out += fmt::format("    {{\n      \"x\": {},\n      \"W\": ", format_double(atoms[i].x));
    write_matrix(out, atoms[i].weight.mat(), "      ");
    out += "\n    }";
  }
  out += atoms.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

std::string serialize_parameter(const HermMatrix& m) {
  std::string out = "{\n  \"matrix\": ";
  write_matrix(out, m.mat(), "  ");
  out += "\n}\n";
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(fmt::format("{}: cannot open file", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError(fmt::format("{}: cannot open file for writing", path.string()));
  out << content;
  if (!out) throw ParseError(fmt::format("{}: write failed", path.string()));
}

}  // namespace mmp::io
