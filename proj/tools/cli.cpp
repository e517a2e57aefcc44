#include "cli.hpp"

#include "mmp/io.hpp"
#include "mmp/solutions.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <optional>
#include <string>

namespace mmp::cli {

namespace {

using io::format_double;

struct ParamArgs {
  std::string file;
  std::optional<double> scalar;

  CanonicalParameter resolve(const char* name) const {
    if (!file.empty() && scalar) throw ParameterError(fmt::format("give either a {} file or a scalar, not both", name));
    if (!file.empty()) return CanonicalParameter::matrix(io::parse_parameter(io::read_file(file)));
    return CanonicalParameter::scalar(scalar.value_or(0.5));
  }
};

std::string hankel_label(std::string_view name, int d) {
  if (name == condition::kGammaPsd) return fmt::format("Gamma_{}", d);
  if (name == condition::kGammaTildePsd) return fmt::format("GammaTilde_{}", d);
  if (name == condition::kS0Psd) return "S_0";
  return {};
}

void print_matrix(std::ostream& out, const Matrix& m, std::string_view indent) {
  for (Index i = 0; i < m.rows(); ++i) {
    out << indent;
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out << "  ";
      out << format_double(m(i, j).real());
      if (m(i, j).imag() != 0.0) out << (m(i, j).imag() < 0 ? " - " : " + ") << format_double(std::abs(m(i, j).imag())) << "i";
    }
    out << "\n";
  }
}

int cmd_check(const std::string& problem, std::ostream& out) {
  const MomentSequence seq = io::parse_problem(io::read_file(problem));
  const SolvabilityReport rep = check(seq);
  out << fmt::format("case: {} (l = {}, d = {}, N = {}) on [{}, {}]\n", to_string(rep.problem_case), seq.l(), rep.d,
                     seq.block_size(), format_double(seq.a()), format_double(seq.b()));
  for (const Condition& c : rep.conditions) {
    const std::string label = hankel_label(c.name, rep.d);
    const bool psd = c.name.ends_with("PSD") || c.name == condition::kInterval;
    std::string detail;
    if (!label.empty())
      detail = fmt::format("{} min-eig {}", label, format_double(c.value));
    else
      detail = fmt::format("{} {}", psd ? "min-eig" : c.name == condition::kKernelInclusion ? "worst ratio" : "residual",
                           format_double(c.value));
    out << fmt::format("[{}] {}: {} (threshold {})\n", c.passed ? "PASS" : "FAIL", c.name, detail,
                       format_double(c.threshold));
  }
  if (rep.even) {
    out << "S-interval lower end S_min:\n";
    print_matrix(out, rep.even->s_min.mat(), "  ");
    out << "S-interval upper end S_max:\n";
    print_matrix(out, rep.even->s_max.mat(), "  ");
  }
  if (rep.problem_case != ProblemCase::L0)
    out << fmt::format("cross-check (Hankel pair criterion): {}\n", rep.cdfk_solvable ? "solvable" : "unsolvable");
  if (rep.hard_disagreement) out << "warning: solvability criteria disagree\n";
  out << (rep.solvable ? "solvable\n" : "unsolvable\n");
  return rep.solvable ? kExitOk : kExitNegative;
}

void print_verification(std::ostream& out, const VerificationReport& v) {
  out << fmt::format("{:>4}  {:>24}  {:>24}  {}\n", "n", "max |deviation|", "threshold", "status");
  for (std::size_t n = 0; n < v.deviations.size(); ++n)
    out << fmt::format("{:>4}  {:>24}  {:>24}  {}\n", n, format_double(v.deviations[n]), format_double(v.thresholds[n]),
                       v.deviations[n] <= v.thresholds[n] ? "ok" : "FAIL");
  out << fmt::format("support in [a, b]: {}\n", v.support_ok ? "yes" : "no");
  out << fmt::format("weights PSD: {}\n", v.weights_psd ? "yes" : "no");
  out << fmt::format("worst residual ratio: {}\n", format_double(v.worst_ratio));
}

int cmd_solve(const std::string& problem, const ParamArgs& k_args, const ParamArgs& t_args, const std::string& out_file,
              std::ostream& out) {
  const MomentSequence seq = io::parse_problem(io::read_file(problem));
  const CanonicalParameter k = k_args.resolve("K");
  const CanonicalParameter t = t_args.resolve("T");
  const DiscreteMatrixMeasure measure = solve(seq, k, t);
  const VerificationReport v = verify(measure, seq);
  out << fmt::format("atoms: {}\n", measure.atoms().size());
  for (const Atom& atom : measure.atoms()) {
    out << fmt::format("  x = {}\n", format_double(atom.x));
    print_matrix(out, atom.weight.mat(), "    ");
  }
  out << fmt::format("verification: worst residual ratio {} ({})\n", format_double(v.worst_ratio), v.pass ? "pass" : "FAIL");
  if (!out_file.empty()) io::write_file(out_file, io::serialize_measure(measure));
  return v.pass ? kExitOk : kExitNegative;
}

int cmd_verify(const std::string& measure_file, const std::string& problem, double tol, std::ostream& out) {
  const DiscreteMatrixMeasure measure = io::parse_measure(io::read_file(measure_file));
  const MomentSequence seq = io::parse_problem(io::read_file(problem));
  if (measure.block_size() != seq.block_size())
    throw ValidationError(fmt::format("block size mismatch: measure N = {}, problem N = {}", measure.block_size(),
                                      seq.block_size()));
  if (!(tol > 0.0)) throw ParameterError("--tol must be positive");
  const VerificationReport v = verify(measure, seq, tol);
  print_verification(out, v);
  out << (v.pass ? "pass\n" : "fail\n");
  return v.pass ? kExitOk : kExitNegative;
}

struct GenArgs {
  std::uint64_t seed = 0;
  Index n = 1;
  int atoms = 2;
  double a = 0.0;
  double b = 1.0;
  int l = 2;
  std::string out;
  std::string measure_out;
};

int cmd_gen(const GenArgs& g, std::ostream& out) {
  if (g.l < 0) throw ParameterError("--l must be non-negative");
  const DiscreteMatrixMeasure measure = gen_random_measure(g.seed, g.n, g.atoms, g.a, g.b);
  const std::string problem = io::serialize_problem(moments_of(measure, g.l));
  if (g.out.empty())
    out << problem;
  else
    io::write_file(g.out, problem);
  if (!g.measure_out.empty()) io::write_file(g.measure_out, io::serialize_measure(measure));
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Truncated matricial moment problems on a finite interval"};
  app.require_subcommand(1);

  std::string problem;
  auto* check_cmd = app.add_subcommand("check", "Decide solvability of a problem file");
  check_cmd->add_option("problem", problem, "Problem file")->required();

  ParamArgs k_args, t_args;
  std::string out_file;
  auto* solve_cmd = app.add_subcommand("solve", "Construct a solution measure");
  solve_cmd->add_option("problem", problem, "Problem file")->required();
  auto* pk = solve_cmd->add_option("--param-k", k_args.file, "Parameter file for K (0 <= K <= I)");
  solve_cmd->add_option("--scalar-k", k_args.scalar, "K = t I (default 0.5)")->excludes(pk);
  auto* pt = solve_cmd->add_option("--param-t", t_args.file, "Parameter file for T (0 <= T <= I)");
  solve_cmd->add_option("--scalar-t", t_args.scalar, "T = t I (default 0.5)")->excludes(pt);
  solve_cmd->add_option("--out", out_file, "Measure file to write");

  std::string measure_file;
  double tol = 1e-8;
  auto* verify_cmd = app.add_subcommand("verify", "Check a measure against a problem file");
  verify_cmd->add_option("measure", measure_file, "Measure file")->required();
  verify_cmd->add_option("problem", problem, "Problem file")->required();
  verify_cmd->add_option("--tol", tol, "Relative moment tolerance")->capture_default_str();

  GenArgs g;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a solvable problem from a random measure");
  gen_cmd->add_option("--seed", g.seed, "RNG seed")->required();
  gen_cmd->add_option("--N", g.n, "Block size")->capture_default_str();
  gen_cmd->add_option("--atoms", g.atoms, "Number of atoms")->capture_default_str();
  gen_cmd->add_option("--a", g.a, "Left endpoint")->capture_default_str();
  gen_cmd->add_option("--b", g.b, "Right endpoint")->capture_default_str();
  gen_cmd->add_option("--l", g.l, "Highest moment index")->capture_default_str();
  gen_cmd->add_option("--out", g.out, "Problem file to write (stdout if omitted)");
  gen_cmd->add_option("--measure-out", g.measure_out, "Write the generating measure here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*check_cmd) return cmd_check(problem, out);
    if (*solve_cmd) return cmd_solve(problem, k_args, t_args, out_file, out);
    if (*verify_cmd) return cmd_verify(measure_file, problem, tol, out);
    if (*gen_cmd) return cmd_gen(g, out);
  } catch (const UnsolvableError& e) {
    err << "unsolvable: " << e.what() << "\n";
    return kExitNegative;
  } catch (const InternalInconsistencyError& e) {
    err << "verification failed: " << e.what() << "\n";
    return kExitNegative;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace mmp::cli
