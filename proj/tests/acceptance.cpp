// Acceptance suite: one PASS/FAIL line per criterion.

#include "cli.hpp"
#include "mmp/io.hpp"
#include "mmp/perron.hpp"
#include "mmp/solutions.hpp"
#include "support.hpp"

#include <fmt/format.h>

#include <chrono>
#include <filesystem>
#include <functional>
#include <limits>
#include <sstream>

using namespace mmp;
using mmp::test::max_abs;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct RandomProblem {
  std::uint64_t seed;
  MomentSequence seq;
};

/// 200 generated odd-case problems: N in {1,2,3}, up to 4 atoms, d in {1,2,3}, two intervals.
std::vector<RandomProblem> random_problems() {
  std::vector<RandomProblem> out;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    mmp::test::Rng rng(seed * 7919 + 1);
    const Index n = rng.integer(1, 3);
    const int atoms = rng.integer(1, 4);
    const int d = rng.integer(1, 3);
    const bool wide = seed % 2 == 1;
    const double a = wide ? -2.0 : 0.0, b = wide ? 3.0 : 1.0;
    out.push_back({seed, moments_of(gen_random_measure(seed, n, atoms, a, b), 2 * d)});
  }
  return out;
}

Outcome round_trip() {
  const auto start = std::chrono::steady_clock::now();
  const auto problems = random_problems();
  int passed = 0;
  double worst = 0.0;
  std::string first_failure;
  for (const auto& p : problems) {
    bool ok = false;
    try {
      if (check_odd(p.seq).solvable) {
        const auto m = solve_odd(p.seq, CanonicalParameter::scalar(0.5));
        const auto v = verify(m, p.seq, 1e-8);
        worst = std::max(worst, v.worst_ratio);
        ok = v.pass;
      }
    } catch (const Error& e) {
      if (first_failure.empty()) first_failure = fmt::format(" first failure seed {}: {}", p.seed, e.what());
    }
    if (ok) ++passed;
    else if (first_failure.empty()) first_failure = fmt::format(" first failure seed {}", p.seed);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool pass = passed == static_cast<int>(problems.size()) && secs < 30.0;
  return {pass, fmt::format("{}/{} verified, worst moment ratio {:.2e}, {:.2f} s{}", passed, problems.size(), worst,
                            secs, first_failure)};
}

Outcome necessity() {
  int total = 0, agree = 0, hard = 0;
  for (const auto& p : random_problems()) {
    for (const MomentSequence& seq : {p.seq, p.seq.truncated(p.seq.l() - 1)}) {
      ++total;
      const auto r = seq.l() % 2 == 0 ? check_odd(seq) : check_even(seq);
      const bool cdfk = check_cdfk(seq);
      if (r.hard_disagreement) ++hard;
      if (r.solvable && cdfk) ++agree;
    }
  }
  return {agree == total && hard == 0,
          fmt::format("{}/{} sets pass both criteria, {} hard disagreements", agree, total, hard)};
}

Outcome determinacy() {
  const auto seq = MomentSequence::scalar(-1.0, 1.0, {1.0, 0.0, 1.0});
  const auto iv = build_odd_pipeline(seq).interval;
  const double c_norm = iv.c.norm();
  bool pass = iv.determinate && c_norm <= 1e-10;
  double worst = 0.0;
  for (double t : {0.0, 0.5, 1.0}) {
    const auto m = solve_odd(seq, CanonicalParameter::scalar(t));
    if (m.atoms().size() != 2) {
      pass = false;
      continue;
    }
    worst = std::max({worst, std::abs(m.atoms()[0].x + 1.0), std::abs(m.atoms()[1].x - 1.0),
                      std::abs(m.atoms()[0].weight(0, 0).real() - 0.5), std::abs(m.atoms()[1].weight(0, 0).real() - 0.5)});
  }
  pass = pass && worst <= 1e-9;
  return {pass, fmt::format("||C|| = {:.2e}, max deviation from {{(-1, 1/2), (1, 1/2)}} {:.2e}", c_norm, worst)};
}

double measure_distance(const DiscreteMatrixMeasure& x, const DiscreteMatrixMeasure& y) {
  if (x.atoms().size() != y.atoms().size()) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (std::size_t i = 0; i < x.atoms().size(); ++i)
    d = std::max({d, std::abs(x.atoms()[i].x - y.atoms()[i].x),
                  max_abs(x.atoms()[i].weight.mat() - y.atoms()[i].weight.mat())});
  return d;
}

Outcome indeterminacy() {
  const auto seq = MomentSequence::scalar(0.0, 1.0, {1.0, 0.5, 1.0 / 3.0});
  const auto iv = build_odd_pipeline(seq).interval;
  SolveOptions opt;
  opt.verify_tol = 1e-9;
  const auto m0 = solve_odd(seq, CanonicalParameter::scalar(0.0), opt);
  const auto m1 = solve_odd(seq, CanonicalParameter::scalar(1.0), opt);
  const double dist = measure_distance(m0, m1);
  const bool v0 = verify(m0, seq, 1e-9).pass, v1 = verify(m1, seq, 1e-9).pass;
  const bool pass = iv.c.norm() > 1e-10 && dist > 1e-6 && v0 && v1;
  return {pass, fmt::format("||C|| = {:.3e}, distance(K = 0, K = I) = {:.3e}, both verify at 1e-9: {}", iv.c.norm(),
                            dist, v0 && v1)};
}

Outcome resolvent() {
  // an indeterminate 2x2 problem with a two-dimensional defect
  const auto seq = moments_of(gen_random_measure(12, 2, 4, -2.0, 3.0), 4);
  const auto iv = build_odd_pipeline(seq).interval;
  const Index s = iv.support_dim();
  const Index r = iv.dim();
  const Complex zs[] = {Complex(0, 2), Complex(-1, 1), Complex(3, 0)};
  const Matrix bd = iv.model.column();
  const double c_norm = iv.c.norm();
  mmp::test::Rng rng(2024);
  double identity_err = 0.0, herm_err = 0.0, norm_excess = 0.0, extend_err = 0.0, z_spread = 0.0;
  double min_dist = std::numeric_limits<double>::infinity();
  std::vector<Matrix> extensions;
  for (int it = 0; it < 20; ++it) {
    const auto k = CanonicalParameter::matrix(mmp::test::random_hermitian_spectrum(rng, s, 0.0, 1.0));
    std::vector<Matrix> res, recon;
    for (Complex z : zs) {
      res.push_back(generalized_resolvent(iv, k, z));
      recon.push_back(res.back().inverse() + z * Matrix::Identity(r, r));
    }
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j) {
        const Matrix lhs = res[i] - res[j];
        const Matrix rhs = (zs[i] - zs[j]) * res[i] * res[j];
        identity_err = std::max(identity_err, max_abs(lhs - rhs));
      }
    for (const Matrix& b : recon) {
      herm_err = std::max(herm_err, max_abs(b - b.adjoint()));
      norm_excess = std::max(norm_excess, op_norm(b) - 1.0);
      extend_err = std::max(extend_err, max_abs(b * iv.model.domain_basis - bd));
      z_spread = std::max(z_spread, max_abs(b - recon.front()));
    }
    extensions.push_back(recon.front());
  }
  for (std::size_t i = 0; i < extensions.size(); ++i)
    for (std::size_t j = i + 1; j < extensions.size(); ++j)
      min_dist = std::min(min_dist, op_norm(extensions[i] - extensions[j]));
  const bool pass = s > 0 && identity_err <= 1e-8 && herm_err <= 1e-8 && norm_excess <= 1e-8 && extend_err <= 1e-8 &&
                    z_spread <= 1e-8 && min_dist > 1e-8 * c_norm;
  return {pass, fmt::format("defect dim {}, identity {:.1e}, self-adjoint {:.1e}, norm excess {:.1e}, extends {:.1e}, "
                            "z-spread {:.1e}, min pairwise distance {:.2e} vs {:.2e}",
                            s, identity_err, herm_err, norm_excess, extend_err, z_spread, min_dist, 1e-8 * c_norm)};
}

Outcome extremal_oracle() {
  int bad = 0, accepted_total = 0;
  double worst_violation = 0.0, worst_endpoint = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    mmp::test::Rng rng(seed + 5000);
    const Index p = rng.integer(1, 4), q = rng.integer(1, 3);
    const auto col = mmp::test::random_contraction_column(rng, p, q);
    const auto iv = extremal_extensions(mmp::test::model_from_column(col));
    const double n_mu = op_norm(mmp::test::completion(col.p, col.q, iv.x_mu.mat()));
    const double n_max = op_norm(mmp::test::completion(col.p, col.q, iv.x_max.mat()));
    worst_endpoint = std::max({worst_endpoint, n_mu - 1.0, n_max - 1.0});
    const auto s = mmp::test::sample_completions(col, iv.x_mu, iv.x_max, 10000, seed + 9000);
    accepted_total += s.accepted;
    worst_violation = std::max({worst_violation, s.worst_below, s.worst_above});
    if (s.worst_below > 1e-8 || s.worst_above > 1e-8 || n_mu > 1.0 + 1e-10 || n_max > 1.0 + 1e-10) ++bad;
  }
  return {bad == 0, fmt::format("{} accepted samples, worst Loewner violation {:.1e}, worst endpoint norm excess {:.1e}",
                                accepted_total, worst_violation, worst_endpoint)};
}

Outcome even_case() {
  const auto seq = MomentSequence::scalar(0.0, 1.0, {1.0, 0.5});
  const auto r = check_even(seq);
  if (!r.even) return {false, "no interval reported"};
  const double lo = r.even->s_min(0, 0).real(), hi = r.even->s_max(0, 0).real();
  const auto k = CanonicalParameter::scalar(0.5);
  const auto m0 = solve_even(seq, CanonicalParameter::scalar(0.0), k);
  const auto m1 = solve_even(seq, CanonicalParameter::scalar(1.0), k);
  const auto point = DiscreteMatrixMeasure::make(0.0, 1.0, 1, {{0.5, HermMatrix::scalar(1.0)}});
  const auto two = DiscreteMatrixMeasure::make(0.0, 1.0, 1, {{0.0, HermMatrix::scalar(0.5)}, {1.0, HermMatrix::scalar(0.5)}});
  const double d0 = measure_distance(m0, point), d1 = measure_distance(m1, two);
  const double s2_lo = moments_of(m0, 2)[2](0, 0).real(), s2_hi = moments_of(m1, 2)[2](0, 0).real();
  const bool pass = std::abs(lo - 0.25) <= 1e-12 && std::abs(hi - 0.5) <= 1e-12 && d0 <= 1e-9 && d1 <= 1e-9 &&
                    std::abs(s2_lo - lo) <= 1e-8 && std::abs(s2_hi - hi) <= 1e-8;
  return {pass, fmt::format("interval [{:.15f}, {:.15f}], T = 0 off by {:.1e}, T = I off by {:.1e}, S_2 = {:.12f} / {:.12f}",
                            lo, hi, d0, d1, s2_lo, s2_hi)};
}

/// Error of a Stieltjes-Perron recovery against the exact spectral measure.
double perron_error(const ExtensionInterval& iv, const CanonicalParameter& k, const DiscreteMatrixMeasure& exact,
                    const MomentSequence& seq, double h) {
  PerronGrid g;
  g.eps = h;
  g.step = h;
  const auto rec = stieltjes_perron_recover(iv, k, g).to_measure(seq.a(), seq.b());
  double err = max_abs(rec.total_mass().mat() - seq[0].mat());
  if (rec.atoms().size() != exact.atoms().size()) return std::max(err, 1.0);
  for (std::size_t i = 0; i < exact.atoms().size(); ++i) err = std::max(err, std::abs(rec.atoms()[i].x - exact.atoms()[i].x));
  return err;
}

Outcome stieltjes_perron() {
  struct Example {
    const char* name;
    MomentSequence seq;
    double k;
  };
  const std::vector<Example> examples = {
      {"two-point", MomentSequence::scalar(-1.0, 1.0, {1.0, 0.0, 1.0}), 0.5},
      {"Radau K=0", MomentSequence::scalar(0.0, 1.0, {1.0, 0.5, 1.0 / 3.0}), 0.0},
      {"Radau K=I", MomentSequence::scalar(0.0, 1.0, {1.0, 0.5, 1.0 / 3.0}), 1.0},
      {"point mass", MomentSequence::scalar(-1.0, 1.0, {1.0, 1.0, 1.0}), 0.5},
      {"two-point [0,1]", MomentSequence::scalar(0.0, 1.0, {1.0, 0.5, 0.5}), 0.5},
  };
  bool pass = true;
  std::string detail;
  for (const auto& ex : examples) {
    const auto iv = build_odd_pipeline(ex.seq).interval;
    const auto k = CanonicalParameter::scalar(ex.k);
    const auto exact = measure_from_extension(iv.model.gram, canonical_extension(iv, k));
    std::vector<double> errs;
    for (double h : {1e-2, 1e-3, 1e-4}) errs.push_back(perron_error(iv, k, exact, ex.seq, h));
    const bool monotone = errs[1] <= errs[0] && errs[2] <= errs[1];
    const bool ok = monotone && errs[2] <= 1e-3;
    pass = pass && ok;
    detail += fmt::format("{}{}: {:.1e} > {:.1e} > {:.1e}", detail.empty() ? "" : "; ", ex.name, errs[0], errs[1], errs[2]);
  }
  return {pass, detail};
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"mmp"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
}

Outcome l_zero() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / fmt::format("mmp_acceptance_{}", std::random_device{}());
  fs::create_directories(dir);
  mmp::test::Rng rng(99);
  int agree = 0, exact_mass = 0, psd_cases = 0;
  const int cases = 40;
  for (int it = 0; it < cases; ++it) {
    const Index n = rng.integer(1, 3);
    const bool want_psd = it % 2 == 0;
    const HermMatrix s0 = want_psd ? mmp::test::random_hermitian_spectrum(rng, n, 0.0, 2.0)
                                   : mmp::test::random_hermitian_spectrum(rng, n, -1.0, -0.01);
    const MomentSequence seq(-1.0, 2.0, {s0});
    const auto problem = (dir / fmt::format("p{}.json", it)).string();
    const auto measure = (dir / fmt::format("m{}.json", it)).string();
    io::write_file(problem, io::serialize_problem(seq));
    const int code = run_cli({"solve", problem, "--out", measure});
    const bool psd = check_psd(io::parse_problem(io::read_file(problem))[0]);
    if ((code == 0) == psd) ++agree;
    if (psd) {
      ++psd_cases;
      const auto m = solve_l0(seq[0], seq.a(), seq.b());
      const auto parsed = code == 0 ? io::parse_measure(io::read_file(measure)) : m;
      if ((m.total_mass().mat().array() == seq[0].mat().array()).all() &&
          (parsed.total_mass().mat().array() == seq[0].mat().array()).all())
        ++exact_mass;
    }
  }
  fs::remove_all(dir);
  return {agree == cases && exact_mass == psd_cases,
          fmt::format("exit code matches S_0 PSD in {}/{} cases, exact total mass in {}/{}", agree, cases, exact_mass,
                      psd_cases)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"round-trip suite", round_trip},
      {"necessity and criteria agreement", necessity},
      {"determinate example", determinacy},
      {"indeterminate example", indeterminacy},
      {"generalized resolvent", resolvent},
      {"extremal completions vs brute force", extremal_oracle},
      {"even case interval", even_case},
      {"Stieltjes-Perron recovery", stieltjes_perron},
      {"l = 0", l_zero},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    fmt::print("criterion {}: {} - {} ({})\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, o.detail);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - static_cast<std::size_t>(failures), criteria.size());
  return failures == 0 ? 0 : 1;
}
