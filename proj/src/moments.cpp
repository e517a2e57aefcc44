#include "mmp/moments.hpp"

#include "mmp/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <random>

namespace mmp {

MomentSequence::MomentSequence(double a, double b, std::vector<HermMatrix> moments)
    : a_(a), b_(b), n_(0), moments_(std::move(moments)) {
  if (!(a_ < b_) || !std::isfinite(a_) || !std::isfinite(b_)) {
    throw ValidationError(fmt::format("interval endpoints must satisfy a < b (got a={}, b={})", a_, b_));
  }
  if (moments_.empty()) throw ValidationError("moment sequence is empty");
  n_ = moments_.front().dim();
  if (n_ < 1) throw ValidationError("block size must be positive");
  for (std::size_t i = 0; i < moments_.size(); ++i) {
    if (moments_[i].dim() != n_) {
      throw ValidationError(fmt::format("moment S_{} has size {}, expected {}", i, moments_[i].dim(), n_));
    }
  }
}

MomentSequence MomentSequence::scalar(double a, double b, std::initializer_list<double> moments) {
  std::vector<HermMatrix> s;
  for (double m : moments) s.push_back(HermMatrix::scalar(m));
  return MomentSequence(a, b, std::move(s));
}

MomentSequence MomentSequence::appended(const HermMatrix& next) const {
  auto s = moments_;
  s.push_back(next);
  return MomentSequence(a_, b_, std::move(s));
}

MomentSequence MomentSequence::truncated(int new_l) const {
  if (new_l < 0 || new_l > l()) throw ParameterError(fmt::format("cannot truncate l={} to {}", l(), new_l));
  return MomentSequence(a_, b_, {moments_.begin(), moments_.begin() + new_l + 1});
}

std::string_view to_string(HankelKind kind) {
  switch (kind) {
    case HankelKind::Gamma: return "Gamma";
    case HankelKind::GammaTilde: return "GammaTilde";
    case HankelKind::H: return "H";
    case HankelKind::HTilde: return "HTilde";
    case HankelKind::GammaHat: return "GammaHat";
  }
  return "?";
}

namespace {

void require_moments(const MomentSequence& seq, int highest, std::string_view what) {
  if (highest > seq.l()) {
    throw InsufficientMomentsError(
        fmt::format("{} needs moments up to S_{}, sequence has l={}", what, highest, seq.l()));
  }
}

// Block Hankel matrix with `blocks` x `blocks` blocks, block (i, j) = f(i + j).
template <typename BlockFn>
HermMatrix hankel(Index n, int blocks, BlockFn&& f) {
  Matrix m = Matrix::Zero(n * blocks, n * blocks);
  for (int i = 0; i < blocks; ++i) {
    for (int j = 0; j < blocks; ++j) m.block(i * n, j * n, n, n) = f(i + j);
  }
  // Each block is an exact linear combination of Hermitian blocks, so m is exactly Hermitian.
  return HermMatrix::symmetrized(m);
}

}  // namespace

BlockHankel build_gamma(const MomentSequence& seq, int k) {
  if (k < 0) throw ParameterError("negative Hankel order");
  require_moments(seq, 2 * k, "Gamma_k");
  return {HankelKind::Gamma, k,
          hankel(seq.block_size(), k + 1, [&](int s) -> const Matrix& { return seq[s].mat(); })};
}

BlockHankel build_gamma_tilde(const MomentSequence& seq, int k) {
  if (k < 0) throw ParameterError("negative Hankel order");
  require_moments(seq, 2 * k, "GammaTilde_k");
  const double a = seq.a(), b = seq.b();
  return {HankelKind::GammaTilde, k, hankel(seq.block_size(), k, [&](int s) -> Matrix {
            return -a * b * seq[s].mat() + (a + b) * seq[s + 1].mat() - seq[s + 2].mat();
          })};
}

std::pair<BlockHankel, BlockHankel> build_h_pair(const MomentSequence& seq, int k) {
  if (k < 0) throw ParameterError("negative Hankel order");
  require_moments(seq, 2 * k + 1, "H_k");
  const double a = seq.a(), b = seq.b();
  const Index n = seq.block_size();
  BlockHankel h{HankelKind::H, k,
                hankel(n, k + 1, [&](int s) -> Matrix { return -a * seq[s].mat() + seq[s + 1].mat(); })};
  BlockHankel ht{HankelKind::HTilde, k,
                 hankel(n, k + 1, [&](int s) -> Matrix { return b * seq[s].mat() - seq[s + 1].mat(); })};
  return {std::move(h), std::move(ht)};
}

BlockHankel build_gamma_hat(const MomentSequence& seq, int d) {
  if (d < 1) throw ParameterError("GammaHat_{d-1} needs d >= 1");
  require_moments(seq, 2 * d, "GammaHat_{d-1}");
  return {HankelKind::GammaHat, d - 1,
          hankel(seq.block_size(), d, [&](int s) -> const Matrix& { return seq[s + 2].mat(); })};
}

Matrix block_column(const MomentSequence& seq, int from, int count) {
  require_moments(seq, from + count - 1, "block column");
  const Index n = seq.block_size();
  Matrix col(n * count, n);
  for (int i = 0; i < count; ++i) col.middleRows(i * n, n) = seq[from + i].mat();
  return col;
}

// ---- DiscreteMatrixMeasure --------------------------------------------------

DiscreteMatrixMeasure::DiscreteMatrixMeasure(double a, double b, Index n, std::vector<Atom> atoms)
    : a_(a), b_(b), n_(n) {
  if (!(a < b)) throw ValidationError("measure interval must satisfy a < b");
  if (n < 1) throw ValidationError("measure block size must be positive");
  for (const Atom& at : atoms) {
    if (at.weight.dim() != n) throw ValidationError("atom weight has the wrong block size");
    if (!std::isfinite(at.x)) throw ValidationError("atom position is not finite");
  }
  std::stable_sort(atoms.begin(), atoms.end(), [](const Atom& l, const Atom& r) { return l.x < r.x; });

  const double merge_gap = 1e-12 * (b - a);
  std::vector<Atom> merged;
  for (Atom& at : atoms) {
    if (!merged.empty() && at.x - merged.back().x < merge_gap) {
      Atom& prev = merged.back();
      const double wp = std::abs(prev.weight.mat().trace());
      const double wa = std::abs(at.weight.mat().trace());
      if (wp + wa > 0.0) prev.x = std::clamp((wp * prev.x + wa * at.x) / (wp + wa), prev.x, at.x);
      prev.weight += at.weight;
    } else {
      merged.push_back(std::move(at));
    }
  }

  HermMatrix total(n);
  for (const Atom& at : merged) total += at.weight;
  const double cutoff = 1e-12 * total.norm();
  for (Atom& at : merged) {
    if (at.weight.norm() > cutoff) atoms_.push_back(std::move(at));
  }
}

DiscreteMatrixMeasure DiscreteMatrixMeasure::unchecked(double a, double b, Index n, std::vector<Atom> atoms) {
  return DiscreteMatrixMeasure(a, b, n, std::move(atoms));
}

DiscreteMatrixMeasure DiscreteMatrixMeasure::make(double a, double b, Index n, std::vector<Atom> atoms) {
  DiscreteMatrixMeasure m(a, b, n, std::move(atoms));
  for (const Atom& at : m.atoms_) {
    if (at.x < a || at.x > b) {
      throw ValidationError(fmt::format("atom at {} lies outside [{}, {}]", at.x, a, b));
    }
    if (!check_psd(at.weight)) {
      throw ValidationError(fmt::format("atom weight at {} is not PSD", at.x));
    }
  }
  return m;
}

HermMatrix DiscreteMatrixMeasure::total_mass() const {
  HermMatrix total(n_);
  for (const Atom& at : atoms_) total += at.weight;
  return total;
}

HermMatrix DiscreteMatrixMeasure::distribution(double x) const {
  HermMatrix acc(n_);
  for (const Atom& at : atoms_) {
    if (at.x < x) acc += at.weight;
  }
  return acc;
}

MomentSequence moments_of(const DiscreteMatrixMeasure& measure, int l) {
  if (l < 0) throw ParameterError("moments_of needs l >= 0");
  const Index n = measure.block_size();
  std::vector<Matrix> s(static_cast<std::size_t>(l) + 1, Matrix::Zero(n, n));
  for (const Atom& at : measure.atoms()) {
    double power = 1.0;  // 0^0 = 1
    for (int k = 0; k <= l; ++k) {
      s[static_cast<std::size_t>(k)] += power * at.weight.mat();
      power *= at.x;
    }
  }
  std::vector<HermMatrix> out;
  out.reserve(s.size());
  for (const Matrix& m : s) out.push_back(HermMatrix::symmetrized(m));
  return MomentSequence(measure.a(), measure.b(), std::move(out));
}

DiscreteMatrixMeasure gen_random_measure(std::uint64_t seed, Index n, int num_atoms, double a, double b) {
  if (num_atoms < 1) throw ParameterError("gen_random_measure needs at least one atom");
  if (n < 1) throw ParameterError("gen_random_measure needs N >= 1");
  if (!(a < b)) throw ParameterError("gen_random_measure needs a < b");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> position(a, b);
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));

  std::vector<double> xs(static_cast<std::size_t>(num_atoms));
  for (double& x : xs) x = position(rng);
  std::sort(xs.begin(), xs.end());

  std::vector<Atom> atoms;
  for (double x : xs) {
    Matrix g(n, n);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        g(i, j) = Complex(re, im);
      }
    }
    atoms.push_back({x, HermMatrix::symmetrized(g.adjoint() * g)});
  }
  return DiscreteMatrixMeasure::make(a, b, n, std::move(atoms));
}

}  // namespace mmp
