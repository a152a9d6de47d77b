#pragma once

/**
 * @file oracle.hpp
 * @brief Numerical evidence that the root families are complete.
 *
 * Seeded sampling of roots on the solution manifold, an exhaustive scan of
 * the decomposed coefficients (a, b, c, d) for fixed directions, Newton
 * projection of perturbed points back onto {q : q^2 = -1}, and pairwise
 * product tables for squaring a sum of terms.
 *
 * Randomness: every batch is driven by a master seed. Item n of a batch
 * draws from its own std::mt19937_64 seeded with seed_seq{seed_lo,
 * seed_hi, n_lo, n_hi}, so results do not depend on the thread count.
 */

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "biquat/algebra.hpp"
#include "biquat/roots.hpp"

namespace biquat {

using Rng = std::mt19937_64;

/// Independent stream for item `task` of a batch seeded by `master_seed`.
inline Rng task_stream(std::uint64_t master_seed, std::uint64_t task) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(task), static_cast<std::uint32_t>(task >> 32)};
  return Rng(seq);
}

namespace detail {

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(n) for n in [0, count) on up to `threads` workers.
inline void parallel_for(std::size_t count, unsigned threads,
                         const std::function<void(std::size_t)>& body) {
  threads = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), count));
  if (threads <= 1) {
    for (std::size_t n = 0; n < count; ++n) body(n);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t n = next++; n < count; n = next++) body(n);
    });
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Sampling

/// Uniform direction on S^2 from a normalized Gaussian triple.
inline PureUnit sample_unit_pure(Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (;;) {
    const double x = gauss(rng);
    const double y = gauss(rng);
    const double z = gauss(rng);
    if (x * x + y * y + z * z > 1e-300) return PureUnit::normalized(x, y, z);
  }
}

/// Uniform direction on the great circle perpendicular to `mu`.
inline PureUnit sample_perpendicular(const PureUnit& mu, Rng& rng) {
  const Quaternion m = mu.quaternion();
  for (;;) {
    const PureUnit v = sample_unit_pure(rng);
    Quaternion p = v.quaternion() - mu.dot(v) * m;
    if (p.norm() < 1e-6) continue;
    p = PureUnit::normalized(p).quaternion();
    // second projection pass brings the dot product to rounding level
    p = p - (p.x * m.x + p.y * m.y + p.z * m.z) * m;
    return PureUnit::normalized(p);
  }
}

/// Random nontrivial root with t uniform in (0, t_max].
inline Biquaternion sample_root(Rng& rng, double t_max) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) {
    throw PreconditionError("sample_root: t_max must be positive and finite");
  }
  const PureUnit mu = sample_unit_pure(rng);
  const PureUnit nu = sample_perpendicular(mu, rng);
  const double t = t_max - std::uniform_real_distribution<double>(0.0, t_max)(rng);
  return make_nontrivial_root(mu, nu, t);
}

/// `count` roots; item n is drawn from task_stream(seed, n).
inline std::vector<Biquaternion> sample_roots(std::uint64_t seed, std::size_t count,
                                              double t_max, unsigned threads = 0) {
  std::vector<Biquaternion> out(count);
  detail::parallel_for(count, threads, [&](std::size_t n) {
    Rng rng = task_stream(seed, n);
    out[n] = sample_root(rng, t_max);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Lattice search

struct LatticeSpec {
  double bound = 2.0;
  double step = 0.25;
  PureUnit mu;
  PureUnit nu;

  /// Grid points per axis: the multiples of `step` in [-bound, bound].
  std::size_t axis_count() const {
    if (!(bound > 0.0) || !(step > 0.0) || !std::isfinite(bound) || !std::isfinite(step)) {
      throw PreconditionError("lattice: bound and step must be positive and finite");
    }
    const double ratio = bound / step;
    const double half = std::round(ratio);
    if (std::abs(ratio - half) > 1e-9 * std::max(1.0, ratio)) {
      throw PreconditionError("lattice: bound must be an integer multiple of step");
    }
    if (half > 1e8) throw PreconditionError("lattice: grid too large");
    return 2 * static_cast<std::size_t>(half) + 1;
  }

  double coordinate(std::size_t n) const {
    const auto half = static_cast<std::int64_t>(axis_count() / 2);
    return static_cast<double>(static_cast<std::int64_t>(n) - half) * step;
  }
};

inline constexpr std::size_t kMaxLatticePoints = 100'000'000;

struct LatticeHit {
  double a, b, c, d;
  double residual;
  RootClassification classification;
};

/// A point whose residual passed but that fits no solution family.
struct LatticeViolation {
  double a, b, c, d;
  double residual;
  std::string message;
};

struct SearchReport {
  std::vector<LatticeHit> hits;
  std::vector<LatticeViolation> violations;
  std::size_t scanned = 0;
  double tolerance = 0.0;

  bool theorem_violation() const { return !violations.empty(); }
};

/// Scans q = (a + b mu) + (c + d nu) I over the lattice and records every
/// point with ||q^2 + 1|| <= tol, in (a, b, c, d) lexicographic order.
inline SearchReport lattice_search(const LatticeSpec& spec, double tol = kDefaultTolerance,
                                   unsigned threads = 0) {
  if (!(tol > 0.0)) throw PreconditionError("lattice_search: tolerance must be positive");
  const std::size_t n = spec.axis_count();
  if (static_cast<double>(n) * n * n * n > static_cast<double>(kMaxLatticePoints)) {
    throw PreconditionError("lattice_search: grid of " + std::to_string(n) +
                            "^4 points exceeds the limit of " + std::to_string(kMaxLatticePoints));
  }

  std::vector<double> axis(n);
  for (std::size_t k = 0; k < n; ++k) axis[k] = spec.coordinate(k);
  const Quaternion mu = spec.mu.quaternion();
  const Quaternion nu = spec.nu.quaternion();

  struct Slice {
    std::vector<LatticeHit> hits;
    std::vector<LatticeViolation> violations;
  };
  std::vector<Slice> slices(n);

  detail::parallel_for(n, threads, [&](std::size_t ia) {
    Slice& slice = slices[ia];
    const double a = axis[ia];
    for (double b : axis) {
      for (double c : axis) {
        for (double d : axis) {
          const Biquaternion q{Quaternion{a, 0, 0, 0} + b * mu, Quaternion{c, 0, 0, 0} + d * nu};
          const double r = root_residual(q);
          if (!(r <= tol)) continue;
          try {
            slice.hits.push_back({a, b, c, d, r, classify_root(q, tol)});
          } catch (const TheoremViolation& e) {
            slice.violations.push_back({a, b, c, d, r, e.what()});
          }
        }
      }
    }
  });

  SearchReport report;
  report.scanned = n * n * n * n;
  report.tolerance = tol;
  for (auto& s : slices) {
    std::move(s.hits.begin(), s.hits.end(), std::back_inserter(report.hits));
    std::move(s.violations.begin(), s.violations.end(), std::back_inserter(report.violations));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Newton refinement

class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, int iterations, double residual)
      : std::runtime_error(what), iterations_(iterations), residual_(residual) {}
  int iterations() const { return iterations_; }
  double residual() const { return residual_; }

 private:
  int iterations_;
  double residual_;
};

struct RefineOptions {
  double target = 1e-12;          // stop once ||q^2 + 1|| <= target
  double basin = 0.1;             // reject starting points with a larger residual
  double fd_step = 1e-6;          // central-difference step for the Jacobian
  double rank_threshold = 1e-8;   // relative singular-value cutoff
  double classify_tol = kDefaultTolerance;
};

struct RefineResult {
  Biquaternion q;
  int iterations = 0;
  double residual = 0.0;
  RootClassification classification;
};

namespace detail {

using Vec8 = Eigen::Matrix<double, 8, 1>;
using Mat8 = Eigen::Matrix<double, 8, 8>;

inline Vec8 to_vec(const Biquaternion& q) {
  const auto c = q.coefficients();
  return Vec8(c.data());
}

inline Biquaternion from_vec(const Vec8& v) {
  std::array<double, 8> c{};
  for (int n = 0; n < 8; ++n) c[n] = v[n];
  return Biquaternion::from_coefficients(c);
}

// F(q) = coefficients of q^2 + 1
inline Vec8 root_map(const Vec8& v) {
  const Biquaternion q = from_vec(v);
  Biquaternion s = q * q;
  s.qr.w += 1.0;
  return to_vec(s);
}

inline Mat8 fd_jacobian(const Vec8& v, double h) {
  Mat8 jac;
  for (int col = 0; col < 8; ++col) {
    Vec8 plus = v;
    Vec8 minus = v;
    plus[col] += h;
    minus[col] -= h;
    jac.col(col) = (root_map(plus) - root_map(minus)) / (2.0 * h);
  }
  return jac;
}

}  // namespace detail

/// Projects q0 onto the root manifold by Newton iteration on the 8-real map
/// q -> q^2 + 1. The manifold is not a discrete set, so the Jacobian is rank
/// deficient near it; steps use the minimum-norm least-squares solution.
/// A step that fails to lower the residual is halved until it does.
inline RefineResult refine_root(const Biquaternion& q0, int max_iter,
                                const RefineOptions& opt = {}) {
  if (!q0.is_finite()) throw PreconditionError("refine_root: non-finite start");
  double residual = root_residual(q0);
  if (!(residual <= opt.basin)) {
    throw PreconditionError("refine_root: starting residual " + std::to_string(residual) +
                            " is outside the basin guard " + std::to_string(opt.basin));
  }

  detail::Vec8 v = detail::to_vec(q0);
  int iter = 0;
  while (residual > opt.target) {
    if (iter >= max_iter) {
      throw NonConvergence("refine_root: no convergence after " + std::to_string(iter) +
                               " iterations",
                           iter, residual);
    }
    ++iter;
    const detail::Mat8 jac = detail::fd_jacobian(v, opt.fd_step);
    Eigen::JacobiSVD<detail::Mat8> svd(jac, Eigen::ComputeFullU | Eigen::ComputeFullV);
    svd.setThreshold(opt.rank_threshold);
    const detail::Vec8 step = -svd.solve(detail::root_map(v));

    double scale = 1.0;
    bool accepted = false;
    for (int halving = 0; halving < 40; ++halving, scale *= 0.5) {
      const detail::Vec8 trial = v + scale * step;
      const double r = root_residual(detail::from_vec(trial));
      if (r < residual) {
        v = trial;
        residual = r;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      throw NonConvergence("refine_root: damped step failed to reduce the residual", iter, residual);
    }
  }

  const Biquaternion q = detail::from_vec(v);
  return {q, iter, residual, classify_root(q, opt.classify_tol)};
}

// ---------------------------------------------------------------------------
// Term tables

/// Pairwise products of the summands of q; entry (r, c) = parts[r] * parts[c].
/// Summing every entry gives q^2 by distributivity.
class TermTable {
 public:
  explicit TermTable(std::span<const Biquaternion> parts)
      : parts_(parts.begin(), parts.end()), entries_(parts.size() * parts.size()) {
    for (std::size_t r = 0; r < size(); ++r) {
      for (std::size_t c = 0; c < size(); ++c) entries_[r * size() + c] = parts_[r] * parts_[c];
    }
  }

  std::size_t size() const { return parts_.size(); }
  const Biquaternion& part(std::size_t n) const { return parts_.at(n); }
  const Biquaternion& at(std::size_t row, std::size_t col) const {
    return entries_.at(row * size() + col);
  }

  Biquaternion sum() const {
    Biquaternion q;
    for (const auto& p : parts_) q += p;
    return q;
  }

  Biquaternion total() const {
    Biquaternion t;
    for (const auto& e : entries_) t += e;
    return t;
  }

 private:
  std::vector<Biquaternion> parts_;
  std::vector<Biquaternion> entries_;
};

inline TermTable term_table(std::span<const Biquaternion> parts) { return TermTable(parts); }

}  // namespace biquat
