#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <thread>
#include <vector>

#include "wnc/function_element.hpp"
#include "wnc/product.hpp"
#include "wnc/rng.hpp"
#include "wnc/ufunctional.hpp"

namespace wnc {

struct Estimate {
  cplx value;
  double stderr_;
  std::uint64_t samples;
};

namespace detail {

inline constexpr std::uint64_t kBlockSize = 1 << 12;
inline constexpr std::size_t kJackknifeGroups = 100;

// Order-independent reduction: pairwise summation over a fixed index order.
inline cplx pairwise_sum(std::span<const cplx> v) {
  if (v.size() <= 8) {
    cplx s{0.0, 0.0};
    for (const cplx& x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

}  // namespace detail

inline unsigned default_workers() {
  if (const char* env = std::getenv("WNC_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

// Mean of fn(sample_index) over N samples with jackknife standard error.
// Samples are grouped into fixed blocks keyed by index, so the result is
// bit-identical for every worker count.
inline Estimate estimate_mean(
    std::uint64_t n_samples, std::uint64_t seed, unsigned workers,
    const std::function<cplx(std::uint64_t, CounterRng&)>& fn) {
  const std::uint64_t n_blocks =
      (n_samples + detail::kBlockSize - 1) / detail::kBlockSize;
  std::vector<cplx> block_sums(n_blocks, cplx{0.0, 0.0});
  auto run_block = [&](std::uint64_t b) {
    const std::uint64_t lo = b * detail::kBlockSize;
    const std::uint64_t hi = std::min(n_samples, lo + detail::kBlockSize);
    cplx s{0.0, 0.0};
    for (std::uint64_t i = lo; i < hi; ++i) {
      CounterRng rng(seed, i);
      s += fn(i, rng);
    }
    block_sums[b] = s;
  };
  if (workers <= 1) {
    for (std::uint64_t b = 0; b < n_blocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::uint64_t b = w; b < n_blocks; b += workers) run_block(b);
      });
    for (std::thread& th : pool) th.join();
  }
  const cplx total = detail::pairwise_sum(block_sums);
  const cplx mean = total / static_cast<double>(n_samples);

  // Leave-one-group-out jackknife over blocks of blocks.
  const std::size_t groups =
      std::min<std::size_t>(detail::kJackknifeGroups, n_blocks);
  std::vector<cplx> group_sums(groups, cplx{0.0, 0.0});
  std::vector<std::uint64_t> group_counts(groups, 0);
  for (std::uint64_t b = 0; b < n_blocks; ++b) {
    const std::uint64_t lo = b * detail::kBlockSize;
    const std::uint64_t hi = std::min(n_samples, lo + detail::kBlockSize);
    group_sums[b % groups] += block_sums[b];
    group_counts[b % groups] += hi - lo;
  }
  double var_re = 0.0;
  double var_im = 0.0;
  if (groups >= 2) {
    std::vector<cplx> loo(groups);
    cplx loo_mean{0.0, 0.0};
    for (std::size_t g = 0; g < groups; ++g) {
      loo[g] = (total - group_sums[g]) /
               static_cast<double>(n_samples - group_counts[g]);
      loo_mean += loo[g];
    }
    loo_mean /= static_cast<double>(groups);
    for (std::size_t g = 0; g < groups; ++g) {
      const cplx d = loo[g] - loo_mean;
      var_re += d.real() * d.real();
      var_im += d.imag() * d.imag();
    }
    const double factor =
        static_cast<double>(groups - 1) / static_cast<double>(groups);
    var_re *= factor;
    var_im *= factor;
  }
  return {mean, std::sqrt(var_re + var_im), n_samples};
}

// Correlated Gaussian sampler for the pairings (<omega, f_1>, ...,
// <omega, f_n>) of a declared real family, with an optional extra real
// direction xi sampled jointly through its cross-covariances.
class PairingSampler {
 public:
  explicit PairingSampler(std::vector<FunctionElement> family)
      : family_(std::move(family)), matrix_(family_) {}

  std::size_t size() const { return family_.size(); }
  const GramMatrix& matrix() const { return matrix_; }

  // Declares the transform direction; pairings of xi are produced as the
  // conditionally consistent component given the family pairings, so a
  // linearly dependent xi is fine.
  void attach_direction(const FunctionElement& xi) {
    const std::size_t n = family_.size();
    std::vector<cplx> cross(n);
    for (std::size_t j = 0; j < n; ++j)
      cross[j] = inner_product(family_[j], xi);
    // w solves L w = cross, so that Cov(x, xi) comes out right.
    xi_weights_.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double s = cross[i].real();
      for (std::size_t j = 0; j < i; ++j)
        s -= matrix_.cholesky(i, j) * xi_weights_[j];
      xi_weights_[i] = s / matrix_.cholesky(i, i);
    }
    double w2 = 0.0;
    for (double w : xi_weights_) w2 += w * w;
    const double xi2 = std::pow(norm(xi), 2);
    xi_residual_ = std::sqrt(std::max(0.0, xi2 - w2));
    has_direction_ = true;
  }

  // Fills `pairings` (size n) and returns the xi pairing (0 when no
  // direction is attached).
  double sample(CounterRng& rng, std::vector<double>& pairings) const {
    const std::size_t n = family_.size();
    pairings.assign(n, 0.0);
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = rng.next_normal();
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j <= i; ++j) s += matrix_.cholesky(i, j) * g[j];
      pairings[i] = s;
    }
    if (!has_direction_) return 0.0;
    double xi_pairing = xi_residual_ * rng.next_normal();
    for (std::size_t i = 0; i < family_.size(); ++i)
      xi_pairing += xi_weights_[i] * g[i];
    return xi_pairing;
  }

 private:
  std::vector<FunctionElement> family_;
  GramMatrix matrix_;
  std::vector<double> xi_weights_;
  double xi_residual_ = 0.0;
  bool has_direction_ = false;
};

enum class TransformKind { S, T };

// MC estimator of the S- or T-transform of a cylinder functional
// Phi(omega) = functional(<omega, f_1>, ..., <omega, f_n>) at a real xi.
inline Estimate estimate_transform(
    TransformKind kind,
    const std::function<cplx(std::span<const double>)>& functional,
    const std::vector<FunctionElement>& family, const FunctionElement& xi,
    std::uint64_t n_samples, std::uint64_t seed,
    unsigned workers = 1) {
  PairingSampler sampler(family);
  sampler.attach_direction(xi);
  const cplx wick_norm = characteristic_functional(xi);
  return estimate_mean(
      n_samples, seed, workers,
      [&](std::uint64_t, CounterRng& rng) -> cplx {
        thread_local std::vector<double> pairings;
        const double xi_pairing = sampler.sample(rng, pairings);
        const cplx phi = functional(pairings);
        if (kind == TransformKind::T)
          return phi * std::exp(cplx{0.0, xi_pairing});
        return phi * wick_norm * std::exp(xi_pairing);
      });
}

struct BrownianPath {
  std::vector<double> times;
  std::vector<double> values;
};

// One Brownian path on [0, T] from the counter-based stream `index`.
inline BrownianPath simulate_path(double horizon, std::size_t steps,
                                  std::uint64_t seed, std::uint64_t index) {
  BrownianPath path;
  path.times.resize(steps + 1);
  path.values.resize(steps + 1);
  const double dt = horizon / static_cast<double>(steps);
  const double sdt = std::sqrt(dt);
  CounterRng rng(seed, index);
  path.times[0] = 0.0;
  path.values[0] = 0.0;
  for (std::size_t k = 1; k <= steps; ++k) {
    path.times[k] = dt * static_cast<double>(k);
    path.values[k] = path.values[k - 1] + sdt * rng.next_normal();
  }
  return path;
}

}  // namespace wnc
