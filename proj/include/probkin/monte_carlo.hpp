#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "probkin/second_order.hpp"

namespace probkin {

// A Monte Carlo budget split into `chunks` independent streams. Chunk i draws
// samples / chunks samples, plus one more when i < samples % chunks.
struct McConfig {
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 42;
  std::size_t chunks = 64;

  // Throws InvalidInput unless samples ≥ 1 and chunks ≥ 1.
  void validate() const;
  std::size_t chunk_size(std::size_t chunk) const;
  std::size_t chunk_offset(std::size_t chunk) const;
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_total = 0;
  std::size_t n_accepted = 0;
};

// Seed of chunk i's generator: two rounds of SplitMix64 over
// seed ⊕ SplitMix64(i + 1). Each chunk runs its own std::mt19937_64.
std::uint64_t chunk_seed(std::uint64_t seed, std::size_t chunk);

// Draws HQBelief points from a second-order prior.
//   uniform:     four unit exponentials normalized to sum 1
//   dirichlet:   gamma(α_i) draws normalized to sum 1
//   conditional: r, x, y uniform; a = r·x, b = r·(1 − x), c = (1 − r)·y
class PriorSampler {
 public:
  PriorSampler(const SecondOrderPrior& prior, std::uint64_t seed);

  HQBelief next();

 private:
  double uniform01();
  double unit_exponential();

  SecondOrderPrior prior_;
  std::mt19937_64 engine_;
  std::array<std::gamma_distribution<double>, 4> gamma_;
};

// The full sample stream for (seed, chunks), chunk by chunk. Chunks are filled
// in parallel; the result does not depend on the thread count.
std::vector<HQBelief> sample_prior(const SecondOrderPrior& prior,
                                   const McConfig& cfg);

struct McPosterior {
  std::array<McEstimate, 4> quadrants;  // R1, R2, B1, B2
  McEstimate blue;                      // B1 + B2, with its own stderr
  std::size_t n_total = 0;
  std::size_t n_accepted = 0;

  const McEstimate& operator[](Quadrant q) const {
    return quadrants[std::size_t(q)];
  }
};

// Rejection conditioning on the band followed by the Trust expectation: for
// each quadrant, the mean of the sampled belief's probability over accepted
// samples, with stderr = sample standard deviation / √n_accepted (0 when only
// one sample is accepted).
// Chunks run in parallel and are merged in chunk order, so results are
// bit-identical for any thread count.
// Throws NoAcceptedSamples when no sample lands in the band.
McPosterior mc_posterior_quadrants(const SecondOrderPrior& prior,
                                   const MessageBand& band,
                                   const McConfig& cfg);

// Single-threaded reference: materializes the stream with sample_prior, then
// computes means and deviations with the textbook two-pass formulas. Agrees
// with mc_posterior_quadrants up to rounding.
McPosterior mc_posterior_quadrants_serial(const SecondOrderPrior& prior,
                                          const MessageBand& band,
                                          const McConfig& cfg);

// Weighted mean of Pr_HQ(E). Throws InvalidInput for mismatched lengths,
// negative weights or a zero total.
double trust_expectation(std::span<const HQBelief> samples,
                         std::span<const double> weights, const Event& e);

// Equal-weight version with its standard error.
McEstimate trust_estimate(std::span<const HQBelief> samples, const Event& e);

// Two-sided Kolmogorov–Smirnov distance between the empirical CDF of the
// samples and `cdf`. Throws InvalidInput for an empty sample.
double ks_statistic(std::span<const double> samples,
                    const std::function<double(double)>& cdf);

// Asymptotic two-sided KS critical value at α = 0.001: 1.95 / √n.
double ks_critical_value(std::size_t n);

// Largest |F_joint(q_i, p_j) − F_condred(q_i)·F_blue(p_j)| over the lattice
// q_i, p_j ∈ {1/grid, 2/grid, …, 1}, all CDFs empirical with strict "<".
// Samples whose conditional red probability is undefined are skipped.
// Throws InvalidInput for grid < 2.
double independence_check(const SecondOrderPrior& prior, const McConfig& cfg,
                          std::size_t grid);

// Same statistic over an explicit list of (cond_red, blue) pairs by direct
// counting, O(n·grid²). Used as the reference for the binned kernel.
double independence_deviation_direct(std::span<const double> cond_red_values,
                                     std::span<const double> blue_values,
                                     std::size_t grid);

// Samples of cond_red and blue_prob for goodness-of-fit checks; beliefs with
// a + b = 0 are dropped from the cond_red list only.
struct MarginalSamples {
  std::vector<double> cond_red;
  std::vector<double> blue;
};
MarginalSamples marginal_samples(const SecondOrderPrior& prior,
                                 const McConfig& cfg);

}  // namespace probkin
