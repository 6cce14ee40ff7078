#include "probkin/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "probkin/errors.hpp"

namespace probkin {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Running mean / sum of squared deviations for the four quadrant
// probabilities and Blue, in that order.
constexpr std::size_t kStats = 5;
using StatVec = std::array<double, kStats>;

StatVec stat_values(const HQBelief& h) {
  return {h.a(), h.b(), h.c(), h.d(), blue_prob(h)};
}

struct Moments {
  std::size_t n = 0;
  StatVec mean{};
  StatVec m2{};

  void push(const StatVec& v) {
    ++n;
    const double inv = 1.0 / double(n);
    for (std::size_t k = 0; k < kStats; ++k) {
      const double delta = v[k] - mean[k];
      mean[k] += delta * inv;
      m2[k] += delta * (v[k] - mean[k]);
    }
  }

  void merge(const Moments& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double na = double(n), nb = double(o.n), nt = na + nb;
    for (std::size_t k = 0; k < kStats; ++k) {
      const double delta = o.mean[k] - mean[k];
      mean[k] += delta * nb / nt;
      m2[k] += o.m2[k] + delta * delta * na * nb / nt;
    }
    n += o.n;
  }
};

McEstimate make_estimate(double mean, double sum_sq_dev, std::size_t n_acc,
                         std::size_t n_total) {
  McEstimate e;
  e.mean = mean;
  e.n_total = n_total;
  e.n_accepted = n_acc;
  e.std_error = n_acc > 1
                    ? std::sqrt(sum_sq_dev / double(n_acc - 1) / double(n_acc))
                    : 0.0;
  return e;
}

McPosterior finish(const StatVec& mean, const StatVec& m2, std::size_t n_acc,
                   std::size_t n_total) {
  if (n_acc == 0) {
    throw NoAcceptedSamples("no sample out of " + std::to_string(n_total) +
                            " fell in the message band");
  }
  McPosterior out;
  for (std::size_t k = 0; k < 4; ++k) {
    out.quadrants[k] = make_estimate(mean[k], m2[k], n_acc, n_total);
  }
  out.blue = make_estimate(mean[4], m2[4], n_acc, n_total);
  out.n_total = n_total;
  out.n_accepted = n_acc;
  return out;
}

// Index of the first threshold i/grid (i = 1..grid) strictly above v, or
// grid + 1 when there is none.
std::size_t threshold_bin(double v, const std::vector<double>& thresholds) {
  auto it = std::upper_bound(thresholds.begin(), thresholds.end(), v);
  return static_cast<std::size_t>(it - thresholds.begin()) + 1;
}

std::vector<double> lattice(std::size_t grid) {
  std::vector<double> t(grid);
  for (std::size_t i = 0; i < grid; ++i) t[i] = double(i + 1) / double(grid);
  return t;
}

}  // namespace

void McConfig::validate() const {
  if (samples < 1) throw InvalidInput("sample count must be at least 1");
  if (chunks < 1) throw InvalidInput("chunk count must be at least 1");
}

std::size_t McConfig::chunk_size(std::size_t chunk) const {
  return samples / chunks + (chunk < samples % chunks ? 1 : 0);
}

std::size_t McConfig::chunk_offset(std::size_t chunk) const {
  return chunk * (samples / chunks) + std::min(chunk, samples % chunks);
}

std::uint64_t chunk_seed(std::uint64_t seed, std::size_t chunk) {
  return splitmix64(splitmix64(seed ^ splitmix64(std::uint64_t(chunk) + 1)));
}

PriorSampler::PriorSampler(const SecondOrderPrior& prior, std::uint64_t seed)
    : prior_(prior), engine_(seed) {
  if (const auto* d = std::get_if<DirichletPrior>(&prior.variant())) {
    for (std::size_t i = 0; i < 4; ++i) {
      gamma_[i] = std::gamma_distribution<double>(d->alpha[i], 1.0);
    }
  }
}

double PriorSampler::uniform01() {
  // 53 random bits; result in [0, 1).
  return double(engine_() >> 11) * 0x1.0p-53;
}

double PriorSampler::unit_exponential() { return -std::log1p(-uniform01()); }

HQBelief PriorSampler::next() {
  switch (prior_.variant().index()) {
    case 0: {
      const double e0 = unit_exponential(), e1 = unit_exponential(),
                   e2 = unit_exponential(), e3 = unit_exponential();
      const double s = e0 + e1 + e2 + e3;
      return HQBelief::trusted(e0 / s, e1 / s, e2 / s, e3 / s);
    }
    case 1: {
      std::array<double, 4> g{};
      double s = 0.0;
      for (std::size_t i = 0; i < 4; ++i) {
        g[i] = gamma_[i](engine_);
        s += g[i];
      }
      // All four gamma draws underflowing to 0 is possible only for tiny α.
      if (!(s > 0.0)) return HQBelief::trusted(0.25, 0.25, 0.25, 0.25);
      return HQBelief::trusted(g[0] / s, g[1] / s, g[2] / s, g[3] / s);
    }
    default: {
      const double r = uniform01(), x = uniform01(), y = uniform01();
      return HQBelief::trusted(r * x, r * (1.0 - x), (1.0 - r) * y,
                               (1.0 - r) * (1.0 - y));
    }
  }
}

std::vector<HQBelief> sample_prior(const SecondOrderPrior& prior,
                                   const McConfig& cfg) {
  cfg.validate();
  std::vector<HQBelief> out(cfg.samples, HQBelief::trusted(0, 0, 0, 1));
  const auto chunks = static_cast<std::ptrdiff_t>(cfg.chunks);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t c = 0; c < chunks; ++c) {
    const auto chunk = std::size_t(c);
    PriorSampler sampler(prior, chunk_seed(cfg.seed, chunk));
    const std::size_t begin = cfg.chunk_offset(chunk);
    const std::size_t end = begin + cfg.chunk_size(chunk);
    for (std::size_t i = begin; i < end; ++i) out[i] = sampler.next();
  }
  return out;
}

McPosterior mc_posterior_quadrants(const SecondOrderPrior& prior,
                                   const MessageBand& band,
                                   const McConfig& cfg) {
  cfg.validate();
  std::vector<Moments> partial(cfg.chunks);
  const auto chunks = static_cast<std::ptrdiff_t>(cfg.chunks);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t c = 0; c < chunks; ++c) {
    const auto chunk = std::size_t(c);
    PriorSampler sampler(prior, chunk_seed(cfg.seed, chunk));
    Moments m;
    for (std::size_t i = 0, n = cfg.chunk_size(chunk); i < n; ++i) {
      const HQBelief h = sampler.next();
      if (band.accepts(h)) m.push(stat_values(h));
    }
    partial[chunk] = m;
  }
  Moments total;
  for (const auto& m : partial) total.merge(m);
  return finish(total.mean, total.m2, total.n, cfg.samples);
}

McPosterior mc_posterior_quadrants_serial(const SecondOrderPrior& prior,
                                          const MessageBand& band,
                                          const McConfig& cfg) {
  cfg.validate();
  std::vector<StatVec> accepted;
  for (std::size_t chunk = 0; chunk < cfg.chunks; ++chunk) {
    PriorSampler sampler(prior, chunk_seed(cfg.seed, chunk));
    for (std::size_t i = 0, n = cfg.chunk_size(chunk); i < n; ++i) {
      const HQBelief h = sampler.next();
      if (band.accepts(h)) accepted.push_back(stat_values(h));
    }
  }
  StatVec mean{}, ss{};
  for (const auto& v : accepted) {
    for (std::size_t k = 0; k < kStats; ++k) mean[k] += v[k];
  }
  if (!accepted.empty()) {
    for (double& m : mean) m /= double(accepted.size());
  }
  for (const auto& v : accepted) {
    for (std::size_t k = 0; k < kStats; ++k) {
      ss[k] += (v[k] - mean[k]) * (v[k] - mean[k]);
    }
  }
  return finish(mean, ss, accepted.size(), cfg.samples);
}

double trust_expectation(std::span<const HQBelief> samples,
                         std::span<const double> weights, const Event& e) {
  if (samples.size() != weights.size()) {
    throw InvalidInput("samples and weights differ in length");
  }
  double total = 0.0, acc = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!(weights[i] >= 0.0) || !std::isfinite(weights[i])) {
      throw InvalidInput("weights must be finite and nonnegative");
    }
    total += weights[i];
    acc += weights[i] * belief_probability(samples[i], e);
  }
  if (!(total > 0.0)) throw InvalidInput("weights have zero total");
  return acc / total;
}

McEstimate trust_estimate(std::span<const HQBelief> samples, const Event& e) {
  if (samples.empty()) throw InvalidInput("no samples");
  double mean = 0.0;
  for (const auto& h : samples) mean += belief_probability(h, e);
  mean /= double(samples.size());
  double ss = 0.0;
  for (const auto& h : samples) {
    const double d = belief_probability(h, e) - mean;
    ss += d * d;
  }
  return make_estimate(mean, ss, samples.size(), samples.size());
}

double ks_statistic(std::span<const double> samples,
                    const std::function<double(double)>& cdf) {
  if (samples.empty()) throw InvalidInput("KS statistic of an empty sample");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = double(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, double(i + 1) / n - f, f - double(i) / n});
  }
  return d;
}

double ks_critical_value(std::size_t n) { return 1.95 / std::sqrt(double(n)); }

double independence_check(const SecondOrderPrior& prior, const McConfig& cfg,
                          std::size_t grid) {
  cfg.validate();
  if (grid < 2) throw InvalidInput("independence grid must be at least 2");
  const auto thresholds = lattice(grid);
  const std::size_t side = grid + 2;

  std::vector<std::vector<std::size_t>> partial(cfg.chunks);
  const auto chunks = static_cast<std::ptrdiff_t>(cfg.chunks);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t c = 0; c < chunks; ++c) {
    const auto chunk = std::size_t(c);
    std::vector<std::size_t> hist(side * side, 0);
    PriorSampler sampler(prior, chunk_seed(cfg.seed, chunk));
    for (std::size_t i = 0, n = cfg.chunk_size(chunk); i < n; ++i) {
      const HQBelief h = sampler.next();
      const double red = h.a() + h.b();
      if (!(red > 0.0)) continue;
      const std::size_t bx = threshold_bin(h.a() / red, thresholds);
      const std::size_t by = threshold_bin(blue_prob(h), thresholds);
      ++hist[bx * side + by];
    }
    partial[chunk] = std::move(hist);
  }

  // Prefix sums turn bin counts into counts of {X < t_i, Y < t_j}.
  std::vector<std::size_t> cum(side * side, 0);
  for (const auto& h : partial) {
    for (std::size_t k = 0; k < cum.size(); ++k) cum[k] += h[k];
  }
  for (std::size_t i = 1; i < side; ++i) {
    for (std::size_t j = 1; j < side; ++j) {
      cum[i * side + j] += cum[(i - 1) * side + j] + cum[i * side + j - 1] -
                           cum[(i - 1) * side + j - 1];
    }
  }
  const std::size_t n = cum[(side - 1) * side + side - 1];
  if (n == 0) throw NoAcceptedSamples("no sample has a defined Pr(R1 | R)");
  const double inv = 1.0 / double(n);
  double dev = 0.0;
  for (std::size_t i = 1; i <= grid; ++i) {
    const double fx = double(cum[i * side + side - 1]) * inv;
    for (std::size_t j = 1; j <= grid; ++j) {
      const double fy = double(cum[(side - 1) * side + j]) * inv;
      dev = std::max(dev, std::abs(double(cum[i * side + j]) * inv - fx * fy));
    }
  }
  return dev;
}

double independence_deviation_direct(std::span<const double> xs,
                                     std::span<const double> ys,
                                     std::size_t grid) {
  if (xs.size() != ys.size()) throw InvalidInput("sample lists differ in length");
  if (xs.empty()) throw InvalidInput("no samples");
  if (grid < 2) throw InvalidInput("independence grid must be at least 2");
  const auto t = lattice(grid);
  const double n = double(xs.size());
  double dev = 0.0;
  for (std::size_t i = 0; i < grid; ++i) {
    for (std::size_t j = 0; j < grid; ++j) {
      std::size_t cx = 0, cy = 0, cxy = 0;
      for (std::size_t k = 0; k < xs.size(); ++k) {
        const bool bx = xs[k] < t[i], by = ys[k] < t[j];
        cx += bx;
        cy += by;
        cxy += bx && by;
      }
      dev = std::max(dev, std::abs(double(cxy) / n -
                                   (double(cx) / n) * (double(cy) / n)));
    }
  }
  return dev;
}

MarginalSamples marginal_samples(const SecondOrderPrior& prior,
                                 const McConfig& cfg) {
  const auto beliefs = sample_prior(prior, cfg);
  MarginalSamples out;
  out.cond_red.reserve(beliefs.size());
  out.blue.reserve(beliefs.size());
  for (const auto& h : beliefs) {
    out.blue.push_back(blue_prob(h));
    if (h.a() + h.b() > 0.0) out.cond_red.push_back(cond_red(h));
  }
  return out;
}

}  // namespace probkin
