#include <doctest.h>

#include <omp.h>

#include <cmath>
#include <cstring>

#include "probkin/errors.hpp"
#include "probkin/monte_carlo.hpp"
#include "support/oracles.hpp"

using namespace probkin;

namespace {

bool same_bits(double x, double y) { return std::memcmp(&x, &y, sizeof x) == 0; }

bool identical(const McPosterior& x, const McPosterior& y) {
  if (x.n_total != y.n_total || x.n_accepted != y.n_accepted) return false;
  for (std::size_t k = 0; k < 4; ++k) {
    if (!same_bits(x.quadrants[k].mean, y.quadrants[k].mean) ||
        !same_bits(x.quadrants[k].std_error, y.quadrants[k].std_error)) {
      return false;
    }
  }
  return same_bits(x.blue.mean, y.blue.mean) && same_bits(x.blue.std_error, y.blue.std_error);
}

struct ThreadCount {
  explicit ThreadCount(int n) : saved(omp_get_max_threads()) { omp_set_num_threads(n); }
  ~ThreadCount() { omp_set_num_threads(saved); }
  int saved;
};

}  // namespace

TEST_CASE("McConfig chunking covers every sample once") {
  McConfig cfg{1003, 1, 10};
  std::size_t total = 0;
  for (std::size_t c = 0; c < cfg.chunks; ++c) {
    CHECK(cfg.chunk_offset(c) == total);
    total += cfg.chunk_size(c);
  }
  CHECK(total == 1003);
  CHECK_THROWS_AS((McConfig{0, 1, 1}.validate()), InvalidInput);
  CHECK_THROWS_AS((McConfig{10, 1, 0}.validate()), InvalidInput);
  CHECK(chunk_seed(42, 0) != chunk_seed(42, 1));
  CHECK(chunk_seed(42, 0) != chunk_seed(43, 0));
}

TEST_CASE("samplers stay on the simplex and are reproducible") {
  for (const auto& prior : {SecondOrderPrior::uniform(), SecondOrderPrior::conditional(),
                            SecondOrderPrior::dirichlet({0.3, 2.0, 1.0, 5.0})}) {
    const McConfig cfg{20'000, 5, 7};
    const auto s1 = sample_prior(prior, cfg);
    const auto s2 = sample_prior(prior, cfg);
    REQUIRE(s1.size() == 20'000);
    for (std::size_t i = 0; i < s1.size(); ++i) {
      const auto q = s1[i].quadrants();
      for (double v : q) CHECK(v >= 0.0);
      CHECK(std::abs(q[0] + q[1] + q[2] + q[3] - 1.0) < 1e-12);
      CHECK(same_bits(s1[i].a(), s2[i].a()));
      CHECK(same_bits(s1[i].c(), s2[i].c()));
    }
    // A different seed moves the stream.
    const auto s3 = sample_prior(prior, McConfig{20'000, 6, 7});
    CHECK_FALSE(same_bits(s1[0].a(), s3[0].a()));
  }
}

TEST_CASE("uniform sampler: coordinate means and Pr(R1 | R), Pr(Blue) marginals") {
  const McConfig cfg{1'000'000, 42, 64};
  const auto s = sample_prior(SecondOrderPrior::uniform(), cfg);
  const Event r1(quadrant_space(), {"R1"});
  const auto est = trust_estimate(s, r1);
  CHECK(std::abs(est.mean - 0.25) < 4 * est.std_error);

  const auto m = marginal_samples(SecondOrderPrior::uniform(), cfg);
  CHECK(ks_statistic(m.cond_red, cdf_cond_red) < 0.002);
  CHECK(ks_statistic(m.blue, cdf_blue) < 0.002);
}

TEST_CASE("Dirichlet(1,1,1,1) and conditional samplers against closed-form marginals") {
  const McConfig cfg{1'000'000, 7, 64};
  const auto dir = marginal_samples(SecondOrderPrior::dirichlet({1, 1, 1, 1}), cfg);
  CHECK(ks_statistic(dir.blue, cdf_blue) < 0.002);
  CHECK(ks_statistic(dir.cond_red, cdf_cond_red) < 0.002);

  const auto cond = marginal_samples(SecondOrderPrior::conditional(), cfg);
  CHECK(ks_statistic(cond.cond_red, cdf_cond_red) < 0.002);
  // Under this prior Blue = 1 − r is uniform, not (3 − 2p)p².
  CHECK(ks_statistic(cond.blue, [](double p) { return std::clamp(p, 0.0, 1.0); }) < 0.002);
  CHECK(ks_statistic(cond.blue, cdf_blue) > 0.05);
}

TEST_CASE("ks_statistic") {
  const std::vector<double> half{0.5};
  CHECK(ks_statistic(half, cdf_cond_red) == 0.5);
  const std::vector<double> constant(100, 0.3);
  CHECK(ks_statistic(constant, cdf_cond_red) >= 0.5);
  CHECK_THROWS_AS(ks_statistic(std::vector<double>{}, cdf_cond_red), InvalidInput);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> xs(100'000);
  for (auto& x : xs) x = u(rng);
  CHECK(ks_statistic(xs, cdf_cond_red) < ks_critical_value(xs.size()));
  CHECK(ks_critical_value(100'000) == doctest::Approx(1.95 / std::sqrt(1e5)));
}

TEST_CASE("parallel kernel: deterministic across thread counts, matches serial reference") {
  const MessageBand band(0.75, 0.05);
  for (const auto& prior : {SecondOrderPrior::uniform(), SecondOrderPrior::conditional(),
                            SecondOrderPrior::dirichlet({2, 1, 1, 1})}) {
    const McConfig cfg{200'000, 123, 16};
    McPosterior one, many;
    {
      ThreadCount t(1);
      one = mc_posterior_quadrants(prior, band, cfg);
    }
    {
      ThreadCount t(4);
      many = mc_posterior_quadrants(prior, band, cfg);
    }
    CHECK(identical(one, many));

    const auto ref = mc_posterior_quadrants_serial(prior, band, cfg);
    CHECK(ref.n_accepted == one.n_accepted);
    CHECK(ref.n_total == one.n_total);
    for (std::size_t k = 0; k < 4; ++k) {
      CHECK(std::abs(ref.quadrants[k].mean - one.quadrants[k].mean) < 1e-13);
      CHECK(std::abs(ref.quadrants[k].std_error - one.quadrants[k].std_error) < 1e-13);
    }
    CHECK(std::abs(ref.blue.mean - one.blue.mean) < 1e-13);
  }
}

TEST_CASE("mc_posterior_quadrants against exact targets") {
  const McConfig cfg{1'000'000, 42, 64};
  const MessageBand band(0.75, 0.05);
  const auto post = mc_posterior_quadrants(SecondOrderPrior::uniform(), band, cfg);
  CHECK(post.n_total == 1'000'000);
  CHECK(post.n_accepted <= post.n_total);
  CHECK(std::abs(post.blue.mean - 0.5) < 4 * post.blue.std_error);
  CHECK(std::abs(post[Quadrant::R1].mean - 0.375) < 4 * post[Quadrant::R1].std_error);

  const auto dir = mc_posterior_quadrants(SecondOrderPrior::dirichlet({2, 1, 1, 1}), band, cfg);
  CHECK(std::abs(dir.blue.mean - 0.4) < 4 * dir.blue.std_error);

  CHECK_THROWS_AS(
      mc_posterior_quadrants(SecondOrderPrior::uniform(), MessageBand(0.75, 1e-9),
                             McConfig{1000, 42, 4}),
      NoAcceptedSamples);
}

TEST_CASE("trust_expectation") {
  const std::vector<HQBelief> one{HQBelief(0.3, 0.1, 0.3)};
  const std::vector<double> w{2.0};
  CHECK(trust_expectation(one, w, Event(quadrant_space(), {"R1"})) == doctest::Approx(0.3));

  const auto s = sample_prior(SecondOrderPrior::uniform(), McConfig{100'000, 3, 8});
  const std::vector<double> ones(s.size(), 1.0);
  CHECK(trust_expectation(s, ones, Event::full(quadrant_space())) ==
        doctest::Approx(1.0).epsilon(1e-12));
  const auto b1 = trust_estimate(s, Event(quadrant_space(), {"B1"}));
  CHECK(std::abs(b1.mean - 0.25) < 4 * b1.std_error);

  CHECK_THROWS_AS(trust_expectation(one, std::vector<double>{0.0}, Event::full(quadrant_space())),
                  InvalidInput);
  CHECK_THROWS_AS(trust_expectation(one, std::vector<double>{1.0, 1.0}, Event::full(quadrant_space())),
                  InvalidInput);
}

TEST_CASE("independence_check") {
  const McConfig a{1'000'000, 42, 64}, b{1'000'000, 4242, 64};
  CHECK(independence_check(SecondOrderPrior::uniform(), a, 20) < 0.005);
  CHECK(independence_check(SecondOrderPrior::uniform(), b, 20) < 0.005);
  CHECK(independence_check(SecondOrderPrior::conditional(), a, 20) < 0.005);
  CHECK_THROWS_AS(independence_check(SecondOrderPrior::uniform(), a, 1), InvalidInput);

  SUBCASE("binned kernel equals direct counting") {
    const McConfig cfg{20'000, 9, 5};
    const auto s = sample_prior(SecondOrderPrior::uniform(), cfg);
    std::vector<double> xs, ys;
    for (const auto& h : s) {
      xs.push_back(cond_red(h));
      ys.push_back(blue_prob(h));
    }
    CHECK(independence_check(SecondOrderPrior::uniform(), cfg, 7) ==
          doctest::Approx(independence_deviation_direct(xs, ys, 7)).epsilon(1e-12));
  }

  SUBCASE("constant marginal does not divide by zero") {
    // Every belief has a = b, so cond_red is identically 1/2.
    std::vector<double> xs(1000, 0.5), ys;
    for (int i = 0; i < 1000; ++i) ys.push_back(i / 1000.0);
    const double dev = independence_deviation_direct(xs, ys, 10);
    CHECK(std::isfinite(dev));
    CHECK(dev < 1e-12);
  }

  SUBCASE("dependent pairs are detected") {
    std::vector<double> xs, ys;
    for (int i = 0; i < 1000; ++i) {
      xs.push_back(i / 1000.0);
      ys.push_back(i / 1000.0);
    }
    CHECK(independence_deviation_direct(xs, ys, 10) > 0.2);
  }
}

TEST_CASE("choice of free coordinates does not change the uniform prior") {
  // Cube-rejection samplers that parameterize the simplex by (a,b,c) and by
  // (a,b,d) must give the same band posterior as each other.
  const MessageBand band(0.75, 0.05);
  auto estimate = [&](std::size_t omitted, std::uint64_t seed) {
    oracle::CubeRejectionSampler s(omitted, seed);
    std::vector<HQBelief> acc;
    for (int i = 0; i < 1'000'000; ++i) {
      const auto v = s.next();
      const auto h = HQBelief::trusted(v[0], v[1], v[2], v[3]);
      if (band.accepts(h)) acc.push_back(h);
    }
    return trust_estimate(acc, Event(quadrant_space(), {"B1", "B2"}));
  };
  const auto abc = estimate(3, 1);
  const auto abd = estimate(2, 2);
  const double combined = std::sqrt(abc.std_error * abc.std_error + abd.std_error * abd.std_error);
  CHECK(std::abs(abc.mean - abd.mean) < 4 * combined);
  CHECK(std::abs(abc.mean - 0.5) < 4 * abc.std_error);
}
