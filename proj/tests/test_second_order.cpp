#include <doctest.h>

#include <cmath>

#include "probkin/errors.hpp"
#include "probkin/second_order.hpp"
#include "support/oracles.hpp"

using namespace probkin;

TEST_CASE("HQBelief and its derived probabilities") {
  const HQBelief h(0.3, 0.1, 0.3);
  CHECK(h.d() == doctest::Approx(0.3));
  CHECK(cond_red(h) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(cond_red(HQBelief(0.25, 0.25, 0.25)) == 0.5);
  CHECK_THROWS_AS(cond_red(HQBelief(0.0, 0.0, 0.5)), UndefinedConditional);

  CHECK(blue_prob(HQBelief(0.25, 0.25, 0.25)) == 0.5);
  CHECK(blue_prob(HQBelief(0.5, 0.5, 0.0)) == 0.0);
  CHECK(blue_prob(HQBelief(0.0, 0.0, 0.7)) == 1.0);

  CHECK_THROWS_AS(HQBelief(-0.1, 0.5, 0.5), InvalidInput);
  CHECK_THROWS_AS(HQBelief(0.5, 0.5, 0.1), InvalidInput);
  CHECK_NOTHROW(HQBelief(0.5, 0.5, 1e-13));

  const Event b1(quadrant_space(), {"B1"});
  CHECK(belief_probability(h, b1) == doctest::Approx(0.3));
  CHECK(belief_probability(h, Event::full(quadrant_space())) == doctest::Approx(1.0));
}

TEST_CASE("priors and bands validate their parameters") {
  CHECK_THROWS_AS(SecondOrderPrior::dirichlet({1, 1, 0, 1}), InvalidInput);
  CHECK_THROWS_AS(SecondOrderPrior::dirichlet({1, 1, -2, 1}), InvalidInput);
  CHECK(SecondOrderPrior::dirichlet({1, 1, 1, 1}).is_uniform_measure());
  CHECK_FALSE(SecondOrderPrior::dirichlet({2, 1, 1, 1}).is_uniform_measure());
  CHECK_FALSE(SecondOrderPrior::conditional().is_uniform_measure());

  CHECK_THROWS_AS(MessageBand(0.5, 0.0), InvalidInput);
  CHECK_THROWS_AS(MessageBand(1.2, 0.1), InvalidInput);
  const MessageBand clipped(1.0, 0.01);
  CHECK(clipped.lo() == doctest::Approx(0.99));
  CHECK(clipped.hi() == 1.0);
  CHECK(clipped.midpoint() == doctest::Approx(0.995));
  CHECK_FALSE(clipped.accepts(HQBelief(0.0, 0.0, 0.5)));
  CHECK(clipped.accepts(HQBelief(0.5, 0.0, 0.5)));
}

TEST_CASE("closed-form CDFs and density") {
  CHECK(cdf_cond_red(0.3) == 0.3);
  CHECK(cdf_cond_red(0.0) == 0.0);
  CHECK(cdf_cond_red(1.0) == 1.0);

  CHECK(cdf_blue(0.5) == 0.5);
  CHECK(cdf_blue(0.0) == 0.0);
  CHECK(cdf_blue(1.0) == 1.0);
  CHECK(cdf_blue(0.75) == doctest::Approx(0.84375).epsilon(1e-15));

  CHECK(joint_cdf(1.0, 1.0) == 1.0);
  CHECK(joint_cdf(0.5, 0.5) == 0.25);
  CHECK(joint_cdf(0.3, 0.75) == doctest::Approx(0.253125).epsilon(1e-15));

  CHECK(density_blue(0.5) == 1.5);
  CHECK(density_blue(0.0) == 0.0);
  CHECK(density_blue(1.0) == 0.0);
  CHECK(std::abs(oracle::simpson(density_blue, 0.0, 1.0) - 1.0) < 1e-9);
}

TEST_CASE("property: CDF shape, factorization and derivative") {
  double prev_q = -1.0, prev_b = -1.0;
  for (int i = 0; i <= 100; ++i) {
    const double x = i / 100.0;
    CHECK(cdf_cond_red(x) >= prev_q);
    CHECK(cdf_blue(x) >= prev_b);
    prev_q = cdf_cond_red(x);
    prev_b = cdf_blue(x);
    for (int j = 0; j <= 100; ++j) {
      const double p = j / 100.0;
      CHECK(std::abs(joint_cdf(x, p) - cdf_cond_red(x) * cdf_blue(p)) <= 1e-15);
    }
  }
  const double h = 1e-5;
  for (int i = 1; i < 100; ++i) {
    const double p = i / 100.0;
    const double fd = (cdf_blue(p + h) - cdf_blue(p - h)) / (2 * h);
    CHECK(std::abs(fd - density_blue(p)) < 1e-6);
  }
  // Mean of the Blue density, by quadrature: the unconditional E[Pr_HQ(B)].
  CHECK(std::abs(oracle::simpson([](double p) { return p * density_blue(p); }, 0, 1) - 0.5) <
        1e-12);
}

TEST_CASE("expected Blue given the message is 1/2 for every band") {
  CHECK(expected_blue_given_message(MessageBand(0.75, 0.05)) == 0.5);
  CHECK(expected_blue_given_message(MessageBand(1.0, 0.01)) == 0.5);
  CHECK(expected_blue_given_message(MessageBand(0.5, 0.5)) == 0.5);
  for (int i = 0; i <= 10; ++i) {
    for (double eps : {1e-3, 0.01, 0.1, 0.5}) {
      CHECK(expected_blue_given_message(MessageBand(i / 10.0, eps)) == 0.5);
    }
  }
}

TEST_CASE("exact band posterior over the quadrants") {
  auto post = exact_posterior_quadrants(MessageBand(0.75, 1e-6));
  CHECK(post.at("R1") == doctest::Approx(0.375).epsilon(1e-12));
  CHECK(post.at("R2") == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(post.at("B1") == 0.25);
  CHECK(post.at("B2") == 0.25);

  post = exact_posterior_quadrants(MessageBand(0.5, 0.3));
  for (double v : post.probs()) CHECK(v == doctest::Approx(0.25).epsilon(1e-15));

  post = exact_posterior_quadrants(MessageBand(1.0, 0.01));
  CHECK(post.at("R1") == doctest::Approx(0.4975).epsilon(1e-12));
  CHECK(post.at("R2") == doctest::Approx(0.0025).epsilon(1e-12));

  // Monotone in q for fixed ε, sums to one, Blue cells fixed.
  for (double eps : {1e-3, 0.01, 0.1, 0.5}) {
    double prev = -1.0;
    for (int i = 0; i <= 200; ++i) {
      const auto p = exact_posterior_quadrants(MessageBand(i / 200.0, eps));
      double s = 0.0;
      for (double v : p.probs()) s += v;
      CHECK(std::abs(s - 1.0) <= 1e-12);
      CHECK(p.at("B1") == 0.25);
      CHECK(p.at("B2") == 0.25);
      CHECK(p.at("R1") >= prev);
      if (i > 0) CHECK(p.at("R1") - prev < 0.5 / 200.0 + 1e-12);
      prev = p.at("R1");
    }
  }
}

TEST_CASE("exact band posterior against brute-force integration") {
  const MessageBand band(0.75, 0.05);
  const auto exact = exact_posterior_quadrants(band);

  // Uniform simplex density 1, integrated in (r, x, y) with the Jacobian.
  const auto uni = oracle::band_posterior_by_integration(
      [](double, double, double, double) { return 1.0; }, true, band.lo(), band.hi());
  // Uniform in (r, x, y) directly.
  const auto cond = oracle::band_posterior_by_integration(
      [](double, double, double, double) { return 1.0; }, false, band.lo(), band.hi());
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(std::abs(uni[k] - exact[k]) < 2e-4);
    CHECK(std::abs(cond[k] - exact[k]) < 2e-4);
  }
  CHECK(exact_posterior_for(SecondOrderPrior::conditional(), band).has_value());
  CHECK(exact_posterior_for(SecondOrderPrior::dirichlet({1, 1, 1, 1}), band).has_value());
  CHECK_FALSE(exact_posterior_for(SecondOrderPrior::dirichlet({2, 1, 1, 1}), band).has_value());

  // Dirichlet(2,1,1,1): Blue stays at (α3 + α4)/Σα = 2/5 given the band.
  const auto dir = oracle::band_posterior_by_integration(
      [](double a, double, double, double) { return a; }, true, band.lo(), band.hi());
  CHECK(std::abs(dir[2] + dir[3] - 0.4) < 2e-4);
}
