#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <variant>

#include "probkin/distribution.hpp"

namespace probkin {

// Quadrant order used everywhere in this module: R1, R2, B1, B2.
enum class Quadrant : std::size_t { R1 = 0, R2 = 1, B1 = 2, B2 = 3 };
inline constexpr std::array<const char*, 4> kQuadrantLabels = {"R1", "R2",
                                                               "B1", "B2"};

// {R1, R2, B1, B2}.
const OutcomeSpace& quadrant_space();

// One possible belief of the sender over the four quadrants: a point of the
// 3-simplex with a = Pr(R1), b = Pr(R2), c = Pr(B1) and d = 1 − a − b − c.
class HQBelief {
 public:
  // Throws InvalidInput unless a, b, c ≥ 0 and a + b + c ≤ 1 (within 1e-12).
  HQBelief(double a, double b, double c);

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  double d() const { return d_; }
  std::array<double, 4> quadrants() const { return {a_, b_, c_, d_}; }
  double operator[](Quadrant q) const { return quadrants()[std::size_t(q)]; }

  // Builds without validation; for samplers whose output is on the simplex by
  // construction.
  static HQBelief trusted(double a, double b, double c, double d) {
    return HQBelief(a, b, c, d, 0);
  }

 private:
  HQBelief(double a, double b, double c, double d, int)
      : a_(a), b_(b), c_(c), d_(d) {}
  double a_, b_, c_, d_;
};

// Pr_HQ(R1 | R) = a / (a + b). Throws UndefinedConditional when a + b = 0.
double cond_red(const HQBelief& h);
// Pr_HQ(B) = 1 − a − b.
double blue_prob(const HQBelief& h);
// Pr_HQ(E) for an event over quadrant_space().
double belief_probability(const HQBelief& h, const Event& e);

struct UniformSimplex {};
struct DirichletPrior {
  std::array<double, 4> alpha;
};
// r = Pr(R), x = Pr(R1 | R), y = Pr(B1 | B) independently uniform.
struct ConditionalParamUniform {};

class SecondOrderPrior {
 public:
  using Variant =
      std::variant<UniformSimplex, DirichletPrior, ConditionalParamUniform>;

  SecondOrderPrior() : v_(UniformSimplex{}) {}
  static SecondOrderPrior uniform() { return SecondOrderPrior(UniformSimplex{}); }
  static SecondOrderPrior conditional() {
    return SecondOrderPrior(ConditionalParamUniform{});
  }
  // Throws InvalidInput unless every alpha is finite and strictly positive.
  static SecondOrderPrior dirichlet(std::array<double, 4> alpha);

  const Variant& variant() const { return v_; }
  std::string name() const;

  // True when the prior is the Lebesgue measure on the simplex, either
  // directly or as Dirichlet(1, 1, 1, 1).
  bool is_uniform_measure() const;

 private:
  explicit SecondOrderPrior(Variant v) : v_(v) {}
  Variant v_;
};

// The report "Pr(R1 | R) = q", read as Pr_HQ(R1 | R) ∈ [q − ε, q + ε] clipped
// to [0, 1].
class MessageBand {
 public:
  // Throws InvalidInput unless q ∈ [0, 1] and ε > 0.
  MessageBand(double q, double epsilon);

  double q() const { return q_; }
  double epsilon() const { return eps_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double midpoint() const { return 0.5 * (lo_ + hi_); }
  bool contains(double x) const { return x >= lo_ && x <= hi_; }
  // The sample's conditional red probability lies in the band; beliefs with
  // a + b = 0 are never accepted.
  bool accepts(const HQBelief& h) const;

 private:
  double q_, eps_, lo_, hi_;
};

inline constexpr double kDefaultEpsilon = 0.01;

// Closed forms under the uniform simplex prior. Arguments outside [0, 1] are
// clamped so these work as reference CDFs for goodness-of-fit checks.

// Pr(Pr_HQ(R1 | R) < q) = q.
double cdf_cond_red(double q);
// Pr(Pr_HQ(B) < p) = (3 − 2p)p².
double cdf_blue(double p);
// Pr(Pr_HQ(R1 | R) < q and Pr_HQ(B) < p) = q(3 − 2p)p².
double joint_cdf(double q, double p);
// 6p(1 − p).
double density_blue(double p);

// E[Pr_HQ(B) | band] under the uniform prior. The band event is independent of
// Pr_HQ(B), so this is the unconditional mean 1/2 whatever q and ε are.
double expected_blue_given_message(const MessageBand& band);

// Expected quadrant probabilities given the band, under the uniform prior:
// (m/2, (1 − m)/2, 1/4, 1/4) with m the midpoint of the clipped band.
FiniteDistribution exact_posterior_quadrants(const MessageBand& band);

// Exact band posterior for priors where it is known in closed form: the
// uniform measure and ConditionalParamUniform (both make Pr_HQ(R1 | R)
// uniform and independent of the rest). nullopt for other Dirichlet priors.
std::optional<FiniteDistribution> exact_posterior_for(
    const SecondOrderPrior& prior, const MessageBand& band);

// Marginal CDFs of cond_red and blue_prob under a prior, when known.
struct MarginalCdfs {
  std::function<double(double)> cond_red;
  std::function<double(double)> blue;
};
std::optional<MarginalCdfs> marginal_cdfs(const SecondOrderPrior& prior);

}  // namespace probkin
