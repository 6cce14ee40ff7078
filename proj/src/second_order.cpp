#include "probkin/second_order.hpp"

#include <algorithm>
#include <cmath>

#include "probkin/errors.hpp"

namespace probkin {

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

const OutcomeSpace& quadrant_space() {
  static const OutcomeSpace space{"R1", "R2", "B1", "B2"};
  return space;
}

HQBelief::HQBelief(double a, double b, double c) : a_(a), b_(b), c_(c) {
  if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(c))) {
    throw InvalidInput("belief coordinates must be finite");
  }
  if (a < 0.0 || b < 0.0 || c < 0.0) {
    throw InvalidInput("belief coordinates must be nonnegative");
  }
  const double s = a + b + c;
  if (s > 1.0 + kProbTolerance) {
    throw InvalidInput("belief coordinates sum past 1");
  }
  d_ = std::max(0.0, 1.0 - s);
}

double cond_red(const HQBelief& h) {
  const double red = h.a() + h.b();
  if (!(red > 0.0)) {
    throw UndefinedConditional("Pr(R1 | R) undefined: belief puts no mass on R");
  }
  return h.a() / red;
}

double blue_prob(const HQBelief& h) { return 1.0 - h.a() - h.b(); }

double belief_probability(const HQBelief& h, const Event& e) {
  if (e.space_size() != 4) {
    throw InvalidInput("event is not over the quadrant space");
  }
  const auto q = h.quadrants();
  double s = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    if (e.contains(i)) s += q[i];
  }
  return s;
}

SecondOrderPrior SecondOrderPrior::dirichlet(std::array<double, 4> alpha) {
  for (double a : alpha) {
    if (!std::isfinite(a) || !(a > 0.0)) {
      throw InvalidInput("Dirichlet parameters must be strictly positive");
    }
  }
  return SecondOrderPrior(DirichletPrior{alpha});
}

std::string SecondOrderPrior::name() const {
  struct Namer {
    std::string operator()(const UniformSimplex&) const { return "uniform"; }
    std::string operator()(const DirichletPrior&) const { return "dirichlet"; }
    std::string operator()(const ConditionalParamUniform&) const {
      return "conditional";
    }
  };
  return std::visit(Namer{}, v_);
}

bool SecondOrderPrior::is_uniform_measure() const {
  if (std::holds_alternative<UniformSimplex>(v_)) return true;
  if (const auto* d = std::get_if<DirichletPrior>(&v_)) {
    return std::all_of(d->alpha.begin(), d->alpha.end(),
                       [](double a) { return a == 1.0; });
  }
  return false;
}

MessageBand::MessageBand(double q, double epsilon) : q_(q), eps_(epsilon) {
  if (!(q >= 0.0 && q <= 1.0)) throw InvalidInput("q must lie in [0, 1]");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidInput("band half-width epsilon must be positive");
  }
  lo_ = std::max(0.0, q - epsilon);
  hi_ = std::min(1.0, q + epsilon);
}

bool MessageBand::accepts(const HQBelief& h) const {
  const double red = h.a() + h.b();
  if (!(red > 0.0)) return false;
  return contains(h.a() / red);
}

double cdf_cond_red(double q) { return clamp01(q); }

double cdf_blue(double p) {
  p = clamp01(p);
  return (3.0 - 2.0 * p) * p * p;
}

double joint_cdf(double q, double p) { return cdf_cond_red(q) * cdf_blue(p); }

double density_blue(double p) {
  if (p < 0.0 || p > 1.0) return 0.0;
  return 6.0 * p * (1.0 - p);
}

double expected_blue_given_message(const MessageBand&) { return 0.5; }

FiniteDistribution exact_posterior_quadrants(const MessageBand& band) {
  const double m = band.midpoint();
  return FiniteDistribution(quadrant_space(),
                            {0.5 * m, 0.5 * (1.0 - m), 0.25, 0.25});
}

std::optional<FiniteDistribution> exact_posterior_for(
    const SecondOrderPrior& prior, const MessageBand& band) {
  if (prior.is_uniform_measure() ||
      std::holds_alternative<ConditionalParamUniform>(prior.variant())) {
    return exact_posterior_quadrants(band);
  }
  return std::nullopt;
}

std::optional<MarginalCdfs> marginal_cdfs(const SecondOrderPrior& prior) {
  if (prior.is_uniform_measure()) {
    return MarginalCdfs{cdf_cond_red, cdf_blue};
  }
  if (std::holds_alternative<ConditionalParamUniform>(prior.variant())) {
    // Blue = 1 − r with r uniform.
    return MarginalCdfs{cdf_cond_red, [](double p) { return clamp01(p); }};
  }
  return std::nullopt;
}

}  // namespace probkin
