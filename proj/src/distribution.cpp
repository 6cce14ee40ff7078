#include "probkin/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "probkin/errors.hpp"

namespace probkin {

namespace {

void require_same_space(const Event& e, std::size_t n) {
  if (e.space_size() != n) {
    throw InvalidInput("event is defined over a space of size " +
                       std::to_string(e.space_size()) + ", expected " +
                       std::to_string(n));
  }
}

double masked_sum(std::span<const double> probs, const Event& e) {
  double s = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (e.contains(i)) s += probs[i];
  }
  return s;
}

}  // namespace

OutcomeSpace::OutcomeSpace(std::vector<std::string> labels)
    : labels_(std::move(labels)) {
  if (labels_.empty()) throw InvalidInput("outcome space must be non-empty");
  std::unordered_set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) {
      throw InvalidInput("duplicate outcome label '" + l + "'");
    }
  }
}

std::size_t OutcomeSpace::index_of(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) {
    throw InvalidInput("unknown outcome label '" + std::string(label) + "'");
  }
  return static_cast<std::size_t>(it - labels_.begin());
}

bool OutcomeSpace::contains(std::string_view label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

Event::Event(const OutcomeSpace& space, const std::vector<std::string>& members)
    : mask_(space.size(), false) {
  for (const auto& m : members) mask_[space.index_of(m)] = true;
}

Event::Event(const OutcomeSpace& space,
             std::initializer_list<const char*> members)
    : mask_(space.size(), false) {
  for (const char* m : members) mask_[space.index_of(m)] = true;
}

Event Event::empty(const OutcomeSpace& space) {
  return Event(std::vector<bool>(space.size(), false));
}

Event Event::full(const OutcomeSpace& space) {
  return Event(std::vector<bool>(space.size(), true));
}

Event Event::from_mask(std::vector<bool> mask) { return Event(std::move(mask)); }

std::size_t Event::count() const {
  return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), true));
}

Event Event::complement() const {
  std::vector<bool> m(mask_.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = !mask_[i];
  return Event(std::move(m));
}

Event Event::intersect(const Event& other) const {
  require_same_space(other, mask_.size());
  std::vector<bool> m(mask_.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = mask_[i] && other.mask_[i];
  return Event(std::move(m));
}

Event Event::unite(const Event& other) const {
  require_same_space(other, mask_.size());
  std::vector<bool> m(mask_.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = mask_[i] || other.mask_[i];
  return Event(std::move(m));
}

bool Event::subset_of(const Event& other) const {
  require_same_space(other, mask_.size());
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    if (mask_[i] && !other.mask_[i]) return false;
  }
  return true;
}

std::vector<std::string> Event::labels(const OutcomeSpace& space) const {
  require_same_space(*this, space.size());
  std::vector<std::string> out;
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    if (mask_[i]) out.push_back(space.label(i));
  }
  return out;
}

Partition::Partition(const OutcomeSpace& space, std::vector<Event> cells)
    : cells_(std::move(cells)) {
  if (cells_.empty()) throw BadPartition("partition has no cells");
  std::vector<int> hits(space.size(), 0);
  for (const auto& c : cells_) {
    if (c.space_size() != space.size()) {
      throw BadPartition("partition cell defined over a different space");
    }
    for (std::size_t i = 0; i < space.size(); ++i) hits[i] += c.contains(i);
  }
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (hits[i] == 0) {
      throw BadPartition("outcome '" + space.label(i) + "' is in no cell");
    }
    if (hits[i] > 1) {
      throw BadPartition("outcome '" + space.label(i) +
                         "' is in more than one cell");
    }
  }
}

FiniteDistribution::FiniteDistribution(OutcomeSpace space,
                                       std::vector<double> probs)
    : space_(std::move(space)), probs_(std::move(probs)) {
  if (probs_.size() != space_.size()) {
    throw InvalidInput("got " + std::to_string(probs_.size()) +
                       " probabilities for " + std::to_string(space_.size()) +
                       " outcomes");
  }
  double total = 0.0;
  for (double w : probs_) {
    if (!std::isfinite(w) || w < 0.0) {
      throw InvalidInput("probabilities must be finite and nonnegative");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > kProbTolerance) {
    throw InvalidInput("probabilities sum to " + std::to_string(total) +
                       ", not 1");
  }
}

FiniteDistribution FiniteDistribution::normalized(OutcomeSpace space,
                                                  std::vector<double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw InvalidInput("weights must be finite and nonnegative");
    }
    total += w;
  }
  if (!(total > 0.0)) throw InvalidInput("weights have zero total");
  for (double& w : weights) w /= total;
  return FiniteDistribution(std::move(space), std::move(weights));
}

FiniteDistribution FiniteDistribution::uniform(OutcomeSpace space) {
  const std::size_t n = space.size();
  return FiniteDistribution(std::move(space),
                            std::vector<double>(n, 1.0 / double(n)));
}

double event_probability(const FiniteDistribution& p, const Event& t) {
  require_same_space(t, p.size());
  return masked_sum(p.probs(), t);
}

double conditional_probability(const FiniteDistribution& p, const Event& a,
                               const Event& b) {
  const double pb = event_probability(p, b);
  if (!(pb > 0.0)) {
    throw ZeroConditioningEvent("conditioning event has probability 0");
  }
  return event_probability(p, a.intersect(b)) / pb;
}

FiniteDistribution condition(const FiniteDistribution& p, const Event& t) {
  const double pt = event_probability(p, t);
  if (!(pt > 0.0)) {
    throw ZeroConditioningEvent("conditioning event has probability 0");
  }
  std::vector<double> out(p.size(), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (t.contains(i)) out[i] = p[i];
  }
  return FiniteDistribution::normalized(p.space(), std::move(out));
}

FiniteDistribution jeffrey_update(const FiniteDistribution& p,
                                  const Partition& part,
                                  std::span<const double> weights) {
  if (weights.size() != part.size()) {
    throw InvalidInput("expected " + std::to_string(part.size()) +
                       " cell weights, got " + std::to_string(weights.size()));
  }
  if (part.cell(0).space_size() != p.size()) {
    throw BadPartition("partition is over a different space");
  }
  double wsum = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw InvalidInput("cell weights must be finite and nonnegative");
    }
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > kProbTolerance) {
    throw InvalidInput("cell weights sum to " + std::to_string(wsum) +
                       ", not 1");
  }

  std::vector<double> out(p.size(), 0.0);
  for (std::size_t k = 0; k < part.size(); ++k) {
    const Event& cell = part.cell(k);
    const double mass = masked_sum(p.probs(), cell);
    if (weights[k] == 0.0) continue;
    if (!(mass > 0.0)) {
      throw InfeasibleWeight("positive weight on cell " + std::to_string(k) +
                             " which has prior probability 0");
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (cell.contains(i)) out[i] = weights[k] * p[i] / mass;
    }
  }
  return FiniteDistribution::normalized(p.space(), std::move(out));
}

double kl_divergence(const FiniteDistribution& q, const FiniteDistribution& p) {
  if (!(q.space() == p.space())) {
    throw InvalidInput("KL divergence between different outcome spaces");
  }
  double kl = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] == 0.0) continue;
    if (p[i] == 0.0) {
      throw NotAbsolutelyContinuous("q puts mass on '" + q.space().label(i) +
                                    "' where p has none");
    }
    kl += q[i] * std::log(q[i] / p[i]);
  }
  // Rounding can leave a tiny negative total for q ≈ p.
  return std::max(kl, 0.0);
}

double max_abs_difference(const FiniteDistribution& x,
                          const FiniteDistribution& y) {
  if (!(x.space() == y.space())) {
    throw InvalidInput("comparing distributions over different spaces");
  }
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    d = std::max(d, std::abs(x[i] - y[i]));
  }
  return d;
}

}  // namespace probkin
