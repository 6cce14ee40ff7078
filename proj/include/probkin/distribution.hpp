#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace probkin {

// Weights must sum to one within this tolerance to form a valid distribution.
inline constexpr double kProbTolerance = 1e-12;

// Ordered list of distinct outcome names. Order is significant: every
// distribution over the space stores its weights in this order.
class OutcomeSpace {
 public:
  explicit OutcomeSpace(std::vector<std::string> labels);
  OutcomeSpace(std::initializer_list<std::string> labels)
      : OutcomeSpace(std::vector<std::string>(labels)) {}

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }

  // Throws InvalidInput for an unknown label.
  std::size_t index_of(std::string_view label) const;
  bool contains(std::string_view label) const;

  friend bool operator==(const OutcomeSpace&, const OutcomeSpace&) = default;

 private:
  std::vector<std::string> labels_;
};

// A subset of an outcome space, stored as a membership mask aligned with it.
class Event {
 public:
  // Members given by label; unknown labels throw InvalidInput.
  Event(const OutcomeSpace& space, const std::vector<std::string>& members);
  Event(const OutcomeSpace& space, std::initializer_list<const char*> members);

  static Event empty(const OutcomeSpace& space);
  static Event full(const OutcomeSpace& space);
  static Event from_mask(std::vector<bool> mask);

  std::size_t space_size() const { return mask_.size(); }
  bool contains(std::size_t i) const { return mask_[i]; }
  std::size_t count() const;
  bool is_empty() const { return count() == 0; }
  const std::vector<bool>& mask() const { return mask_; }

  Event complement() const;
  Event intersect(const Event& other) const;
  Event unite(const Event& other) const;
  bool subset_of(const Event& other) const;

  std::vector<std::string> labels(const OutcomeSpace& space) const;

  friend bool operator==(const Event&, const Event&) = default;

 private:
  explicit Event(std::vector<bool> mask) : mask_(std::move(mask)) {}
  std::vector<bool> mask_;
};

// Cells must be pairwise disjoint and cover the space; construction throws
// BadPartition otherwise.
class Partition {
 public:
  Partition(const OutcomeSpace& space, std::vector<Event> cells);

  std::size_t size() const { return cells_.size(); }
  const std::vector<Event>& cells() const { return cells_; }
  const Event& cell(std::size_t i) const { return cells_[i]; }

 private:
  std::vector<Event> cells_;
};

// Probability weights over an OutcomeSpace. Immutable once built; the
// constructor rejects negative weights and totals off one by more than
// kProbTolerance.
class FiniteDistribution {
 public:
  FiniteDistribution(OutcomeSpace space, std::vector<double> probs);

  // Divides by the total. Throws InvalidInput for negative or all-zero weights.
  static FiniteDistribution normalized(OutcomeSpace space,
                                       std::vector<double> weights);
  static FiniteDistribution uniform(OutcomeSpace space);

  const OutcomeSpace& space() const { return space_; }
  std::size_t size() const { return probs_.size(); }
  std::span<const double> probs() const { return probs_; }
  double operator[](std::size_t i) const { return probs_[i]; }
  double at(std::string_view label) const {
    return probs_[space_.index_of(label)];
  }

 private:
  OutcomeSpace space_;
  std::vector<double> probs_;
};

double event_probability(const FiniteDistribution& p, const Event& t);

// p(A ∩ B) / p(B). Throws ZeroConditioningEvent when p(B) = 0.
double conditional_probability(const FiniteDistribution& p, const Event& a,
                               const Event& b);

// Bayesian conditioning on an event known to be true.
// Throws ZeroConditioningEvent when p(T) = 0.
FiniteDistribution condition(const FiniteDistribution& p, const Event& t);

// Jeffrey's rule: cell i receives total mass weights[i]; proportions within a
// cell are preserved. Cells with weight 0 end at 0 even when p(cell) = 0.
// Throws InvalidInput for a weight vector that is not a distribution aligned
// with the cells, InfeasibleWeight when a positive weight lands on a cell of
// prior mass 0.
FiniteDistribution jeffrey_update(const FiniteDistribution& p,
                                  const Partition& part,
                                  std::span<const double> weights);

// KL(q || p) = Σ q ln(q/p), natural log, 0 ln 0 = 0.
// Throws NotAbsolutelyContinuous when q puts mass where p has none; no
// infinite sentinel is ever returned.
double kl_divergence(const FiniteDistribution& q, const FiniteDistribution& p);

// Largest per-outcome absolute difference; spaces must match.
double max_abs_difference(const FiniteDistribution& x,
                          const FiniteDistribution& y);

}  // namespace probkin
