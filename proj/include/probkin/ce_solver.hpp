#pragma once

#include <cstddef>
#include <vector>

#include "probkin/distribution.hpp"

namespace probkin {

// Σ coeffs[x]·q(x) = rhs over the outcomes of a fixed space.
struct LinearConstraint {
  std::vector<double> coeffs;
  double rhs = 0.0;

  // Throws InvalidInput when every coefficient is zero.
  LinearConstraint(std::vector<double> coeffs, double rhs);

  // Skips the all-zero check; used for compiled conditional constraints that
  // are vacuous.
  static LinearConstraint unchecked(std::vector<double> coeffs, double rhs);

 private:
  LinearConstraint() = default;
};

// q(A | B) = target. A is stored as A ∩ B.
class ConditionalConstraint {
 public:
  ConditionalConstraint(Event a, Event b, double target);

  const Event& a() const { return a_; }
  const Event& b() const { return b_; }
  double target() const { return target_; }

 private:
  Event a_;
  Event b_;
  double target_;
};

// Rewrites q(A|B) = t as q(A) − t·q(B) = 0, i.e. coefficients
// 1{x∈A} − t·1{x∈B} with right-hand side 0.
LinearConstraint compile_conditional(const ConditionalConstraint& c);

class ConstraintSet {
 public:
  ConstraintSet() = default;

  void add(LinearConstraint c) { linear_.push_back(std::move(c)); }
  void add(ConditionalConstraint c) { conditional_.push_back(std::move(c)); }

  const std::vector<LinearConstraint>& linear() const { return linear_; }
  const std::vector<ConditionalConstraint>& conditional() const {
    return conditional_;
  }
  std::size_t size() const { return linear_.size() + conditional_.size(); }

  // Conditional constraints first, then the linear ones, in insertion order.
  // This is also the order of CeSolution::multipliers.
  std::vector<LinearConstraint> compiled() const;

 private:
  std::vector<LinearConstraint> linear_;
  std::vector<ConditionalConstraint> conditional_;
};

struct CeOptions {
  double tol = 1e-10;
  std::size_t max_iter = 200;
};

struct CeSolution {
  FiniteDistribution posterior;
  // One per compiled constraint. Constraints that are implied by the support
  // reduction (boundary targets, q(T) = 1) carry multiplier 0.
  std::vector<double> multipliers;
  double kl_value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  double residual = 0.0;
};

// Minimum cross-entropy update: the distribution q satisfying every constraint
// that minimizes KL(q || prior). The posterior has the form
// prior(x)·exp(Σ_k λ_k·coeffs_k(x)) / Z on the reduced support.
//
// Outcomes that no feasible distribution can charge (prior zeros, and cells
// excluded by boundary constraints such as a target of 0 or 1) are fixed at 0
// up front by a linear-programming pass; the dual is then solved on what
// remains, by safeguarded Newton/bisection for one active constraint and by
// damped Newton with backtracking otherwise.
//
// Throws Infeasible when no distribution on the prior's support meets the
// constraints, NotConverged when max_iter is exhausted.
CeSolution ce_update(const FiniteDistribution& prior,
                     const ConstraintSet& constraints,
                     const CeOptions& options = {});

// Blue-territory probability of the cross-entropy posterior for the
// Judy Benjamin prior (1/4, 1/4, 1/4, 1/4) under q(R1 | R) = target:
// 2k / (2k + 1) with k = exp(−H_b(target)).
double jb_ce_blue(double target);

// Natural-log binary entropy with H_b(0) = H_b(1) = 0.
double binary_entropy(double c);

}  // namespace probkin
