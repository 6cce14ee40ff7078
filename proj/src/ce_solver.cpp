#include "probkin/ce_solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "probkin/errors.hpp"
#include "simplex_lp.hpp"

namespace probkin {

namespace {

// Cells whose best feasible mass is below this are treated as forced to 0.
constexpr double kForcedZero = 1e-12;
// Constraint rows smaller than this on the whole support are dropped.
constexpr double kDeadRow = 1e-14;

struct Reduced {
  std::vector<std::size_t> support;   // indices into the outcome space
  std::vector<double> log_prior;      // aligned with support
  std::vector<std::size_t> active;    // indices into the compiled constraints
  Eigen::MatrixXd g;                  // active x support, coeffs − rhs
};

std::vector<double> shifted_row(const LinearConstraint& c,
                                const std::vector<std::size_t>& support) {
  std::vector<double> row(support.size());
  for (std::size_t j = 0; j < support.size(); ++j) {
    row[j] = c.coeffs[support[j]] - c.rhs;
  }
  return row;
}

// Removes outcomes that every feasible distribution must leave at zero, then
// drops constraints that vanish identically on what is left.
Reduced reduce(const FiniteDistribution& prior,
               const std::vector<LinearConstraint>& cons) {
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < prior.size(); ++i) {
    if (prior[i] > 0.0) support.push_back(i);
  }

  auto lp_rows = [&](const std::vector<std::size_t>& sup) {
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    for (const auto& c : cons) {
      a.push_back(shifted_row(c, sup));
      b.push_back(0.0);
    }
    a.emplace_back(sup.size(), 1.0);
    b.push_back(1.0);
    return std::pair{a, b};
  };

  if (!cons.empty()) {
    auto [a, b] = lp_rows(support);
    const std::vector<double> zero(support.size(), 0.0);
    if (!detail::lp_maximize(a, b, zero)) {
      throw Infeasible(
          "no distribution on the prior's support satisfies the constraints");
    }
    std::vector<std::size_t> kept;
    for (std::size_t j = 0; j < support.size(); ++j) {
      std::vector<double> e(support.size(), 0.0);
      e[j] = 1.0;
      const auto best = detail::lp_maximize(a, b, e);
      if (best && *best > kForcedZero) kept.push_back(support[j]);
    }
    if (kept.empty()) {
      throw Infeasible("constraints force every outcome to probability 0");
    }
    support = std::move(kept);
  }

  Reduced r;
  r.support = support;
  for (std::size_t idx : support) r.log_prior.push_back(std::log(prior[idx]));
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < cons.size(); ++k) {
    auto row = shifted_row(cons[k], support);
    const double scale = std::max(
        1.0, std::abs(cons[k].rhs) +
                 *std::max_element(
                     cons[k].coeffs.begin(), cons[k].coeffs.end(),
                     [](double x, double y) { return std::abs(x) < std::abs(y); }));
    const bool dead = std::all_of(row.begin(), row.end(), [&](double v) {
      return std::abs(v) <= kDeadRow * scale;
    });
    if (!dead) {
      r.active.push_back(k);
      rows.push_back(std::move(row));
    }
  }
  r.g.resize(static_cast<Eigen::Index>(rows.size()),
             static_cast<Eigen::Index>(support.size()));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    for (std::size_t j = 0; j < support.size(); ++j) {
      r.g(Eigen::Index(k), Eigen::Index(j)) = rows[k][j];
    }
  }
  return r;
}

// Posterior weights on the reduced support and the dual objective log Z.
struct DualPoint {
  Eigen::VectorXd q;
  double log_z = 0.0;
};

DualPoint evaluate(const Reduced& r, const Eigen::VectorXd& lambda) {
  const auto s = Eigen::Index(r.support.size());
  Eigen::VectorXd logw(s);
  for (Eigen::Index j = 0; j < s; ++j) {
    logw(j) = r.log_prior[std::size_t(j)] + lambda.dot(r.g.col(j));
  }
  const double mx = logw.maxCoeff();
  Eigen::VectorXd w = (logw.array() - mx).exp();
  const double total = w.sum();
  return {w / total, mx + std::log(total)};
}

struct DualResult {
  Eigen::VectorXd lambda;
  std::size_t iterations = 0;
};

DualResult solve_single(const Reduced& r, const CeOptions& opt) {
  // f'(λ) = E_λ[g] increases monotonically from min g to max g.
  auto mean_g = [&](double lam) {
    Eigen::VectorXd l(1);
    l(0) = lam;
    const auto pt = evaluate(r, l);
    const Eigen::VectorXd gr = r.g.row(0).transpose();
    const double m = pt.q.dot(gr);
    const double var = pt.q.dot(gr.cwiseProduct(gr)) - m * m;
    return std::pair{m, std::max(var, 0.0)};
  };

  double lo = -1.0, hi = 1.0;
  std::size_t it = 0;
  while (mean_g(lo).first > 0.0 && it++ < 200) lo *= 2.0;
  while (mean_g(hi).first < 0.0 && it++ < 400) hi *= 2.0;

  double lam = 0.0;
  std::size_t iter = 0;
  for (; iter < opt.max_iter; ++iter) {
    const auto [m, var] = mean_g(lam);
    if (std::abs(m) < opt.tol) break;
    if (m > 0.0) hi = lam; else lo = lam;
    double next = var > 0.0 ? lam - m / var : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    lam = next;
  }
  Eigen::VectorXd out(1);
  out(0) = lam;
  return {out, iter};
}

DualResult solve_newton(const Reduced& r, const CeOptions& opt) {
  const auto k = r.g.rows();
  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(k);
  auto pt = evaluate(r, lambda);
  std::size_t iter = 0;
  for (; iter < opt.max_iter; ++iter) {
    const Eigen::VectorXd grad = r.g * pt.q;
    if (grad.cwiseAbs().maxCoeff() < opt.tol) break;
    const Eigen::MatrixXd centered = r.g.colwise() - grad;
    const Eigen::MatrixXd hess =
        centered * pt.q.asDiagonal() * centered.transpose();
    // Min-norm step: dependent constraints (e.g. all cells of a partition)
    // make the Hessian singular.
    Eigen::VectorXd step = hess.completeOrthogonalDecomposition().solve(-grad);
    double slope = grad.dot(step);
    if (!(slope < 0.0)) {
      step = -grad;
      slope = -grad.squaredNorm();
    }
    // Near the optimum the predicted decrease drops below the rounding error
    // of log Z; the slack keeps full Newton steps from being rejected there.
    const double slack = 8.0 * std::numeric_limits<double>::epsilon() *
                         std::max(1.0, std::abs(pt.log_z));
    double t = 1.0;
    DualPoint trial;
    for (int bt = 0; bt < 60; ++bt) {
      trial = evaluate(r, lambda + t * step);
      if (trial.log_z <= pt.log_z + 1e-4 * t * slope + slack) break;
      t *= 0.5;
    }
    lambda += t * step;
    pt = std::move(trial);
  }
  return {lambda, iter};
}

}  // namespace

LinearConstraint LinearConstraint::unchecked(std::vector<double> c, double r) {
  LinearConstraint lc;
  lc.coeffs = std::move(c);
  lc.rhs = r;
  return lc;
}

LinearConstraint::LinearConstraint(std::vector<double> c, double r)
    : coeffs(std::move(c)), rhs(r) {
  if (std::all_of(coeffs.begin(), coeffs.end(),
                  [](double v) { return v == 0.0; })) {
    throw InvalidInput("linear constraint has all coefficients zero");
  }
  for (double v : coeffs) {
    if (!std::isfinite(v)) throw InvalidInput("non-finite constraint coefficient");
  }
  if (!std::isfinite(rhs)) throw InvalidInput("non-finite constraint rhs");
}

ConditionalConstraint::ConditionalConstraint(Event a, Event b, double target)
    : a_(a.intersect(b)), b_(std::move(b)), target_(target) {
  if (!(target >= 0.0 && target <= 1.0)) {
    throw InvalidInput("conditional target must lie in [0, 1]");
  }
  if (b_.is_empty()) throw InvalidInput("conditioning event B is empty");
}

LinearConstraint compile_conditional(const ConditionalConstraint& c) {
  const std::size_t n = c.b().space_size();
  std::vector<double> coeffs(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    coeffs[i] = (c.a().contains(i) ? 1.0 : 0.0) -
                (c.b().contains(i) ? c.target() : 0.0);
  }
  // A = B with target 1 (or A empty with target 0) is vacuous and compiles
  // to the zero row, which the solver drops.
  return LinearConstraint::unchecked(std::move(coeffs), 0.0);
}

std::vector<LinearConstraint> ConstraintSet::compiled() const {
  std::vector<LinearConstraint> out;
  out.reserve(size());
  for (const auto& c : conditional_) out.push_back(compile_conditional(c));
  for (const auto& c : linear_) out.push_back(c);
  return out;
}

CeSolution ce_update(const FiniteDistribution& prior,
                     const ConstraintSet& constraints,
                     const CeOptions& options) {
  const auto cons = constraints.compiled();
  for (const auto& c : cons) {
    if (c.coeffs.size() != prior.size()) {
      throw InvalidInput("constraint has " + std::to_string(c.coeffs.size()) +
                         " coefficients for " + std::to_string(prior.size()) +
                         " outcomes");
    }
  }
  for (const auto& c : constraints.conditional()) {
    if (c.b().space_size() != prior.size()) {
      throw InvalidInput("conditional constraint over a different space");
    }
  }

  const Reduced r = reduce(prior, cons);

  DualResult dual;
  if (r.active.size() == 1) {
    dual = solve_single(r, options);
  } else if (!r.active.empty()) {
    dual = solve_newton(r, options);
  } else {
    dual.lambda = Eigen::VectorXd::Zero(0);
  }

  const auto pt = evaluate(r, dual.lambda);
  std::vector<double> post(prior.size(), 0.0);
  for (std::size_t j = 0; j < r.support.size(); ++j) {
    post[r.support[j]] = pt.q(Eigen::Index(j));
  }
  auto posterior = FiniteDistribution::normalized(prior.space(), std::move(post));

  double residual = 0.0;
  for (const auto& c : cons) {
    double v = -c.rhs;
    for (std::size_t i = 0; i < prior.size(); ++i) v += c.coeffs[i] * posterior[i];
    residual = std::max(residual, std::abs(v));
  }
  if (!(residual < options.tol)) {
    throw NotConverged("cross-entropy solve stopped after " +
                       std::to_string(dual.iterations) +
                       " iterations with residual " + std::to_string(residual));
  }

  std::vector<double> multipliers(cons.size(), 0.0);
  for (std::size_t k = 0; k < r.active.size(); ++k) {
    multipliers[r.active[k]] = dual.lambda(Eigen::Index(k));
  }
  const double kl = kl_divergence(posterior, prior);
  return CeSolution{std::move(posterior), std::move(multipliers), kl,
                    dual.iterations, true, residual};
}

double binary_entropy(double c) {
  auto term = [](double x) { return x > 0.0 ? -x * std::log(x) : 0.0; };
  return term(c) + term(1.0 - c);
}

double jb_ce_blue(double target) {
  const double k = std::exp(-binary_entropy(target));
  return 2.0 * k / (2.0 * k + 1.0);
}

}  // namespace probkin
