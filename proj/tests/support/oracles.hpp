#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the solver or sampler code it is used to check.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace probkin::oracle {

inline double xlogx_ratio(double x, double ref) {
  return x > 0.0 ? x * std::log(x / ref) : 0.0;
}

// Posterior Pr(Blue) for the uniform four-quadrant prior under q(R1|R) = c,
// by minimizing KL over the one-parameter feasible family
// (c·r, (1 − c)·r, (1 − r)/2, (1 − r)/2) on a grid of `points` interior r.
// Within the family the B1/B2 split is fixed at 1/2 by symmetry.
inline double ce_blue_grid_search(double c, std::size_t points = 1'000'000) {
  double best_kl = INFINITY, best_r = 0.0;
  for (std::size_t i = 1; i <= points; ++i) {
    const double r = double(i) / double(points + 1);
    const double kl = xlogx_ratio(c * r, 0.25) + xlogx_ratio((1 - c) * r, 0.25) +
                      2.0 * xlogx_ratio((1 - r) / 2, 0.25);
    if (kl < best_kl) {
      best_kl = kl;
      best_r = r;
    }
  }
  return 1.0 - best_r;
}

// Composite Simpson rule on [lo, hi] with an even number of panels.
inline double simpson(const std::function<double(double)>& f, double lo,
                      double hi, std::size_t panels = 2000) {
  const double h = (hi - lo) / double(panels);
  double s = f(lo) + f(hi);
  for (std::size_t i = 1; i < panels; ++i) {
    s += f(lo + double(i) * h) * (i % 2 ? 4.0 : 2.0);
  }
  return s * h / 3.0;
}

// Expected quadrant probabilities given cond_red ∈ [lo, hi], by midpoint
// integration over the (r, x, y) cube with a = r·x, b = r·(1 − x),
// c = (1 − r)·y. `density(a, b, c, d)` is the prior density on the simplex
// (unnormalized); `jacobian` selects whether to include |∂(a,b,c)/∂(r,x,y)|
// = r(1 − r), which is needed for simplex densities and must be omitted for
// a prior that is uniform in (r, x, y) itself.
inline std::array<double, 4> band_posterior_by_integration(
    const std::function<double(double, double, double, double)>& density,
    bool jacobian, double lo, double hi, std::size_t n = 200) {
  std::array<double, 4> acc{};
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (double(i) + 0.5) / double(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double x = (double(j) + 0.5) / double(n);
      if (x < lo || x > hi) continue;
      for (std::size_t k = 0; k < n; ++k) {
        const double y = (double(k) + 0.5) / double(n);
        const double a = r * x, b = r * (1 - x), c = (1 - r) * y,
                     d = (1 - r) * (1 - y);
        const double w = density(a, b, c, d) * (jacobian ? r * (1 - r) : 1.0);
        total += w;
        acc[0] += w * a;
        acc[1] += w * b;
        acc[2] += w * c;
        acc[3] += w * d;
      }
    }
  }
  for (double& v : acc) v /= total;
  return acc;
}

// Uniform simplex points by rejection from the unit cube, with the free
// coordinates chosen by `omitted`: the three cube coordinates fill every
// quadrant except `omitted`, which takes 1 minus their sum. Returns
// (a, b, c, d) in quadrant order.
class CubeRejectionSampler {
 public:
  CubeRejectionSampler(std::size_t omitted, std::uint64_t seed)
      : omitted_(omitted), engine_(seed) {}

  std::array<double, 4> next() {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (;;) {
      const double x = u(engine_), y = u(engine_), z = u(engine_);
      if (x + y + z > 1.0) continue;
      std::array<double, 4> out{};
      const std::array<double, 3> free{x, y, z};
      std::size_t f = 0;
      for (std::size_t i = 0; i < 4; ++i) {
        out[i] = i == omitted_ ? 1.0 - x - y - z : free[f++];
      }
      return out;
    }
  }

 private:
  std::size_t omitted_;
  std::mt19937_64 engine_;
};

}  // namespace probkin::oracle
