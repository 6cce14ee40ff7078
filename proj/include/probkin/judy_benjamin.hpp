#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "probkin/ce_solver.hpp"
#include "probkin/distribution.hpp"
#include "probkin/monte_carlo.hpp"
#include "probkin/second_order.hpp"

// The Judy Benjamin benchmark: a uniform prior over the quadrants
// {R1, R2, B1, B2} and the report Pr(R1 | R) = q, pushed through each update
// rule.
namespace probkin::jb {

FiniteDistribution prior();
Event red();
Event blue();

// Cross-entropy posterior under q(R1 | R) = target.
CeSolution ce_posterior(double target);

// Base-space conditioning is only possible when the report is itself an event:
// q = 1 means "not R2", q = 0 means "not R1". nullopt elsewhere.
std::optional<FiniteDistribution> base_condition_posterior(double q);

struct SweepRow {
  double q;
  double ce_blue;
  double hier_blue;
  std::optional<double> base_cond_blue;
  double ce_r1, ce_r2;
  double hier_r1, hier_r2;
};

// "START:STEP:END" (END inclusive) or a single value. Points are rounded to
// 1e-12 so decimal steps land on their decimal values. Throws InvalidInput for
// malformed input, non-positive steps and points outside [0, 1].
std::vector<double> parse_grid(std::string_view text);

std::vector<SweepRow> sweep(const std::vector<double>& qs, double epsilon);

inline constexpr const char* kSweepHeader =
    "q,ce_blue,hier_blue,base_cond_blue,ce_r1,ce_r2,hier_r1,hier_r2";
std::string sweep_csv(const std::vector<SweepRow>& rows);

// Line chart of ce_blue and hier_blue against q on fixed axes
// [0, 1] x [0.4, 0.7].
std::string sweep_svg(const std::vector<SweepRow>& rows);

struct ContrastRow {
  std::string rule;
  FiniteDistribution posterior;
  double blue;
};
struct Contrast {
  double epsilon;
  std::vector<ContrastRow> rows;  // base condition, hierarchical, CE
  std::string note;
};

// Update on the report q = 1 three ways. Throws InvalidInput unless
// 0 < ε < 1.
Contrast contrast(double epsilon);
std::string contrast_text(const Contrast& c);
nlohmann::json contrast_json(const Contrast& c);

// Monte Carlo validation report for one band: posterior estimates, exact
// targets and z-scores where the prior admits them, KS statistics of the two
// marginals, and the independence deviation on a 20 x 20 lattice.
// Throws NoAcceptedSamples when the band catches nothing.
nlohmann::json mc_report(const SecondOrderPrior& prior, const MessageBand& band,
                         const McConfig& cfg);

inline constexpr std::size_t kIndependenceGrid = 20;

// Fixed-width decimal rendering used in CSV output.
std::string format_number(double v);

}  // namespace probkin::jb
