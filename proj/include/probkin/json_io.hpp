#pragma once

#include <json.hpp>

#include "probkin/ce_solver.hpp"
#include "probkin/distribution.hpp"
#include "probkin/monte_carlo.hpp"
#include "probkin/second_order.hpp"

// JSON shapes understood by the command-line tool. Every parser throws
// InvalidInput (never a nlohmann exception) on malformed documents.
namespace probkin::json_io {

using nlohmann::json;

// {"labels": [...], "probs": [...]}
json to_json(const FiniteDistribution& p);
FiniteDistribution distribution_from_json(const json& j);

// {"conditional": [{"A": [...], "B": [...], "target": t}],
//  "linear": [{"coeffs": {"label": c, ...}, "rhs": r}]}
// Labels missing from "coeffs" get coefficient 0. Both keys are optional.
ConstraintSet constraints_from_json(const json& j, const OutcomeSpace& space);

// {"event": [...]}
Event event_from_json(const json& j, const OutcomeSpace& space);

// {"partition": [[...], ...], "weights": [...]}
struct JeffreyInput {
  Partition partition;
  std::vector<double> weights;
};
JeffreyInput jeffrey_from_json(const json& j, const OutcomeSpace& space);

// {"variant": "uniform" | "dirichlet" | "conditional", "alpha": [4 reals]}
// "alpha" is required for (and only read by) the Dirichlet variant.
SecondOrderPrior prior_from_json(const json& j);
json to_json(const SecondOrderPrior& prior);

// {"mean": m, "stderr": s, "n_accepted": k}
json to_json(const McEstimate& e);
// {"R1": {...}, "R2": {...}, "B1": {...}, "B2": {...}}
json to_json(const McPosterior& post);

// Reads and parses a file; errors become InvalidInput naming the path.
json read_file(const std::string& path);

}  // namespace probkin::json_io
