// probkin: update finite distributions on uncertain evidence and reproduce
// the Judy Benjamin contrasts between cross-entropy and hierarchical
// conditioning.
//
// Exit codes: 0 ok, 2 bad input, 3 infeasible / zero-probability
// conditioning, 4 solver did not converge, 5 no Monte Carlo sample accepted.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "probkin/ce_solver.hpp"
#include "probkin/errors.hpp"
#include "probkin/json_io.hpp"
#include "probkin/judy_benjamin.hpp"

namespace {

using nlohmann::json;
using namespace probkin;

enum ExitCode : int {
  kOk = 0,
  kBadInput = 2,
  kInfeasible = 3,
  kNotConverged = 4,
  kNoSamples = 5,
};

// Writes to `path`, or stdout when empty. Content is fully built before this
// is called, so a failing command never leaves a partial file behind.
void emit(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << content;
}

// --prior for jb-mc: a JSON file, inline JSON, or a bare variant name.
SecondOrderPrior load_prior(const std::string& arg) {
  if (arg.empty() || arg == "uniform") return SecondOrderPrior::uniform();
  if (arg == "conditional") return SecondOrderPrior::conditional();
  if (arg.front() == '{') {
    try {
      return json_io::prior_from_json(json::parse(arg));
    } catch (const json::exception& e) {
      throw InvalidInput(std::string("bad inline prior: ") + e.what());
    }
  }
  return json_io::prior_from_json(json_io::read_file(arg));
}

struct UpdateArgs {
  std::string prior, rule, constraints, out;
};

std::string run_update(const UpdateArgs& a) {
  const auto prior = json_io::distribution_from_json(json_io::read_file(a.prior));
  const auto doc = json_io::read_file(a.constraints);
  json result = {{"rule", a.rule}};
  std::optional<FiniteDistribution> post;
  if (a.rule == "condition") {
    post = condition(prior, json_io::event_from_json(doc, prior.space()));
  } else if (a.rule == "jeffrey") {
    const auto in = json_io::jeffrey_from_json(doc, prior.space());
    post = jeffrey_update(prior, in.partition, in.weights);
  } else if (a.rule == "ce") {
    const auto sol =
        ce_update(prior, json_io::constraints_from_json(doc, prior.space()));
    post = sol.posterior;
    result["iterations"] = sol.iterations;
    result["multipliers"] = sol.multipliers;
    result["residual"] = sol.residual;
    result["converged"] = sol.converged;
  } else {
    throw InvalidInput("unknown rule '" + a.rule + "'");
  }
  result["posterior"] = json_io::to_json(*post);
  result["kl_value"] = kl_divergence(*post, prior);
  return result.dump(2) + "\n";
}

struct SweepArgs {
  std::string grid = "0:0.05:1", out, plot;
  double eps = kDefaultEpsilon;
};

void run_sweep(const SweepArgs& a) {
  const auto rows = jb::sweep(jb::parse_grid(a.grid), a.eps);
  const auto csv = jb::sweep_csv(rows);
  std::string svg;
  if (!a.plot.empty()) svg = jb::sweep_svg(rows);
  emit(a.out, csv);
  if (!a.plot.empty()) emit(a.plot, svg);
}

struct McArgs {
  std::string prior = "uniform", out;
  double q = 0.75, eps = kDefaultEpsilon;
  McConfig cfg;
};

std::string run_mc(const McArgs& a) {
  a.cfg.validate();
  return jb::mc_report(load_prior(a.prior), MessageBand(a.q, a.eps), a.cfg)
             .dump(2) +
         "\n";
}

struct ContrastArgs {
  double eps = kDefaultEpsilon;
  bool json = false;
  std::string out;
};

void run_contrast(const ContrastArgs& a) {
  const auto c = jb::contrast(a.eps);
  const auto js = jb::contrast_json(c).dump(2) + "\n";
  if (a.json) {
    emit(a.out, js);
    return;
  }
  std::cout << jb::contrast_text(c);
  if (!a.out.empty()) emit(a.out, js);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Probability update on uncertain evidence: conditioning, "
               "Jeffrey's rule, cross-entropy and hierarchical conditioning"};
  app.require_subcommand(1);

  UpdateArgs upd;
  auto* update = app.add_subcommand("update", "Update a distribution by one rule");
  update->add_option("--prior", upd.prior, "Prior distribution JSON file")->required();
  update->add_option("--rule", upd.rule, "condition | jeffrey | ce")
      ->required()
      ->check(CLI::IsMember({"condition", "jeffrey", "ce"}));
  update->add_option("--constraints", upd.constraints,
                     "Event, partition or constraint-set JSON file")
      ->required();
  update->add_option("--out", upd.out, "Write the result here instead of stdout");

  SweepArgs sw;
  auto* sweep = app.add_subcommand("jb-sweep", "Tabulate Pr(Blue) against q");
  sweep->add_option("--grid", sw.grid, "START:STEP:END over [0, 1]")
      ->capture_default_str();
  sweep->add_option("--eps", sw.eps, "Band half-width")->capture_default_str();
  sweep->add_option("--out", sw.out, "CSV output file (stdout if omitted)");
  sweep->add_option("--plot", sw.plot, "SVG plot output file");

  McArgs mc;
  auto* mcc = app.add_subcommand("jb-mc", "Monte Carlo check of the band posterior");
  mcc->add_option("--prior", mc.prior,
                  "uniform | conditional | prior JSON file | inline JSON")
      ->capture_default_str();
  mcc->add_option("--q", mc.q, "Reported Pr(R1 | R)")->capture_default_str();
  mcc->add_option("--eps", mc.eps, "Band half-width")->capture_default_str();
  mcc->add_option("--samples", mc.cfg.samples, "Sample count")->capture_default_str();
  mcc->add_option("--seed", mc.cfg.seed, "RNG seed")->capture_default_str();
  mcc->add_option("--chunks", mc.cfg.chunks, "Independent sample streams")
      ->capture_default_str();
  mcc->add_option("--out", mc.out, "Write the report here instead of stdout");
  mcc->add_flag("--json", "Emit JSON (the report is always JSON)");

  ContrastArgs ct;
  auto* con = app.add_subcommand("jb-contrast",
                                 "Compare updates on the report Pr(R1 | R) = 1");
  con->add_option("--eps", ct.eps, "Band half-width")->capture_default_str();
  con->add_flag("--json", ct.json, "Emit JSON instead of the text table");
  con->add_option("--out", ct.out, "Also write the JSON table to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kBadInput;
  }

  try {
    if (*update) {
      emit(upd.out, run_update(upd));
    } else if (*sweep) {
      run_sweep(sw);
    } else if (*mcc) {
      emit(mc.out, run_mc(mc));
    } else if (*con) {
      run_contrast(ct);
    }
  } catch (const NoAcceptedSamples& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNoSamples;
  } catch (const NotConverged& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNotConverged;
  } catch (const Infeasible& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInfeasible;
  } catch (const ZeroConditioningEvent& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInfeasible;
  } catch (const InfeasibleWeight& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInfeasible;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  }
  return kOk;
}
