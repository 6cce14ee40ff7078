#include "probkin/json_io.hpp"

#include <fstream>
#include <sstream>

#include "probkin/errors.hpp"

namespace probkin::json_io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InvalidInput(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

double number(const json& j, const char* what) {
  if (!j.is_number()) throw InvalidInput(std::string(what) + " must be a number");
  return j.get<double>();
}

std::vector<std::string> label_list(const json& j, const char* what) {
  if (!j.is_array()) {
    throw InvalidInput(std::string(what) + " must be an array of labels");
  }
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) {
      throw InvalidInput(std::string(what) + " must contain only strings");
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::vector<double> number_list(const json& j, const char* what) {
  if (!j.is_array()) {
    throw InvalidInput(std::string(what) + " must be an array of numbers");
  }
  std::vector<double> out;
  for (const auto& v : j) out.push_back(number(v, what));
  return out;
}

}  // namespace

json to_json(const FiniteDistribution& p) {
  json probs = json::array();
  for (double v : p.probs()) probs.push_back(v);
  return {{"labels", p.space().labels()}, {"probs", probs}};
}

FiniteDistribution distribution_from_json(const json& j) {
  OutcomeSpace space(label_list(field(j, "labels"), "labels"));
  return FiniteDistribution(std::move(space),
                            number_list(field(j, "probs"), "probs"));
}

ConstraintSet constraints_from_json(const json& j, const OutcomeSpace& space) {
  if (!j.is_object()) throw InvalidInput("constraint set must be an object");
  ConstraintSet set;
  if (j.contains("conditional")) {
    const auto& arr = j.at("conditional");
    if (!arr.is_array()) throw InvalidInput("'conditional' must be an array");
    for (const auto& c : arr) {
      Event a(space, label_list(field(c, "A"), "A"));
      Event b(space, label_list(field(c, "B"), "B"));
      set.add(ConditionalConstraint(a, b, number(field(c, "target"), "target")));
    }
  }
  if (j.contains("linear")) {
    const auto& arr = j.at("linear");
    if (!arr.is_array()) throw InvalidInput("'linear' must be an array");
    for (const auto& c : arr) {
      const auto& coeffs = field(c, "coeffs");
      if (!coeffs.is_object()) {
        throw InvalidInput("'coeffs' must map labels to numbers");
      }
      std::vector<double> row(space.size(), 0.0);
      for (const auto& [label, v] : coeffs.items()) {
        row[space.index_of(label)] = number(v, "coefficient");
      }
      set.add(LinearConstraint(std::move(row), number(field(c, "rhs"), "rhs")));
    }
  }
  return set;
}

Event event_from_json(const json& j, const OutcomeSpace& space) {
  return Event(space, label_list(field(j, "event"), "event"));
}

JeffreyInput jeffrey_from_json(const json& j, const OutcomeSpace& space) {
  const auto& cells_json = field(j, "partition");
  if (!cells_json.is_array()) throw InvalidInput("'partition' must be an array");
  std::vector<Event> cells;
  for (const auto& c : cells_json) cells.emplace_back(space, label_list(c, "cell"));
  return {Partition(space, std::move(cells)),
          number_list(field(j, "weights"), "weights")};
}

SecondOrderPrior prior_from_json(const json& j) {
  const auto& v = field(j, "variant");
  if (!v.is_string()) throw InvalidInput("'variant' must be a string");
  const auto name = v.get<std::string>();
  if (name == "uniform") return SecondOrderPrior::uniform();
  if (name == "conditional") return SecondOrderPrior::conditional();
  if (name == "dirichlet") {
    const auto alpha = number_list(field(j, "alpha"), "alpha");
    if (alpha.size() != 4) {
      throw InvalidInput("Dirichlet prior needs exactly 4 alpha values");
    }
    return SecondOrderPrior::dirichlet({alpha[0], alpha[1], alpha[2], alpha[3]});
  }
  throw InvalidInput("unknown prior variant '" + name + "'");
}

json to_json(const SecondOrderPrior& prior) {
  json j = {{"variant", prior.name()}};
  if (const auto* d = std::get_if<DirichletPrior>(&prior.variant())) {
    j["alpha"] = d->alpha;
  }
  return j;
}

json to_json(const McEstimate& e) {
  return {{"mean", e.mean}, {"stderr", e.std_error}, {"n_accepted", e.n_accepted}};
}

json to_json(const McPosterior& post) {
  json j = json::object();
  for (std::size_t k = 0; k < 4; ++k) {
    j[kQuadrantLabels[k]] = to_json(post.quadrants[k]);
  }
  return j;
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::exception& e) {
    throw InvalidInput("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace probkin::json_io
