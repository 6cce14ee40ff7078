#include "probkin/judy_benjamin.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "probkin/errors.hpp"
#include "probkin/json_io.hpp"

namespace probkin::jb {

using nlohmann::json;

namespace {

double round12(double v) { return std::round(v * 1e12) / 1e12; }

double parse_number(std::string_view s) {
  std::string str(s);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(str, &used);
  } catch (const std::exception&) {
    throw InvalidInput("'" + str + "' is not a number");
  }
  if (used != str.size()) throw InvalidInput("'" + str + "' is not a number");
  return v;
}

double blue_of(const FiniteDistribution& p) {
  return event_probability(p, blue());
}

// Plot coordinates.
constexpr double kWidth = 640, kHeight = 400, kMargin = 50;
constexpr double kYMin = 0.4, kYMax = 0.7;

double px(double q) { return kMargin + q * (kWidth - 2 * kMargin); }
double py(double v) {
  return kHeight - kMargin - (v - kYMin) / (kYMax - kYMin) * (kHeight - 2 * kMargin);
}

}  // namespace

FiniteDistribution prior() { return FiniteDistribution::uniform(quadrant_space()); }

Event red() { return Event(quadrant_space(), {"R1", "R2"}); }

Event blue() { return Event(quadrant_space(), {"B1", "B2"}); }

CeSolution ce_posterior(double target) {
  ConstraintSet set;
  set.add(ConditionalConstraint(Event(quadrant_space(), {"R1"}), red(), target));
  return ce_update(prior(), set);
}

std::optional<FiniteDistribution> base_condition_posterior(double q) {
  if (q == 1.0) return condition(prior(), Event(quadrant_space(), {"R2"}).complement());
  if (q == 0.0) return condition(prior(), Event(quadrant_space(), {"R1"}).complement());
  return std::nullopt;
}

std::vector<double> parse_grid(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto colon = text.find(':', start);
    parts.push_back(text.substr(start, colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }

  std::vector<double> out;
  if (parts.size() == 1) {
    out.push_back(parse_number(parts[0]));
  } else if (parts.size() == 3) {
    const double lo = parse_number(parts[0]);
    const double step = parse_number(parts[1]);
    const double hi = parse_number(parts[2]);
    if (!(step > 0.0)) throw InvalidInput("grid step must be positive");
    if (lo > hi) throw InvalidInput("grid start exceeds grid end");
    const double count = std::floor((hi - lo) / step + 1e-9);
    if (count > 1e6) throw InvalidInput("grid has too many points");
    for (std::size_t i = 0; i <= std::size_t(count); ++i) {
      out.push_back(round12(lo + double(i) * step));
    }
  } else {
    throw InvalidInput("grid must be START:STEP:END or a single value");
  }
  for (double q : out) {
    if (!(q >= 0.0 && q <= 1.0)) {
      throw InvalidInput("grid point " + format_number(q) + " outside [0, 1]");
    }
  }
  return out;
}

std::vector<SweepRow> sweep(const std::vector<double>& qs, double epsilon) {
  std::vector<SweepRow> rows;
  rows.reserve(qs.size());
  for (double q : qs) {
    const MessageBand band(q, epsilon);
    const auto ce = ce_posterior(q).posterior;
    const auto hier = exact_posterior_quadrants(band);
    SweepRow row;
    row.q = q;
    row.ce_blue = blue_of(ce);
    row.hier_blue = expected_blue_given_message(band);
    if (auto base = base_condition_posterior(q)) row.base_cond_blue = blue_of(*base);
    row.ce_r1 = ce.at("R1");
    row.ce_r2 = ce.at("R2");
    row.hier_r1 = hier.at("R1");
    row.hier_r2 = hier.at("R2");
    rows.push_back(row);
  }
  return rows;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << kSweepHeader << '\n';
  for (const auto& r : rows) {
    out << format_number(r.q) << ',' << format_number(r.ce_blue) << ','
        << format_number(r.hier_blue) << ','
        << (r.base_cond_blue ? format_number(*r.base_cond_blue) : "") << ','
        << format_number(r.ce_r1) << ',' << format_number(r.ce_r2) << ','
        << format_number(r.hier_r1) << ',' << format_number(r.hier_r2) << '\n';
  }
  return out.str();
}

std::string sweep_svg(const std::vector<SweepRow>& rows) {
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
    << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
    << kHeight << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // Axes box and ticks.
  s << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\""
    << kWidth - 2 * kMargin << "\" height=\"" << kHeight - 2 * kMargin
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double q = i / 4.0;
    s << "<text x=\"" << px(q) << "\" y=\"" << kHeight - kMargin + 18
      << "\" font-size=\"12\" text-anchor=\"middle\">" << format_number(q)
      << "</text>\n";
  }
  for (int i = 0; i <= 6; ++i) {
    const double v = kYMin + i * 0.05;
    s << "<text x=\"" << kMargin - 6 << "\" y=\"" << py(v) + 4
      << "\" font-size=\"12\" text-anchor=\"end\">" << format_number(round12(v))
      << "</text>\n";
  }
  s << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 10
    << "\" font-size=\"13\" text-anchor=\"middle\">q = reported Pr(R1 | R)</text>\n";
  s << "<text x=\"14\" y=\"" << kHeight / 2
    << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
    << kHeight / 2 << ")\">posterior Pr(Blue)</text>\n";

  auto polyline = [&](auto value, const char* color) {
    s << "<polyline fill=\"none\" stroke=\"" << color
      << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i) s << ' ';
      s << format_number(px(rows[i].q)) << ','
        << format_number(py(value(rows[i])));
    }
    s << "\"/>\n";
  };
  polyline([](const SweepRow& r) { return r.ce_blue; }, "#d62728");
  polyline([](const SweepRow& r) { return r.hier_blue; }, "#1f77b4");

  s << "<text x=\"" << kMargin + 10 << "\" y=\"" << kMargin + 18
    << "\" font-size=\"12\" fill=\"#d62728\">cross-entropy</text>\n";
  s << "<text x=\"" << kMargin + 10 << "\" y=\"" << kMargin + 34
    << "\" font-size=\"12\" fill=\"#1f77b4\">hierarchical conditioning</text>\n";
  s << "</svg>\n";
  return s.str();
}

Contrast contrast(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw InvalidInput("epsilon must lie in (0, 1)");
  }
  const auto base = *base_condition_posterior(1.0);
  const auto hier = exact_posterior_quadrants(MessageBand(1.0, epsilon));
  const auto ce = ce_posterior(1.0).posterior;

  Contrast c;
  c.epsilon = epsilon;
  c.rows.push_back({"base-space condition on not-R2", base, blue_of(base)});
  c.rows.push_back({"hierarchical band q=1", hier,
                    expected_blue_given_message(MessageBand(1.0, epsilon))});
  c.rows.push_back({"cross-entropy target 1", ce, blue_of(ce)});
  c.note = "conditioning on not-R2 in the base space gives Pr(Blue) = " +
           format_number(c.rows[0].blue) +
           " (2/3); conditioning on the report as an event about the "
           "sender's beliefs keeps Pr(Blue) = " +
           format_number(c.rows[1].blue) + " (1/2)";
  return c;
}

std::string contrast_text(const Contrast& c) {
  std::ostringstream out;
  char line[200];
  out << "report: Pr(R1 | R) = 1, band half-width " << format_number(c.epsilon)
      << "\n\n";
  std::snprintf(line, sizeof line, "%-32s %8s %8s %8s %8s %8s\n", "rule", "R1",
                "R2", "B1", "B2", "Blue");
  out << line;
  for (const auto& r : c.rows) {
    std::snprintf(line, sizeof line, "%-32s %8.5f %8.5f %8.5f %8.5f %8.5f\n",
                  r.rule.c_str(), r.posterior[0], r.posterior[1], r.posterior[2],
                  r.posterior[3], r.blue);
    out << line;
  }
  out << '\n' << c.note << '\n';
  return out.str();
}

json contrast_json(const Contrast& c) {
  json rows = json::array();
  for (const auto& r : c.rows) {
    rows.push_back({{"rule", r.rule},
                    {"posterior", json_io::to_json(r.posterior)},
                    {"blue", r.blue}});
  }
  return {{"epsilon", c.epsilon}, {"rows", rows}, {"note", c.note}};
}

json mc_report(const SecondOrderPrior& prior, const MessageBand& band,
               const McConfig& cfg) {
  const auto post = mc_posterior_quadrants(prior, band, cfg);

  json report;
  report["prior"] = json_io::to_json(prior);
  report["band"] = {{"q", band.q()},
                    {"epsilon", band.epsilon()},
                    {"lo", band.lo()},
                    {"hi", band.hi()}};
  report["samples"] = cfg.samples;
  report["seed"] = cfg.seed;
  report["chunks"] = cfg.chunks;
  report["n_total"] = post.n_total;
  report["n_accepted"] = post.n_accepted;
  report["posterior"] = json_io::to_json(post);
  report["blue"] = json_io::to_json(post.blue);

  auto z = [](double mc, double exact, double se) -> json {
    if (!(se > 0.0)) return nullptr;
    return std::abs(mc - exact) / se;
  };
  if (const auto exact = exact_posterior_for(prior, band)) {
    json ex = json::object(), zs = json::object();
    for (std::size_t k = 0; k < 4; ++k) {
      ex[kQuadrantLabels[k]] = (*exact)[k];
      zs[kQuadrantLabels[k]] =
          z(post.quadrants[k].mean, (*exact)[k], post.quadrants[k].std_error);
    }
    const double exact_blue = expected_blue_given_message(band);
    ex["blue"] = exact_blue;
    zs["blue"] = z(post.blue.mean, exact_blue, post.blue.std_error);
    report["exact"] = ex;
    report["z_scores"] = zs;
  } else {
    report["exact"] = nullptr;
    report["z_scores"] = nullptr;
  }

  if (const auto cdfs = marginal_cdfs(prior)) {
    const auto m = marginal_samples(prior, cfg);
    report["ks"] = {
        {"cond_red", ks_statistic(m.cond_red, cdfs->cond_red)},
        {"blue", ks_statistic(m.blue, cdfs->blue)},
        {"n", m.blue.size()},
        {"critical", ks_critical_value(m.blue.size())}};
  } else {
    report["ks"] = nullptr;
  }
  report["independence_deviation"] =
      independence_check(prior, cfg, kIndependenceGrid);
  return report;
}

}  // namespace probkin::jb
