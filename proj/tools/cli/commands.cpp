// Copyright 2026 The hypertail Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli/output.hpp"
#include "hypertail/bounds.hpp"
#include "hypertail/errors.hpp"
#include "hypertail/exact.hpp"
#include "hypertail/inference.hpp"
#include "hypertail/log_space.hpp"
#include "hypertail/montecarlo.hpp"

namespace hypertail::cli {
namespace {

using bounds::BoundFamily;

enum class Method { Auto, Rational, Log };

struct Settings {
  std::string format;
  int digits = 6;
};

// Per-subcommand option storage. Only the fields of the selected subcommand
// are read.
struct Options {
  Count population = 0;
  std::optional<Count> positives;
  Count samples = 0;
  Count observed = 0;
  Count threshold = 0;
  std::string side = "lower";
  std::string method = "auto";
  double deviation = 0.0;
  std::optional<double> fraction;
  std::optional<double> count_deviation;
  std::string family = "auto";
  bool two_sided = false;
  double delta = 0.0;
  std::optional<double> halfwidth;
  std::optional<double> halfwidth_percent;
  bool compare = false;
  std::uint64_t trials = 100'000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::vector<double> deltas;
  std::vector<double> fractions;
};

class Emitter {
 public:
  Emitter(OutputRecord& record, int digits) : record_(record), digits_(digits) {}

  void number(std::string key, double value) {
    record_.results.emplace_back(std::move(key), format_number(value, digits_));
  }
  void integer(std::string key, long long value) {
    record_.results.emplace_back(std::move(key), std::to_string(value));
  }
  void text(std::string key, std::string value) {
    record_.results.emplace_back(std::move(key), std::move(value));
  }
  void label(std::string key, std::string value) {
    record_.labels.emplace_back(std::move(key), std::move(value));
  }
  void warn(std::string message) { record_.warnings.push_back(std::move(message)); }

 private:
  OutputRecord& record_;
  int digits_;
};

Method resolve_method(const std::string& name, Count population) {
  if (name == "rational") return Method::Rational;
  if (name == "log") return Method::Log;
  return population <= kAutoRationalLimit ? Method::Rational : Method::Log;
}

void emit_exact(Emitter& e, const exact::ExactProb& p) {
  e.number("probability", p.to_double());
  e.text("fraction", p.fraction());
  e.text("reduced", p.reduced());
  e.number("log_probability", p.log_value);
  e.label("method", "rational");
}

void emit_log(Emitter& e, const exact::LogProb& p) {
  e.number("probability", p.value());
  e.number("log_probability", p.log_value);
  e.label("method", "log-space");
}

Population population_with_positives(const Options& o) {
  if (!o.positives) {
    throw DomainError("--positives is required for this command");
  }
  return Population(o.population, *o.positives);
}

void cmd_pmf(const Options& o, Emitter& e) {
  const Population pop = population_with_positives(o);
  if (resolve_method(o.method, o.population) == Method::Rational) {
    emit_exact(e, exact::pmf(pop, o.samples, o.observed));
  } else {
    emit_log(e, exact::log_pmf(pop, o.samples, o.observed));
  }
}

void cmd_tail(const Options& o, Emitter& e) {
  const Population pop = population_with_positives(o);
  const bool lower = o.side == "lower";
  if (resolve_method(o.method, o.population) == Method::Rational) {
    emit_exact(e, lower ? exact::lower_tail(pop, o.samples, o.threshold)
                        : exact::upper_tail(pop, o.samples, o.threshold));
  } else {
    emit_log(e, lower ? exact::log_lower_tail(pop, o.samples, o.threshold)
                      : exact::log_upper_tail(pop, o.samples, o.threshold));
  }
  e.label("event", lower ? "i <= k" : "i >= k");
}

void cmd_deviation(const Options& o, Emitter& e) {
  const Population pop = population_with_positives(o);
  const auto k = exact::deviation_thresholds(pop, o.samples,
                                             mpq_class(o.deviation));
  e.number("mean", static_cast<double>(o.samples) *
                       static_cast<double>(*o.positives) /
                       static_cast<double>(o.population));
  e.integer("lower_threshold", k.lower);
  e.integer("upper_threshold", k.upper);
  if (resolve_method(o.method, o.population) == Method::Rational) {
    emit_exact(e, exact::two_sided_exact(pop, o.samples, o.deviation));
  } else {
    emit_log(e, exact::log_two_sided(pop, o.samples, o.deviation));
  }
  e.label("event", "|i - nM/N| >= c");
}

void cmd_bound(const Options& o, Emitter& e) {
  const auto family = bounds::parse_family(o.family);
  if (!family) throw DomainError("unknown bound family '" + o.family + "'");
  if (o.fraction.has_value() == o.count_deviation.has_value()) {
    throw DomainError("exactly one of --fraction or --deviation is required");
  }
  const bounds::TailDeviation t =
      o.fraction ? bounds::TailDeviation(*o.fraction)
                 : bounds::TailDeviation::from_count(*o.count_deviation,
                                                     o.samples);
  const Population pop = o.positives ? Population(o.population, *o.positives)
                                     : Population(o.population);
  bounds::BoundValue value{};
  if (o.two_sided) {
    value = bounds::concentration_bound(pop, o.samples, t, *family);
  } else if (*family == BoundFamily::Auto) {
    value = bounds::best_bound(o.population, o.samples, t);
  } else if (*family == BoundFamily::KL) {
    value = bounds::kl_upper_tail_bound(pop, o.samples, t);
    e.number("lower_tail_value",
             bounds::kl_lower_tail_bound(pop, o.samples, t).value);
  } else {
    value = bounds::tail_bound(*family, o.population, o.samples, t);
  }
  e.number("t", t.value());
  e.number("value", value.value);
  e.number("exponent", value.exponent);
  e.label("family", std::string(bounds::to_string(value.family_used)));
  e.label("tails", o.two_sided ? "two-sided" : "single");
  if (value.value >= 1.0) e.warn("bound is vacuous (>= 1)");
}

void emit_interval(Emitter& e, const inference::IntervalResult& r,
                   const std::string& prefix) {
  e.number(prefix + "halfwidth", r.halfwidth);
  e.number(prefix + "delta", r.delta);
  e.number(prefix + "confidence", 1.0 - r.delta);
  e.number(prefix + "lower", r.lower);
  e.number(prefix + "upper", r.upper);
  e.number(prefix + "clamped_lower", r.clamped_lower);
  e.number(prefix + "clamped_upper", r.clamped_upper);
  e.label(prefix + "formula", std::string(inference::to_string(r.formula)));
}

void emit_estimate(Emitter& e, const inference::IntervalResult& r) {
  e.text("estimate", r.estimate.get_str());
  e.number("estimate_decimal", r.estimate_value);
}

void interval_warnings(Emitter& e, const inference::IntervalResult& r) {
  if (r.clamped()) e.warn("interval clamped to [0, N]");
  if (r.vacuous) e.warn("bound is vacuous: delta clamped to 1");
}

void cmd_ci(const Options& o, Emitter& e) {
  const auto r = inference::halfwidth_for_confidence(o.population, o.samples,
                                                     o.observed, o.delta);
  emit_estimate(e, r);
  emit_interval(e, r, "");
  interval_warnings(e, r);
  if (o.compare) {
    const auto legacy = inference::legacy_halfwidth_for_confidence(
        o.population, o.samples, o.observed, o.delta);
    emit_interval(e, legacy, "legacy_");
  }
}

double halfwidth_from(const Options& o) {
  if (o.halfwidth.has_value() == o.halfwidth_percent.has_value()) {
    throw DomainError(
        "exactly one of --halfwidth or --halfwidth-percent is required");
  }
  if (o.halfwidth) return *o.halfwidth;
  return *o.halfwidth_percent * static_cast<double>(o.population) / 100.0;
}

void cmd_confidence(const Options& o, Emitter& e) {
  const double c = halfwidth_from(o);
  const auto r = inference::confidence_for_halfwidth(o.population, o.samples,
                                                     o.observed, c);
  emit_estimate(e, r);
  emit_interval(e, r, "");
  interval_warnings(e, r);
  if (o.compare) {
    const auto legacy = inference::legacy_confidence_for_halfwidth(
        o.population, o.samples, o.observed, c);
    emit_interval(e, legacy, "legacy_");
  }
}

void cmd_samplesize(const Options& o, Emitter& e) {
  const double c = halfwidth_from(o);
  const auto r = inference::required_sample_size(o.population, o.delta, c);
  e.integer("n_required", r.n_required);
  e.number("n_real", r.n_real);
  e.number("halfwidth", c);
  e.number("x", r.x);
  e.number("y", r.y);
  e.number("regime_boundary", r.regime_boundary);
  e.number("lower_estimate",
           inference::sample_size_lower_estimate(o.population, o.delta, c));
  e.label("regime", std::string(inference::to_string(r.regime)));
}

// Shortest form of a grid value for use inside a result key ("0.05").
std::string key_of(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return buf;
}

void cmd_simulate(const Options& o, Emitter& e) {
  const Population pop = population_with_positives(o);
  const montecarlo::SimulationConfig config{o.population, *pop.positives(),
                                            o.samples,    o.trials,
                                            o.seed,       o.threads};
  const auto report = montecarlo::simulate(config, o.deltas, o.fractions);
  e.integer("trials", static_cast<long long>(report.trials));
  for (const auto& [i, freq] : report.empirical_pmf) {
    e.number("pmf[" + std::to_string(i) + "]", freq);
    e.number("exact_pmf[" + std::to_string(i) + "]",
             exact::log_pmf(pop, o.samples, i).value());
  }
  for (const auto& point : report.coverage) {
    const std::string key = key_of(point.delta);
    e.number("halfwidth[" + key + "]", point.halfwidth);
    e.number("coverage[" + key + "]", point.coverage);
    if (point.coverage < 1.0 - point.delta) {
      e.warn("empirical coverage below 1 - delta at delta=" + key);
    }
  }
  for (const auto& point : report.tail_exceedance) {
    const std::string key = key_of(point.t);
    e.number("exceedance[" + key + "]", point.exceedance);
    e.number("bound[" + key + "]", point.bound);
  }
  e.label("sampler", "partial Fisher-Yates, mt19937_64 per trial");
}

struct Subcommand {
  CLI::App* app;
  std::function<void(const Options&, Emitter&)> handler;
};

void add_common(CLI::App* sub, Settings& settings) {
  sub->add_option("--format", settings.format, "Output format: text, json, csv")
      ->check(CLI::IsMember({"text", "json", "csv"}, CLI::ignore_case));
  sub->add_option("--digits", settings.digits,
                  "Significant digits for decimal output")
      ->check(CLI::Range(1, 17));
}

void add_population(CLI::App* sub, Options& o, bool positives_required) {
  sub->add_option("--population", o.population, "Population size N")
      ->required();
  auto* positives =
      sub->add_option("--positives", o.positives, "Positive individuals M");
  if (positives_required) positives->required();
}

void add_method(CLI::App* sub, Options& o) {
  sub->add_option("--method", o.method,
                  "rational, log, or auto (rational for N <= 10000)")
      ->check(CLI::IsMember({"auto", "rational", "log"}));
}

void add_halfwidth(CLI::App* sub, Options& o) {
  auto* abs = sub->add_option("--halfwidth", o.halfwidth,
                              "Half-width c in individuals");
  auto* pct = sub->add_option("--halfwidth-percent", o.halfwidth_percent,
                              "Half-width as a percentage of N");
  abs->excludes(pct);
}

// Inputs as given on the command line, so the record can be replayed.
Fields echo_inputs(const CLI::App& sub, const Settings& settings) {
  Fields inputs;
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->count() == 0 || opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help" || name == "format" || name == "digits") continue;
    if (opt->get_type_size() == 0) {
      inputs.emplace_back(name, "true");
      continue;
    }
    std::string joined;
    for (const auto& value : opt->results()) {
      if (!joined.empty()) joined += ",";
      joined += value;
    }
    inputs.emplace_back(name, joined);
  }
  inputs.emplace_back("digits", std::to_string(settings.digits));
  return inputs;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{
      "Exact hypergeometric probabilities, tail bounds, confidence intervals "
      "and sample sizes for sampling without replacement",
      "hypertail"};
  app.require_subcommand(1);

  Settings settings;
  if (const char* env = std::getenv(kFormatEnv); env && parse_format(env)) {
    settings.format = env;
  } else {
    settings.format = "text";
  }
  Options o;
  std::vector<Subcommand> subs;

  {
    auto* sub = app.add_subcommand("pmf", "P[i = observed]");
    add_population(sub, o, true);
    sub->add_option("--samples", o.samples, "Samples drawn n")->required();
    sub->add_option("--observed", o.observed, "Positives observed i")->required();
    add_method(sub, o);
    subs.push_back({sub, cmd_pmf});
  }
  {
    auto* sub = app.add_subcommand("tail", "P[i <= k] or P[i >= k]");
    add_population(sub, o, true);
    sub->add_option("--samples", o.samples, "Samples drawn n")->required();
    sub->add_option("--threshold", o.threshold, "Threshold k")->required();
    sub->add_option("--side", o.side, "lower (i <= k) or upper (i >= k)")
        ->check(CLI::IsMember({"lower", "upper"}));
    add_method(sub, o);
    subs.push_back({sub, cmd_tail});
  }
  {
    auto* sub = app.add_subcommand("deviation", "P[|i - nM/N| >= c], exact");
    add_population(sub, o, true);
    sub->add_option("--samples", o.samples, "Samples drawn n")->required();
    sub->add_option("--deviation", o.deviation, "Deviation c in counts")
        ->required();
    add_method(sub, o);
    subs.push_back({sub, cmd_deviation});
  }
  {
    auto* sub = app.add_subcommand("bound", "Closed-form tail bound");
    add_population(sub, o, false);
    sub->add_option("--samples", o.samples, "Samples drawn n")->required();
    auto* frac = sub->add_option("--fraction", o.fraction,
                                 "Deviation t as a fraction of n");
    auto* dev = sub->add_option("--deviation", o.count_deviation,
                                "Deviation c = tn in counts");
    frac->excludes(dev);
    sub->add_option("--family", o.family, "kl, b1, b2, b3, b4 or auto")
        ->check(CLI::IsMember({"kl", "b1", "b2", "b3", "b4", "auto"},
                              CLI::ignore_case));
    sub->add_flag("--two-sided", o.two_sided,
                  "Bound P[|i - nM/N| >= tn] instead of one tail");
    subs.push_back({sub, cmd_bound});
  }
  {
    auto* sub = app.add_subcommand("ci", "Half-width for a given delta");
    add_population(sub, o, false);
    sub->add_option("--samples", o.samples, "Samples drawn n")->required();
    sub->add_option("--observed", o.observed, "Positives observed i")->required();
    sub->add_option("--delta", o.delta, "Miscoverage delta in (0, 1)")->required();
    sub->add_flag("--compare", o.compare, "Also print the plain Hoeffding interval");
    subs.push_back({sub, cmd_ci});
  }
  {
    auto* sub = app.add_subcommand("confidence", "Delta for a given half-width");
    add_population(sub, o, false);
    sub->add_option("--samples", o.samples, "Samples drawn n")->required();
    sub->add_option("--observed", o.observed, "Positives observed i")->required();
    add_halfwidth(sub, o);
    sub->add_flag("--compare", o.compare, "Also print the plain Hoeffding delta");
    subs.push_back({sub, cmd_confidence});
  }
  {
    auto* sub = app.add_subcommand("samplesize", "Samples needed for (delta, c)");
    add_population(sub, o, false);
    sub->add_option("--delta", o.delta, "Miscoverage delta in (0, 1)")->required();
    add_halfwidth(sub, o);
    subs.push_back({sub, cmd_samplesize});
  }
  {
    auto* sub = app.add_subcommand("simulate", "Monte Carlo draws");
    add_population(sub, o, true);
    sub->add_option("--samples", o.samples, "Samples drawn n")->required();
    sub->add_option("--trials", o.trials, "Number of trials")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "Master seed");
    sub->add_option("--threads", o.threads, "Worker threads, 0 = all cores");
    sub->add_option("--delta", o.deltas, "Deltas for coverage (comma list)")
        ->delimiter(',');
    sub->add_option("--fraction", o.fractions,
                    "Deviations t for tail exceedance (comma list)")
        ->delimiter(',');
    subs.push_back({sub, cmd_simulate});
  }
  for (auto& s : subs) add_common(s.app, settings);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  for (const auto& s : subs) {
    if (!s.app->parsed()) continue;
    OutputRecord record;
    record.command = s.app->get_name();
    record.inputs = echo_inputs(*s.app, settings);
    Emitter emitter(record, settings.digits);
    try {
      s.handler(o, emitter);
    } catch (const DomainError& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    } catch (const UnsupportedBoundError& e) {
      err << "error: unsupported bound: " << e.what() << "\n";
      return kExitUsage;
    }
    out << render(record, *parse_format(settings.format));
    return kExitOk;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace hypertail::cli
