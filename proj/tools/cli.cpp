#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "trialalloc/allocation.hpp"
#include "trialalloc/errors.hpp"
#include "trialalloc/grid.hpp"
#include "trialalloc/report.hpp"
#include "trialalloc/sample_size.hpp"
#include "trialalloc/simulate.hpp"
#include "trialalloc/spec_json.hpp"
#include "trialalloc/survival.hpp"

namespace trialalloc::cli {

using nlohmann::json;

namespace {

enum class Format { json, csv, table };

struct SpecFlags {
  std::string spec_file;
  std::string dist = "normal";
  std::string margin_type = "additive";
  std::optional<double> margin;
  double alpha = 0.025;
  double power = 0.9;
  std::string direction = "higher_favorable";
  std::string variance_at;
  double control_mean = 0.0;
  double control_sd = 1.0;
  std::optional<double> treatment_mean;
  std::optional<double> treatment_sd;
  std::optional<double> control_pi;
  std::optional<double> treatment_pi;
  std::optional<double> control_rate;
  std::optional<double> treatment_rate;
  std::optional<int> arms;
  std::vector<double> sigmas;
};

struct Options {
  SpecFlags spec;
  std::string format = "json";
  std::uint64_t seed = 1;

  std::optional<double> h;
  std::optional<double> ratio;
  double inflation = 1.0;

  std::optional<double> delta0;
  std::string method = "jung";
  std::optional<double> event_p;
  std::optional<double> event_probability;

  double r_min = 0.2;
  double r_max = 4.0;
  int points = 200;
  bool vs_delta = false;
  std::optional<double> delta_min;
  std::optional<double> delta_max;
  std::optional<double> sigma_c;
  std::optional<double> sigma_t;

  std::optional<std::int64_t> n_control;
  std::optional<std::int64_t> n_treatment;
  std::string truth = "alternative";
  std::uint64_t reps = 10000;
  int threads = 0;
  double grid_step = 1e-4;
};

Format parse_format(const std::string& text) {
  if (text == "json") return Format::json;
  if (text == "csv") return Format::csv;
  if (text == "table") return Format::table;
  throw ValidationError("format", "unknown format \"" + text + "\"");
}

json read_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("spec", "cannot open spec file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_json_text(buffer.str());
}

DesignSpec build_spec(const SpecFlags& f, bool spec_flags_given) {
  if (!f.spec_file.empty()) {
    if (spec_flags_given) throw ValidationError("spec", "use either --spec or design parameter flags, not both");
    return validate(design_spec_from_json(read_spec_file(f.spec_file)));
  }

  DesignSpec spec;
  spec.rates = {f.alpha, f.power};
  spec.direction = parse_direction(f.direction, "direction");
  if (!f.variance_at.empty()) spec.variance_eval_point = parse_parameter_point(f.variance_at, "variance_eval_point");

  if (f.arms || !f.sigmas.empty()) {
    spec.trial_kind = TrialKind::superiority_multiarm;
    if (!f.sigmas.empty()) {
      if (f.sigmas.size() < 2) throw ValidationError("sigmas", "at least two arms are required");
      spec.control = OutcomeFamily::normal(0.0, f.sigmas[0]);
      for (std::size_t i = 1; i < f.sigmas.size(); ++i) spec.treatment.push_back(OutcomeFamily::normal(0.0, f.sigmas[i]));
    } else {
      if (*f.arms < 2) throw ValidationError("arms", "at least two arms are required");
      spec.control = OutcomeFamily::normal(0.0, 1.0);
      spec.treatment.assign(static_cast<std::size_t>(*f.arms - 1), OutcomeFamily::normal(0.0, 1.0));
    }
    return validate(spec);
  }

  spec.trial_kind = TrialKind::noninferiority_two_arm;
  switch (parse_family(f.dist, "dist")) {
    case Family::normal:
      spec.control = OutcomeFamily::normal(f.control_mean, f.control_sd);
      spec.treatment = {OutcomeFamily::normal(f.treatment_mean.value_or(f.control_mean),
                                              f.treatment_sd.value_or(f.control_sd))};
      break;
    case Family::binomial:
      if (!f.control_pi) throw ValidationError("control.pi", "--control-pi is required for binomial designs");
      spec.control = OutcomeFamily::binomial(*f.control_pi);
      spec.treatment = {OutcomeFamily::binomial(f.treatment_pi.value_or(*f.control_pi))};
      break;
    case Family::poisson:
      if (!f.control_rate) throw ValidationError("control.lambda", "--control-rate is required for poisson designs");
      spec.control = OutcomeFamily::poisson(*f.control_rate);
      spec.treatment = {OutcomeFamily::poisson(f.treatment_rate.value_or(*f.control_rate))};
      break;
  }
  if (!f.margin) throw ValidationError("margin.value", "--margin is required for non-inferiority designs");
  spec.margin = Margin{parse_margin_kind(f.margin_type, "margin.kind"), *f.margin};
  return validate(spec);
}

void emit(std::ostream& out, Format format, const json& j, const std::string& table) {
  if (format == Format::table) {
    out << table;
    return;
  }
  if (format == Format::csv) {
    out << "field,value\n";
    for (const auto& [key, value] : j.items()) {
      if (value.is_primitive()) out << key << ',' << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
    }
    return;
  }
  out << j.dump(2) << '\n';
}

double choose_h(const Options& o) {
  if (o.h && o.ratio) throw ValidationError("h", "give either --control-fraction or --ratio");
  if (o.ratio) {
    if (!(*o.ratio > 0.0)) throw ValidationError("ratio", "ratio must be positive");
    return 1.0 / (1.0 + *o.ratio);
  }
  return *o.h;
}

int cmd_allocate(const Options& o, bool flags, std::ostream& out) {
  const AllocationPlan plan = allocate(build_spec(o.spec, flags));
  emit(out, parse_format(o.format), to_json(plan), allocation_table(plan));
  return kExitOk;
}

int cmd_sample_size(const Options& o, bool flags, std::ostream& out) {
  const DesignSpec spec = build_spec(o.spec, flags);
  std::optional<double> h;
  if (o.h || o.ratio) h = choose_h(o);
  if (!(o.inflation >= 1.0)) throw ValidationError("inflation", "inflation factor must be at least 1");

  SampleSizeResult r = sample_size_ni(spec, h);
  json j = to_json(r);
  j["achieved_power"] = achieved_power(spec, r.n_control, r.n_treatment);
  if (o.inflation > 1.0) {
    const auto nc = static_cast<std::int64_t>(std::ceil(static_cast<double>(r.n_control) * o.inflation));
    const auto nt = static_cast<std::int64_t>(std::ceil(static_cast<double>(r.n_treatment) * o.inflation));
    j["inflation"] = o.inflation;
    j["n_control_inflated"] = nc;
    j["n_treatment_inflated"] = nt;
    j["n_total_inflated"] = nc + nt;
  }
  emit(out, parse_format(o.format), j, sample_size_table(r));
  return kExitOk;
}

int cmd_events(const Options& o, std::ostream& out) {
  if (!o.delta0) throw ValidationError("delta0", "--delta0 is required");
  EventMethod method = EventMethod::jung;
  if (o.method == "chow") {
    method = EventMethod::chow;
  } else if (o.method != "jung") {
    throw ValidationError("method", "unknown method \"" + o.method + "\"");
  }
  const ErrorRates rates{o.spec.alpha, o.spec.power};
  validate_rates(rates);
  const SurvivalDesign d = design_events(*o.delta0, rates, method, o.event_p);
  json j = to_json(d);
  std::string table = survival_table(d);
  if (o.event_probability) {
    const double pe = *o.event_probability;
    if (!(pe > 0.0 && pe <= 1.0)) throw ValidationError("event_probability", "event probability must lie in (0,1]");
    const auto patients = static_cast<std::int64_t>(std::ceil(static_cast<double>(d.d_events) / pe));
    j["event_probability"] = pe;
    j["patients_required"] = patients;
    table += "patients         " + std::to_string(patients) + '\n';
  }
  emit(out, parse_format(o.format), j, table);
  return kExitOk;
}

int cmd_curve(const Options& o, bool flags, std::ostream& out) {
  const Format format = parse_format(o.format);
  if (o.vs_delta) {
    if (!o.sigma_c || !o.sigma_t) throw ValidationError("sigma_c", "--sigma-c and --sigma-t are required with --vs-delta");
    const MarginKind kind = parse_margin_kind(o.spec.margin_type, "margin.kind");
    const double lo = o.delta_min.value_or(kind == MarginKind::additive ? 0.01 : 1.0);
    const double hi = o.delta_max.value_or(kind == MarginKind::additive ? 0.5 : 2.0);
    const auto deltas = linear_grid(lo, hi, o.points);
    const auto curve = are_vs_delta_curve(kind, *o.sigma_c, *o.sigma_t, deltas);
    if (format == Format::csv) {
      out << delta_curve_csv(curve);
    } else if (format == Format::table) {
      out << delta_curve_table(curve);
    } else {
      out << to_json(std::span<const DeltaCurvePoint>(curve)).dump(2) << '\n';
    }
    return kExitOk;
  }
  const EfficiencyCurve curve = efficiency_curve(build_spec(o.spec, flags), o.r_min, o.r_max, o.points);
  if (format == Format::csv) {
    out << curve_csv(curve);
  } else if (format == Format::table) {
    out << curve_table(curve);
  } else {
    out << to_json(curve).dump(2) << '\n';
  }
  return kExitOk;
}

std::pair<std::int64_t, std::int64_t> arm_sizes(const Options& o, const DesignSpec& spec) {
  if (o.n_control && o.n_treatment) return {*o.n_control, *o.n_treatment};
  if (o.n_control || o.n_treatment) throw ValidationError("n_control", "give both --n-control and --n-treatment");
  const SampleSizeResult r = sample_size_ni(spec);
  return {r.n_control, r.n_treatment};
}

int cmd_simulate(const Options& o, bool flags, std::ostream& out) {
  const DesignSpec spec = build_spec(o.spec, flags);
  const auto [nc, nt] = arm_sizes(o, spec);
  const ParameterPoint truth = parse_parameter_point(o.truth, "truth");
  const SimulationReport r = simulate_rejection_rate(spec, nc, nt, truth, o.reps, o.seed,
                                                     SimulationOptions{Execution::parallel, o.threads});
  json j = to_json(r);
  j["n_control"] = nc;
  j["n_treatment"] = nt;
  j["truth"] = to_string(truth);
  emit(out, parse_format(o.format), j, simulation_table(r));
  return kExitOk;
}

// Closed forms against the grid oracle (and, for NI designs, simulated power
// and type-I at the computed sample size).
int cmd_verify(const Options& o, bool flags, std::ostream& out) {
  json checks = json::array();
  bool all_pass = true;
  auto record = [&](std::string name, double expected, double observed, double tolerance) {
    const bool pass = std::fabs(expected - observed) <= tolerance;
    all_pass = all_pass && pass;
    checks.push_back(json{{"check", std::move(name)}, {"expected", expected}, {"observed", observed},
                          {"tolerance", tolerance}, {"pass", pass}});
  };
  const GridSpec grid = GridSpec::unit(o.grid_step);

  if (o.delta0) {
    const ErrorRates rates{o.spec.alpha, o.spec.power};
    const double p = optimal_event_fraction(*o.delta0, rates);
    const GridSpec fine = GridSpec::unit(std::min(o.grid_step, 1e-5));
    if (*o.delta0 > 1.0) {
      record("jung_event_fraction", p, grid_minimize_fraction(JungEventsObjective{*o.delta0, rates}, fine).argmin,
             2.0 * fine.step);
      record("chow_event_fraction", 0.5, grid_minimize_fraction(ChowEventsObjective{*o.delta0, rates}, fine).argmin,
             2.0 * fine.step);
    } else {
      record("jung_event_fraction", 0.5, p, 0.0);
    }
  } else {
    const DesignSpec spec = build_spec(o.spec, flags);
    const AllocationPlan plan = allocate(spec);
    if (spec.trial_kind == TrialKind::superiority_multiarm) {
      SimplexVarianceObjective objective;
      objective.sigmas.push_back(stddev(spec.control));
      for (const auto& arm : spec.treatment) objective.sigmas.push_back(stddev(arm));
      const auto oracle = grid_minimize_simplex(objective, grid);
      for (std::size_t i = 0; i < oracle.size(); ++i) {
        record("fraction_arm_" + std::to_string(i + 1), plan.fractions[i], oracle[i], 2.0 * grid.step);
      }
    } else {
      const double h = grid_minimize_fraction(TwoArmVarianceObjective::from_spec(spec), grid).argmin;
      record("control_fraction", plan.control_fraction, h, 2.0 * grid.step);

      const SampleSizeResult n = sample_size_ni(spec);
      const SimulationReport power = simulate_rejection_rate(spec, n.n_control, n.n_treatment,
                                                             ParameterPoint::alternative, o.reps, o.seed,
                                                             SimulationOptions{Execution::parallel, o.threads});
      const SimulationReport type1 = simulate_rejection_rate(spec, n.n_control, n.n_treatment,
                                                             ParameterPoint::null_boundary, o.reps, o.seed + 1,
                                                             SimulationOptions{Execution::parallel, o.threads});
      record("simulated_power", spec.rates.power, power.estimate, 3.0 * power.standard_error);
      record("simulated_type_i", spec.rates.alpha, type1.estimate, 3.0 * type1.standard_error);
    }
  }

  const json result{{"checks", checks}, {"pass", all_pass}};
  const Format format = parse_format(o.format);
  if (format == Format::json) {
    out << result.dump(2) << '\n';
  } else {
    if (format == Format::csv) out << "check,expected,observed,tolerance,pass\n";
    for (const auto& c : checks) {
      const char sep = format == Format::csv ? ',' : ' ';
      out << c["check"].get<std::string>() << sep << c["expected"].dump() << sep << c["observed"].dump() << sep
          << c["tolerance"].dump() << sep << (c["pass"].get<bool>() ? "PASS" : "FAIL") << '\n';
    }
  }
  return all_pass ? kExitOk : kExitVerifyFailed;
}

void add_spec_flags(CLI::App& app, SpecFlags& f) {
  app.add_option("--spec", f.spec_file, "DesignSpec JSON file")->check(CLI::ExistingFile);
  app.add_option("--dist", f.dist, "normal | binomial | poisson")->group("Design");
  app.add_option("--margin-type", f.margin_type, "additive | multiplicative")->group("Design");
  app.add_option("--margin", f.margin, "non-inferiority margin")->group("Design");
  app.add_option("--alpha", f.alpha, "one-sided type-I error")->group("Design");
  app.add_option("--power", f.power, "target power")->group("Design");
  app.add_option("--direction", f.direction, "higher_favorable | lower_favorable")->group("Design");
  app.add_option("--variance-at", f.variance_at, "null_boundary | alternative")->group("Design");
  app.add_option("--control-mean", f.control_mean)->group("Normal");
  app.add_option("--control-sd", f.control_sd)->group("Normal");
  app.add_option("--treatment-mean", f.treatment_mean)->group("Normal");
  app.add_option("--treatment-sd", f.treatment_sd)->group("Normal");
  app.add_option("--control-pi", f.control_pi)->group("Binomial");
  app.add_option("--treatment-pi", f.treatment_pi)->group("Binomial");
  app.add_option("--control-rate", f.control_rate)->group("Poisson");
  app.add_option("--treatment-rate", f.treatment_rate)->group("Poisson");
  app.add_option("--arms", f.arms, "multi-arm superiority: arm count with common variance")->group("Multi-arm");
  app.add_option("--sigmas", f.sigmas, "multi-arm superiority: control sd then each arm's sd")
      ->delimiter(',')
      ->group("Multi-arm");
}

bool spec_flags_given(const CLI::App& app) {
  for (const char* name : {"--dist", "--margin-type", "--margin", "--direction", "--variance-at", "--control-mean",
                           "--control-sd", "--treatment-mean", "--treatment-sd", "--control-pi", "--treatment-pi",
                           "--control-rate", "--treatment-rate", "--arms", "--sigmas"}) {
    if (app.count(name) > 0) return true;
  }
  return false;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Optimal allocation, sample size and event counts for non-inferiority and multi-arm trials"};
  app.require_subcommand(1);
  app.fallthrough();
  add_spec_flags(app, o.spec);
  app.add_option("--format", o.format, "json | csv | table");
  app.add_option("--seed", o.seed, "Monte-Carlo seed");
  app.add_option("--threads", o.threads, "OpenMP threads (0 = default)");

  auto* allocate_cmd = app.add_subcommand("allocate", "optimal allocation and ARE versus balanced");

  auto* sample_cmd = app.add_subcommand("sample-size", "per-arm sample sizes for a two-arm NI design");
  sample_cmd->add_option("--control-fraction", o.h, "control fraction h (default: optimal)");
  sample_cmd->add_option("--ratio", o.ratio, "treatment:control ratio instead of --h");
  sample_cmd->add_option("--inflation", o.inflation, "multiply arm sizes by this factor (e.g. dropout)");

  auto* events_cmd = app.add_subcommand("events", "required events for a log-rank NI design");
  events_cmd->add_option("--delta0", o.delta0, "hazard-ratio margin")->required();
  events_cmd->add_option("--method", o.method, "jung | chow");
  events_cmd->add_option("--event-fraction", o.event_p, "control allocation fraction (default: optimal)");
  events_cmd->add_option("--event-probability", o.event_probability, "overall event probability to convert to patients");

  auto* curve_cmd = app.add_subcommand("curve", "relative-efficiency or ARE-versus-margin curves");
  curve_cmd->add_option("--r-min", o.r_min);
  curve_cmd->add_option("--r-max", o.r_max);
  curve_cmd->add_option("--points", o.points);
  curve_cmd->add_flag("--vs-delta", o.vs_delta, "ARE versus margin instead of efficiency versus ratio");
  curve_cmd->add_option("--delta-min", o.delta_min);
  curve_cmd->add_option("--delta-max", o.delta_max);
  curve_cmd->add_option("--sigma-c", o.sigma_c);
  curve_cmd->add_option("--sigma-t", o.sigma_t);

  auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo rejection rate of the NI test");
  sim_cmd->add_option("--n-control", o.n_control);
  sim_cmd->add_option("--n-treatment", o.n_treatment);
  sim_cmd->add_option("--truth", o.truth, "alternative | null_boundary");
  sim_cmd->add_option("--reps", o.reps);

  auto* verify_cmd = app.add_subcommand("verify", "check closed forms against the grid and Monte-Carlo oracles");
  verify_cmd->add_option("--reps", o.reps);
  verify_cmd->add_option("--grid-step", o.grid_step);
  verify_cmd->add_option("--delta0", o.delta0, "verify the survival event fraction instead");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  const bool flags = spec_flags_given(app);
  try {
    if (allocate_cmd->parsed()) return cmd_allocate(o, flags, out);
    if (sample_cmd->parsed()) return cmd_sample_size(o, flags, out);
    if (events_cmd->parsed()) return cmd_events(o, out);
    if (curve_cmd->parsed()) return cmd_curve(o, flags, out);
    if (sim_cmd->parsed()) return cmd_simulate(o, flags, out);
    if (verify_cmd->parsed()) return cmd_verify(o, flags, out);
  } catch (const ValidationError& e) {
    err << "validation error";
    if (!e.field_path().empty()) err << " [" << e.field_path() << ']';
    err << ": " << e.what() << '\n';
    return kExitValidation;
  } catch (const DomainError& e) {
    err << "computation error: " << e.what() << '\n';
    return kExitComputation;
  } catch (const std::domain_error& e) {
    err << "computation error: " << e.what() << '\n';
    return kExitComputation;
  }
  return kExitValidation;
}

}  // namespace trialalloc::cli
