#include "trialalloc/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "trialalloc/allocation.hpp"
#include "trialalloc/errors.hpp"
#include "trialalloc/spec_json.hpp"

namespace trialalloc {

using nlohmann::json;

namespace {

ArmScales ni_scales(const DesignSpec& spec) {
  const DesignSpec valid = validate(spec);
  if (valid.trial_kind != TrialKind::noninferiority_two_arm) {
    throw ValidationError("trial_kind", "efficiency curves need a two-arm non-inferiority design");
  }
  return arm_scales(valid, allocation_point(valid));
}

double ratio_variance(const ArmScales& s, double r) {
  return (1.0 + r) * (s.control * s.control + s.treatment * s.treatment / r);
}

std::string fixed(double x, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  return buf;
}

std::string sig6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

double efficiency_at_ratio(const DesignSpec& spec, double ratio) {
  if (!(std::isfinite(ratio) && ratio > 0.0)) throw ValidationError("ratio", "ratio must be positive");
  const ArmScales s = ni_scales(spec);
  const double best = s.treatment / s.control;
  return ratio_variance(s, ratio) / ratio_variance(s, best);
}

EfficiencyCurve efficiency_curve(const DesignSpec& spec, double r_min, double r_max, int points) {
  if (!(std::isfinite(r_min) && r_min > 0.0)) throw ValidationError("r_min", "r_min must be positive");
  if (!(std::isfinite(r_max) && r_max > r_min)) throw ValidationError("r_max", "r_max must exceed r_min");
  if (points < 2) throw ValidationError("points", "a curve needs at least 2 points");

  const ArmScales s = ni_scales(spec);
  const double best = s.treatment / s.control;
  const double v_best = ratio_variance(s, best);

  EfficiencyCurve curve;
  curve.spec = spec;
  curve.optimal_ratio = allocate(spec).ratio_treatment_to_control;
  curve.points.reserve(static_cast<std::size_t>(points));
  const double log_lo = std::log(r_min);
  const double span = std::log(r_max) - log_lo;
  for (int i = 0; i < points; ++i) {
    const double r = i + 1 == points ? r_max : std::exp(log_lo + span * i / (points - 1));
    curve.points.push_back({r, ratio_variance(s, r) / v_best});
  }
  return curve;
}

std::vector<double> linear_grid(double lo, double hi, int points) {
  if (points < 2) throw ValidationError("points", "a grid needs at least 2 points");
  if (!(std::isfinite(lo) && std::isfinite(hi) && hi > lo)) throw ValidationError("range", "invalid range");
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) out[i] = i + 1 == points ? hi : lo + (hi - lo) * i / (points - 1);
  return out;
}

std::vector<DeltaCurvePoint> are_vs_delta_curve(MarginKind kind, double sigma_c, double sigma_t,
                                                std::span<const double> deltas) {
  if (deltas.empty()) throw ValidationError("deltas", "margin grid is empty");
  std::vector<DeltaCurvePoint> out;
  out.reserve(deltas.size());
  for (double d : deltas) out.push_back({d, ni_are(Margin{kind, d}, sigma_c, sigma_t)});
  return out;
}

json to_json(const AllocationPlan& plan) {
  return json{{"control_fraction", plan.control_fraction},
              {"ratio_treatment_to_control", plan.ratio_treatment_to_control},
              {"are_vs_balanced", plan.are_vs_balanced},
              {"fractions", plan.fractions}};
}

json to_json(const SampleSizeResult& r) {
  return json{{"n_control", r.n_control},         {"n_treatment", r.n_treatment},
              {"n_total", r.n_total},             {"h_used", r.h_used},
              {"nominal_power", r.nominal_power}, {"margin", to_json(r.margin)},
              {"are_vs_balanced", r.are_vs_balanced}, {"n_exact", r.n_exact}};
}

json to_json(const SurvivalDesign& d) {
  return json{{"delta0", d.delta0}, {"alpha", d.rates.alpha}, {"power", d.rates.power},
              {"p", d.p},           {"d_events", d.d_events}, {"method", to_string(d.method)}};
}

json to_json(const SimulationReport& r) {
  return json{{"estimate", r.estimate},
              {"replications", r.replications},
              {"seed", r.seed},
              {"standard_error", r.standard_error},
              {"rejections", r.rejections}};
}

json to_json(const EfficiencyCurve& curve) {
  json points = json::array();
  for (const auto& p : curve.points) {
    points.push_back(json{{"ratio", p.ratio}, {"relative_efficiency", p.relative_efficiency}});
  }
  return json{{"optimal_ratio", curve.optimal_ratio}, {"points", std::move(points)}, {"spec", to_json(curve.spec)}};
}

json to_json(std::span<const DeltaCurvePoint> curve) {
  json points = json::array();
  for (const auto& p : curve) points.push_back(json{{"delta", p.delta}, {"are", p.are}});
  return json{{"points", std::move(points)}};
}

std::string curve_csv(const EfficiencyCurve& curve) {
  std::string out = "ratio,relative_efficiency\n";
  for (const auto& p : curve.points) out += sig6(p.ratio) + ',' + sig6(p.relative_efficiency) + '\n';
  return out;
}

std::string delta_curve_csv(std::span<const DeltaCurvePoint> curve) {
  std::string out = "delta,are\n";
  for (const auto& p : curve) out += sig6(p.delta) + ',' + sig6(p.are) + '\n';
  return out;
}

std::vector<CurvePoint> parse_curve_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != "ratio,relative_efficiency") {
    throw ValidationError("csv.header", "expected header \"ratio,relative_efficiency\"");
  }
  std::vector<CurvePoint> out;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ValidationError("csv.row" + std::to_string(row), "missing comma");
    try {
      std::size_t used = 0;
      const double r = std::stod(line.substr(0, comma), &used);
      const std::string rest = line.substr(comma + 1);
      std::size_t used2 = 0;
      const double e = std::stod(rest, &used2);
      if (used != comma || used2 != rest.size()) throw std::invalid_argument("trailing characters");
      out.push_back({r, e});
    } catch (const std::exception&) {
      throw ValidationError("csv.row" + std::to_string(row), "malformed number");
    }
  }
  return out;
}

std::string curve_table(const EfficiencyCurve& curve) {
  std::ostringstream out;
  out << "optimal ratio " << fixed(curve.optimal_ratio, 2) << ":1\n";
  out << "ratio (k:1)  relative efficiency\n";
  for (const auto& p : curve.points) {
    out << fixed(p.ratio, 2) << "         " << fixed(p.relative_efficiency, 2) << '\n';
  }
  return out.str();
}

std::string delta_curve_table(std::span<const DeltaCurvePoint> curve) {
  std::ostringstream out;
  out << "delta    ARE\n";
  for (const auto& p : curve) out << fixed(p.delta, 4) << "  " << fixed(p.are, 2) << '\n';
  return out.str();
}

std::string allocation_table(const AllocationPlan& plan) {
  std::ostringstream out;
  out << "control fraction      " << fixed(plan.control_fraction, 4) << '\n';
  out << "ratio treatment:ctrl  " << fixed(plan.ratio_treatment_to_control, 2) << ":1\n";
  out << "ARE vs balanced       " << fixed(plan.are_vs_balanced, 2) << '\n';
  if (plan.fractions.size() > 2) {
    for (std::size_t i = 0; i < plan.fractions.size(); ++i) {
      out << "arm " << i + 1 << " fraction        " << fixed(plan.fractions[i], 4) << '\n';
    }
  }
  return out.str();
}

std::string sample_size_table(const SampleSizeResult& r) {
  std::ostringstream out;
  out << "control arm      " << r.n_control << '\n';
  out << "treatment arm    " << r.n_treatment << '\n';
  out << "total            " << r.n_total << '\n';
  out << "control fraction " << fixed(r.h_used, 4) << '\n';
  out << "ARE vs balanced  " << fixed(r.are_vs_balanced, 2) << '\n';
  return out.str();
}

std::string survival_table(const SurvivalDesign& d) {
  std::ostringstream out;
  out << "method           " << to_string(d.method) << '\n';
  out << "control fraction " << fixed(d.p, 4) << '\n';
  out << "events required  " << d.d_events << '\n';
  return out.str();
}

std::string simulation_table(const SimulationReport& r) {
  std::ostringstream out;
  out << "rejection rate   " << fixed(r.estimate, 4) << '\n';
  out << "standard error   " << fixed(r.standard_error, 4) << '\n';
  out << "replications     " << r.replications << '\n';
  out << "seed             " << r.seed << '\n';
  return out.str();
}

}  // namespace trialalloc
