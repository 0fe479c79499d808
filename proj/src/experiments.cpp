#include "cast/experiments.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "cast/analysis.hpp"
#include "cast/engine.hpp"
#include "cast/io.hpp"
#include "cast/sweep.hpp"

namespace cast {

namespace {

using Echo = std::vector<std::pair<std::string, std::string>>;

std::ofstream open_output(const std::filesystem::path& dir,
                          const std::string& name) {
  std::filesystem::create_directories(dir);
  std::ofstream os(dir / name, std::ios::binary);
  if (!os)
    throw std::runtime_error("cannot write '" + (dir / name).string() + "'");
  return os;
}

struct CoolingChoice {
  bool is_cast = false;
  Schedule schedule;
  std::string text;  // as written in the config
};

CoolingChoice parse_cooling(const std::string& text, double t_bar) {
  CoolingChoice choice;
  choice.text = text;
  if (text == "cast") {
    choice.is_cast = true;
    return choice;
  }
  choice.schedule.t0 = t_bar;
  if (text == "log") {
    choice.schedule.kind = Schedule::Kind::Logarithmic;
  } else if (text == "fixed") {
    choice.schedule.kind = Schedule::Kind::Fixed;
  } else if (text.starts_with("geometric:")) {
    choice.schedule.kind = Schedule::Kind::Geometric;
    const std::string alpha = text.substr(10);
    try {
      choice.schedule.alpha = std::stod(alpha);
    } catch (const std::exception&) {
      throw ConfigError("", "bad geometric alpha '" + alpha + "'");
    }
  } else {
    throw ConfigError("", "unknown cooling '" + text +
                              "' (expected cast|log|geometric:<alpha>|fixed)");
  }
  choice.schedule.validate();
  return choice;
}

CastParams read_cast_params(KeyReader& reader, double t_bar, bool noise_gated) {
  CastParams params;
  params.lambda = reader.get_double("lambda", params.lambda);
  params.mu = reader.get_double("mu", params.mu);
  params.kappa = reader.get_double("kappa", params.kappa);
  params.gamma = reader.get_double("gamma", params.gamma);
  params.t_var = reader.get_double("t_var", params.t_var);
  params.t_bar = t_bar;
  params.noise_gated = noise_gated;
  return params;
}

void echo_cast_params(Echo& echo, const CastParams& params) {
  echo.emplace_back("lambda", format_double(params.lambda));
  echo.emplace_back("mu", format_double(params.mu));
  echo.emplace_back("kappa", format_double(params.kappa));
  echo.emplace_back("gamma", format_double(params.gamma));
  echo.emplace_back("t_var", format_double(params.t_var));
  echo.emplace_back("noise_gated", params.noise_gated ? "true" : "false");
}

nlohmann::ordered_json echo_to_json(const Echo& echo) {
  nlohmann::ordered_json j;
  for (const auto& [key, value] : echo) j[key] = value;
  return j;
}

AxisSpec parse_axis(const std::string& text, const std::string& key) {
  auto parse_value = [&](const std::string& piece) {
    try {
      std::size_t used = 0;
      const double v = std::stod(piece, &used);
      if (used != piece.size()) throw std::invalid_argument(piece);
      return v;
    } catch (const std::exception&) {
      throw ConfigError("", "axis '" + key + "': bad number '" + piece + "'");
    }
  };
  if (text.starts_with("lin:") || text.starts_with("log:")) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ':')) parts.push_back(piece);
    if (parts.size() != 4)
      throw ConfigError("", "axis '" + key + "': expected " + parts[0] +
                                ":<a>:<b>:<count>");
    const double a = parse_value(parts[1]);
    const double b = parse_value(parts[2]);
    const int count = static_cast<int>(parse_value(parts[3]));
    return parts[0] == "lin" ? AxisSpec::lin(a, b, count)
                             : AxisSpec::log(a, b, count);
  }
  if (text.find(',') != std::string::npos) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ',')) values.push_back(parse_value(piece));
    return AxisSpec::list(std::move(values));
  }
  return AxisSpec::fixed(parse_value(text));
}

std::string axis_to_string(const AxisSpec& axis) {
  switch (axis.spacing) {
    case AxisSpec::Spacing::Fixed:
      return format_double(axis.a);
    case AxisSpec::Spacing::Lin:
      return "lin:" + format_double(axis.a) + ":" + format_double(axis.b) +
             ":" + std::to_string(axis.count);
    case AxisSpec::Spacing::Log:
      return "log:" + format_double(axis.a) + ":" + format_double(axis.b) +
             ":" + std::to_string(axis.count);
    case AxisSpec::Spacing::List: {
      std::string out;
      for (std::size_t i = 0; i < axis.values.size(); ++i) {
        if (i) out += ',';
        out += format_double(axis.values[i]);
      }
      return out;
    }
  }
  return {};
}

void progress_line(const CliOptions& options, const std::string& what,
                   std::size_t done, std::size_t total) {
  if (!options.progress) return;
  std::cerr << '\r' << what << ' ' << done << '/' << total << std::flush;
  if (done == total) std::cerr << '\n';
}

}  // namespace

ConfigDoc apply_overrides(ConfigDoc doc,
                          const std::vector<std::string>& overrides) {
  for (const std::string& text : overrides) {
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw ConfigError("", "--set expects key=value, got '" + text + "'");
    std::string key = text.substr(0, eq);
    const std::string value = text.substr(eq + 1);

    std::vector<ConfigDoc::Entry>* scope = &doc.top;
    if (const auto dot = key.find('.'); dot != std::string::npos) {
      const std::string section = key.substr(0, dot);
      key = key.substr(dot + 1);
      scope = nullptr;
      for (auto& s : doc.sections)
        if (s.name == section) scope = &s.entries;
      if (!scope)
        throw ConfigError("", "--set: no section '" + section + "' in config");
    }
    bool replaced = false;
    for (auto& entry : *scope) {
      if (entry.key == key) {
        entry.value = value;
        replaced = true;
      }
    }
    if (!replaced) scope->push_back({key, value, 0});
  }
  return doc;
}

// ---------------------------------------------------------------------------
// run
// ---------------------------------------------------------------------------

void cmd_run(const ConfigDoc& doc, const CliOptions& options) {
  if (!doc.sections.empty())
    throw ConfigError(doc.filename, "run config takes no sections");
  KeyReader reader(doc, doc.top);

  const std::string objective_name = reader.get_string("objective");
  const int dim = static_cast<int>(reader.get_long("d"));
  const int n_particles = static_cast<int>(reader.get_long("n"));
  const long n_steps = reader.get_long("steps");
  std::uint64_t seed = reader.get_u64("seed", 0);
  if (options.seed_override) seed = *options.seed_override;
  const std::string proposal_text = reader.get_string("proposal", "cauchy");
  const double t_bar = reader.get_double("t_bar", 0.05);
  const std::string cooling_text = reader.get_string("cooling", "cast");
  const bool noise_gated = reader.get_bool("noise_gated", false);
  const int stride = static_cast<int>(reader.get_long("stride", 1));
  const int hist_bins = static_cast<int>(reader.get_long("hist_bins", 50));
  const double shrink = reader.get_double("shrink", 0.5);

  RunConfig config;
  config.objective = make_objective(objective_name, dim);
  config.n_particles = n_particles;
  config.n_steps = n_steps;
  config.proposal = proposal_from_string(proposal_text);
  config.record.stride = stride;
  config.record.hist_bins = hist_bins;
  config.basin_shrink = shrink;

  const CoolingChoice cooling = parse_cooling(cooling_text, t_bar);
  Echo echo;
  echo.emplace_back("command", "run");
  echo.emplace_back("objective", objective_name);
  echo.emplace_back("d", std::to_string(dim));
  echo.emplace_back("n", std::to_string(n_particles));
  echo.emplace_back("steps", std::to_string(n_steps));
  echo.emplace_back("proposal", proposal_text);
  echo.emplace_back("cooling", cooling_text);
  echo.emplace_back("t_bar", format_double(t_bar));
  if (cooling.is_cast) {
    const CastParams params = read_cast_params(reader, t_bar, noise_gated);
    config.mode = params;
    echo_cast_params(echo, params);
  } else {
    config.mode = cooling.schedule;
  }
  echo.emplace_back("stride", std::to_string(stride));
  echo.emplace_back("hist_bins", std::to_string(hist_bins));
  echo.emplace_back("shrink", format_double(shrink));
  reader.reject_unknown();
  config.validate();

  RngStream stream = derive_stream(seed, "run", 0);
  const RunTrace trace = run(config, stream);
  const RunSummary summary = summarize(trace, config.objective, shrink);

  {
    auto os = open_output(options.out_dir, "trace.csv");
    write_artifact_header(os, echo, seed);
    os << "step,best_mse,avg_mse,m1,m2,var,geo_mean,best_T\n";
    for (const auto& rec : trace.records) {
      os << rec.step << ',' << format_double(rec.best_mse) << ','
         << format_double(rec.avg_mse) << ',' << format_double(rec.m1) << ','
         << format_double(rec.m2) << ',' << format_double(rec.temp_variance)
         << ',' << format_double(rec.geo_mean_temp) << ','
         << format_double(rec.best_temperature) << '\n';
    }
  }
  {
    auto os = open_output(options.out_dir, "histogram.csv");
    write_artifact_header(os, echo, seed);
    os << "step,bin_low,bin_high,count\n";
    const double range = 2.0 * config.t_bar();
    for (const auto& rec : trace.records) {
      for (std::size_t b = 0; b < rec.histogram.size(); ++b) {
        os << rec.step << ','
           << format_double(range * static_cast<double>(b) / hist_bins) << ','
           << format_double(range * static_cast<double>(b + 1) / hist_bins)
           << ',' << rec.histogram[b] << '\n';
      }
    }
  }
  {
    nlohmann::ordered_json j;
    j["version"] = kToolVersion;
    j["seed"] = seed;
    j["config"] = echo_to_json(echo);
    j["success"] = summary.success;
    if (summary.steps_to_basin)
      j["steps_to_basin"] = *summary.steps_to_basin;
    else
      j["steps_to_basin"] = nullptr;
    j["final_best_mse"] = summary.final_best_mse;
    if (std::isnan(summary.final_avg_mse))
      j["final_avg_mse"] = nullptr;
    else
      j["final_avg_mse"] = summary.final_avg_mse;
    j["trace_file"] = "trace.csv";
    j["histogram_file"] = "histogram.csv";
    auto os = open_output(options.out_dir, "summary.json");
    os << j.dump(2) << '\n';
  }
}

// ---------------------------------------------------------------------------
// compare
// ---------------------------------------------------------------------------

namespace {

struct Arm {
  std::string name;
  RunConfig config;
  bool is_cast = false;
  std::vector<RunTrace> traces;
};

}  // namespace

void cmd_compare(const ConfigDoc& doc, const CliOptions& options) {
  KeyReader reader(doc, doc.top);
  const std::string objective_name = reader.get_string("objective");
  const int dim = static_cast<int>(reader.get_long("d"));
  const int n_particles = static_cast<int>(reader.get_long("n"));
  const long n_steps = reader.get_long("steps");
  const int repeats = static_cast<int>(reader.get_long("repeats", 20));
  std::uint64_t seed = reader.get_u64("seed", 0);
  if (options.seed_override) seed = *options.seed_override;
  const std::string proposal_text = reader.get_string("proposal", "cauchy");
  const double t_bar = reader.get_double("t_bar", 0.05);
  const int stride = static_cast<int>(reader.get_long("stride", 1));
  reader.reject_unknown();

  if (doc.sections.size() < 2)
    throw ConfigError(doc.filename, "compare needs at least 2 [arm] sections");
  if (repeats < 1) throw ConfigError(doc.filename, "repeats must be >= 1");

  Echo echo;
  echo.emplace_back("command", "compare");
  echo.emplace_back("objective", objective_name);
  echo.emplace_back("d", std::to_string(dim));
  echo.emplace_back("n", std::to_string(n_particles));
  echo.emplace_back("steps", std::to_string(n_steps));
  echo.emplace_back("repeats", std::to_string(repeats));
  echo.emplace_back("proposal", proposal_text);
  echo.emplace_back("t_bar", format_double(t_bar));
  echo.emplace_back("stride", std::to_string(stride));

  std::vector<Arm> arms;
  for (const auto& section : doc.sections) {
    KeyReader arm_reader(doc, section.entries);
    Arm arm;
    arm.name = section.name;
    arm.config.objective = make_objective(objective_name, dim);
    arm.config.n_particles = n_particles;
    arm.config.n_steps = n_steps;
    arm.config.proposal = proposal_from_string(proposal_text);
    arm.config.record.stride = stride;
    arm.config.record.hist_bins = 0;

    const std::string cooling_text = arm_reader.get_string("cooling");
    const CoolingChoice cooling = parse_cooling(cooling_text, t_bar);
    arm.is_cast = cooling.is_cast;
    echo.emplace_back("arm." + arm.name + ".cooling", cooling_text);
    if (cooling.is_cast) {
      const bool noise_gated = arm_reader.get_bool("noise_gated", false);
      const CastParams params = read_cast_params(arm_reader, t_bar, noise_gated);
      arm.config.mode = params;
      Echo arm_echo;
      echo_cast_params(arm_echo, params);
      for (auto& [key, value] : arm_echo)
        echo.emplace_back("arm." + arm.name + "." + key, value);
    } else {
      arm.config.mode = cooling.schedule;
    }
    arm_reader.reject_unknown();
    arm.config.validate();
    arms.push_back(std::move(arm));
  }

  for (std::size_t a = 0; a < arms.size(); ++a) {
    arms[a].traces = run_batch(arms[a].config, repeats, seed, options.jobs);
    progress_line(options, "compare: arms", a + 1, arms.size());
  }

  const std::size_t n_records = arms.front().traces.front().records.size();
  for (const auto& arm : arms)
    for (const auto& trace : arm.traces)
      if (trace.records.size() != n_records)
        throw std::runtime_error("mismatched record counts across arms");

  std::vector<std::vector<double>> best_curves, avg_curves;
  for (auto& arm : arms) {
    best_curves.push_back(expected_log_mse(arm.traces, CurveKind::Best));
    avg_curves.push_back(expected_log_mse(arm.traces, CurveKind::Average));
  }

  auto ensemble_mean = [&](const Arm& arm, double StepRecord::* field) {
    std::vector<double> curve(n_records, 0.0);
    for (const auto& trace : arm.traces)
      for (std::size_t k = 0; k < n_records; ++k)
        curve[k] += trace.records[k].*field;
    for (double& v : curve) v /= static_cast<double>(arm.traces.size());
    return curve;
  };

  auto os = open_output(options.out_dir, "compare.csv");
  write_artifact_header(os, echo, seed);
  os << "step";
  for (const auto& arm : arms) os << ',' << arm.name << "_best_logmse";
  for (const auto& arm : arms) os << ',' << arm.name << "_avg_logmse";
  std::vector<std::vector<std::vector<double>>> temp_columns;
  for (const auto& arm : arms) {
    std::vector<std::vector<double>> cols;
    if (arm.is_cast) {
      os << ',' << arm.name << "_m1" << ',' << arm.name << "_geo_mean" << ','
         << arm.name << "_best_T";
      cols.push_back(ensemble_mean(arm, &StepRecord::m1));
      cols.push_back(ensemble_mean(arm, &StepRecord::geo_mean_temp));
      cols.push_back(ensemble_mean(arm, &StepRecord::best_temperature));
    } else {
      os << ',' << arm.name << "_T";
      cols.push_back(ensemble_mean(arm, &StepRecord::m1));
    }
    temp_columns.push_back(std::move(cols));
  }
  os << '\n';
  for (std::size_t k = 0; k < n_records; ++k) {
    os << arms.front().traces.front().records[k].step;
    for (const auto& curve : best_curves) os << ',' << format_double(curve[k]);
    for (const auto& curve : avg_curves) os << ',' << format_double(curve[k]);
    for (const auto& cols : temp_columns)
      for (const auto& col : cols) os << ',' << format_double(col[k]);
    os << '\n';
  }
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

void cmd_sweep(const ConfigDoc& doc, const CliOptions& options) {
  if (!doc.sections.empty())
    throw ConfigError(doc.filename, "sweep plan takes no sections");
  KeyReader reader(doc, doc.top);

  SweepPlan plan;
  plan.objective = reader.get_string("objective");
  plan.dim = static_cast<int>(reader.get_long("d"));
  plan.n_particles = static_cast<int>(reader.get_long("n"));
  plan.max_steps = reader.get_long("max_steps");
  plan.runs_per_cell = static_cast<int>(reader.get_long("runs_per_cell", 20));
  plan.master_seed = reader.get_u64("seed", 0);
  if (options.seed_override) plan.master_seed = *options.seed_override;
  plan.t_bar = reader.get_double("t_bar", 0.05);
  plan.proposal = proposal_from_string(reader.get_string("proposal", "cauchy"));
  plan.noise_gated = reader.get_bool("noise_gated", false);
  plan.shrink = reader.get_double("shrink", 0.5);
  plan.mu = parse_axis(reader.get_string("mu"), "mu");
  plan.lambda = parse_axis(reader.get_string("lambda"), "lambda");
  plan.kappa = parse_axis(reader.get_string("kappa"), "kappa");
  plan.gamma = parse_axis(reader.get_string("gamma"), "gamma");
  plan.t_var = parse_axis(reader.get_string("t_var"), "t_var");
  reader.reject_unknown();
  plan.validate();

  Echo echo;
  echo.emplace_back("command", "sweep");
  echo.emplace_back("objective", plan.objective);
  echo.emplace_back("d", std::to_string(plan.dim));
  echo.emplace_back("n", std::to_string(plan.n_particles));
  echo.emplace_back("max_steps", std::to_string(plan.max_steps));
  echo.emplace_back("runs_per_cell", std::to_string(plan.runs_per_cell));
  echo.emplace_back("proposal", std::string(to_string(plan.proposal)));
  echo.emplace_back("t_bar", format_double(plan.t_bar));
  echo.emplace_back("shrink", format_double(plan.shrink));
  echo.emplace_back("noise_gated", plan.noise_gated ? "true" : "false");
  echo.emplace_back("mu", axis_to_string(plan.mu));
  echo.emplace_back("lambda", axis_to_string(plan.lambda));
  echo.emplace_back("kappa", axis_to_string(plan.kappa));
  echo.emplace_back("gamma", axis_to_string(plan.gamma));
  echo.emplace_back("t_var", axis_to_string(plan.t_var));

  const auto cells = run_sweep(plan, options.jobs,
                               [&](std::size_t done, std::size_t total) {
                                 progress_line(options, "sweep: cells", done,
                                               total);
                               });

  auto opt_field = [](const std::optional<double>& v) {
    return v ? format_double(*v) : std::string{};
  };

  {
    auto os = open_output(options.out_dir, "cells.csv");
    write_artifact_header(os, echo, plan.master_seed);
    os << "mu,lambda,kappa,gamma,t_var,valid,runs,success_rate,mean_steps,"
          "normalized_weighted_steps\n";
    for (const auto& cell : cells) {
      os << format_double(cell.mu) << ',' << format_double(cell.lambda) << ','
         << format_double(cell.kappa) << ',' << format_double(cell.gamma)
         << ',' << format_double(cell.t_var) << ','
         << (cell.valid ? "true" : "false") << ',' << cell.runs << ',';
      if (cell.valid) os << format_double(cell.success_rate);
      os << ',' << opt_field(cell.mean_steps) << ','
         << opt_field(cell.normalized_weighted_steps) << '\n';
    }
  }
  {
    nlohmann::ordered_json j;
    j["version"] = kToolVersion;
    j["seed"] = plan.master_seed;
    j["config"] = echo_to_json(echo);
    auto& rows = j["cells"];
    rows = nlohmann::ordered_json::array();
    for (const auto& cell : cells) {
      nlohmann::ordered_json row;
      row["mu"] = cell.mu;
      row["lambda"] = cell.lambda;
      row["kappa"] = cell.kappa;
      row["gamma"] = cell.gamma;
      row["t_var"] = cell.t_var;
      row["valid"] = cell.valid;
      row["runs"] = cell.runs;
      if (cell.valid)
        row["success_rate"] = cell.success_rate;
      else
        row["success_rate"] = nullptr;
      row["mean_steps"] =
          cell.mean_steps ? nlohmann::ordered_json(*cell.mean_steps) : nullptr;
      row["normalized_weighted_steps"] =
          cell.normalized_weighted_steps
              ? nlohmann::ordered_json(*cell.normalized_weighted_steps)
              : nullptr;
      rows.push_back(std::move(row));
    }
    auto os = open_output(options.out_dir, "cells.json");
    os << j.dump(2) << '\n';
  }
  for (const std::string axis : {"t_var", "kappa", "gamma"}) {
    auto os = open_output(options.out_dir, "marginal_" + axis + ".csv");
    write_artifact_header(os, echo, plan.master_seed);
    os << axis << ",normalized_weighted_steps\n";
    for (const auto& [value, mean] : marginalize(cells, axis))
      os << format_double(value) << ',' << format_double(mean) << '\n';
  }
  {
    // (mu, lambda) heatmap: mean over the generalization axes per pair.
    auto os = open_output(options.out_dir, "heatmap.csv");
    write_artifact_header(os, echo, plan.master_seed);
    os << "mu,lambda,success_rate,mean_steps\n";
    std::vector<std::pair<double, double>> seen;
    for (const auto& cell : cells) {
      const std::pair<double, double> key{cell.mu, cell.lambda};
      bool found = false;
      for (const auto& s : seen) found |= s == key;
      if (found) continue;
      seen.push_back(key);
      double rate_sum = 0.0;
      long rate_count = 0;
      double step_sum = 0.0;
      long step_count = 0;
      for (const auto& c : cells) {
        if (c.mu != key.first || c.lambda != key.second || !c.valid) continue;
        rate_sum += c.success_rate;
        ++rate_count;
        if (c.mean_steps) {
          step_sum += *c.mean_steps;
          ++step_count;
        }
      }
      os << format_double(key.first) << ',' << format_double(key.second) << ',';
      if (rate_count > 0)
        os << format_double(rate_sum / static_cast<double>(rate_count));
      os << ',';
      if (step_count > 0)
        os << format_double(step_sum / static_cast<double>(step_count));
      os << '\n';
    }
  }
}

// ---------------------------------------------------------------------------
// decay-study
// ---------------------------------------------------------------------------

void cmd_decay_study(const ConfigDoc& doc, const CliOptions& options) {
  if (!doc.sections.empty())
    throw ConfigError(doc.filename, "decay-study config takes no sections");
  KeyReader reader(doc, doc.top);

  const std::string objective_name = reader.get_string("objective", "ackley");
  const int dim = static_cast<int>(reader.get_long("d", 1));
  const int n_particles = static_cast<int>(reader.get_long("n"));
  const long n_steps = reader.get_long("steps");
  const int repeats = static_cast<int>(reader.get_long("repeats", 20));
  std::uint64_t seed = reader.get_u64("seed", 0);
  if (options.seed_override) seed = *options.seed_override;
  const std::string proposal_text = reader.get_string("proposal", "cauchy");
  const double t_bar = reader.get_double("t_bar", 0.05);
  const bool noise_gated = reader.get_bool("noise_gated", false);
  const int hist_bins = static_cast<int>(reader.get_long("hist_bins", 50));
  const double ref_alpha = reader.get_double("ref_alpha", 0.999);
  const CastParams params = read_cast_params(reader, t_bar, noise_gated);
  reader.reject_unknown();
  if (repeats < 1) throw ConfigError(doc.filename, "repeats must be >= 1");

  RunConfig config;
  config.objective = make_objective(objective_name, dim);
  config.n_particles = n_particles;
  config.n_steps = n_steps;
  config.proposal = proposal_from_string(proposal_text);
  config.mode = params;
  config.record.stride = 1;
  config.record.hist_bins = hist_bins;
  config.validate();

  Echo echo;
  echo.emplace_back("command", "decay-study");
  echo.emplace_back("objective", objective_name);
  echo.emplace_back("d", std::to_string(dim));
  echo.emplace_back("n", std::to_string(n_particles));
  echo.emplace_back("steps", std::to_string(n_steps));
  echo.emplace_back("repeats", std::to_string(repeats));
  echo.emplace_back("proposal", proposal_text);
  echo.emplace_back("t_bar", format_double(t_bar));
  echo_cast_params(echo, params);
  echo.emplace_back("hist_bins", std::to_string(hist_bins));
  echo.emplace_back("ref_alpha", format_double(ref_alpha));

  const auto traces = run_batch(config, repeats, seed, options.jobs);

  // Rows for t = 0 (initial state) through t = n_steps.
  const std::size_t rows = static_cast<std::size_t>(n_steps) + 1;
  auto mean_of = [&](double StepRecord::* field) {
    std::vector<double> curve(rows, 0.0);
    for (const auto& trace : traces) {
      curve[0] += trace.initial.*field;
      for (std::size_t k = 0; k < trace.records.size(); ++k)
        curve[k + 1] += trace.records[k].*field;
    }
    for (double& v : curve) v /= static_cast<double>(traces.size());
    return curve;
  };
  const auto m1 = mean_of(&StepRecord::m1);
  const auto m2 = mean_of(&StepRecord::m2);
  const auto var = mean_of(&StepRecord::temp_variance);
  const auto geo = mean_of(&StepRecord::geo_mean_temp);

  {
    auto os = open_output(options.out_dir, "decay.csv");
    write_artifact_header(os, echo, seed);
    os << "step,m1,m2,var,geo_mean,ref_log,ref_geo\n";
    for (std::size_t t = 0; t < rows; ++t) {
      const double td = static_cast<double>(t);
      os << t << ',' << format_double(m1[t]) << ',' << format_double(m2[t])
         << ',' << format_double(var[t]) << ',' << format_double(geo[t]) << ','
         << format_double(t_bar / std::log(td + std::numbers::e)) << ','
         << format_double(t_bar * std::pow(ref_alpha, td)) << '\n';
    }
  }
  {
    auto os = open_output(options.out_dir, "decay_histogram.csv");
    write_artifact_header(os, echo, seed);
    os << "step,bin_low,bin_high,mean_count\n";
    if (hist_bins > 0) {
      const double range = 2.0 * t_bar;
      for (std::size_t t = 0; t < rows; ++t) {
        for (int b = 0; b < hist_bins; ++b) {
          double count = 0.0;
          for (const auto& trace : traces) {
            const auto& rec =
                t == 0 ? trace.initial : trace.records[t - 1];
            count += rec.histogram[static_cast<std::size_t>(b)];
          }
          count /= static_cast<double>(traces.size());
          os << t << ','
             << format_double(range * static_cast<double>(b) / hist_bins)
             << ','
             << format_double(range * static_cast<double>(b + 1) / hist_bins)
             << ',' << format_double(count) << '\n';
        }
      }
    }
  }
}

}  // namespace cast
