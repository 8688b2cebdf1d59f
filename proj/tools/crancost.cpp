#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "crancost/cost_model.hpp"
#include "crancost/decoder_complexity.hpp"
#include "crancost/deployment_sim.hpp"
#include "crancost/dimensioning.hpp"
#include "crancost/errors.hpp"
#include "crancost/parallel.hpp"
#include "crancost/scenario_config.hpp"
#include "crancost/sweep.hpp"

using namespace crancost;

namespace {

// Exit codes: 0 ok, 1 comparison outside tolerance, 2 usage, 3.. error categories.
int exit_code(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::kParameter: return 3;
    case ErrorCategory::kAssignment: return 4;
    case ErrorCategory::kNumerical: return 5;
    case ErrorCategory::kDomain: return 6;
    case ErrorCategory::kConfig: return 7;
    case ErrorCategory::kEstimation: return 8;
    case ErrorCategory::kIo: return 9;
  }
  return 10;
}

using Cell = std::variant<std::string, double>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

void write_table(const Table& t, OutputFormat format, const std::string& path, const nlohmann::ordered_json& meta) {
  std::ostringstream os;
  if (format == OutputFormat::kCsv) {
    for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
    os << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        os << (i ? "," : "");
        if (const auto* s = std::get_if<std::string>(&row[i])) os << *s;
        else os << format_g6(std::get<double>(row[i]));
      }
      os << '\n';
    }
  } else {
    nlohmann::ordered_json doc;
    doc["metadata"] = meta;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
      nlohmann::ordered_json r;
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (const auto* s = std::get_if<std::string>(&row[i])) {
          r[t.header[i]] = *s;
        } else {
          const double v = std::get<double>(row[i]);
          r[t.header[i]] = std::isfinite(v) ? nlohmann::ordered_json(std::stod(format_g6(v))) : nullptr;
        }
      }
      rows.push_back(r);
    }
    doc["rows"] = rows;
    os << doc.dump(2) << '\n';
  }
  if (path.empty() || path == "-") {
    std::cout << os.str();
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open output file '" + path + "'");
  out << os.str();
  if (!out) throw IoError("write failed for '" + path + "'");
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParameterError("bad number '" + item + "' in list");
    }
  }
  return v;
}

struct Common {
  std::string config;
  std::string preset = "paper-default";
  std::string out;
  std::string format = "csv";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> reps;
  std::optional<unsigned> threads;
  std::string architecture;

  ScenarioConfig load() const {
    ScenarioConfig c = preset_config(preset);
    if (!config.empty()) c = load_config(config, c);
    if (seed) c.seed = *seed;
    if (reps) {
      if (*reps < 2) throw ParameterError("--reps must be >= 2");
      c.reps = *reps;
    }
    if (!architecture.empty()) c.architecture = ArchitectureSpec::parse(architecture);
    return c;
  }
  unsigned thread_count() const { return threads ? std::max(1u, *threads) : default_thread_count(); }
  OutputFormat fmt() const { return parse_format(format); }
};

nlohmann::ordered_json metadata(const ScenarioConfig& c) {
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config_hash(c)));
  return {{"tool_version", kToolVersion},
          {"scenario_hash", hash},
          {"seeds", {{"simulation", c.seed}, {"complexity", c.complexity_seed}}}};
}

int cmd_evaluate(const Common& o) {
  const ScenarioConfig c = o.load();
  const Scenario s = resolve(c);
  const CostBreakdown b = total_cost(s, c.quad);
  Table t{{"term", "value"}, {}};
  const auto terms = cost_terms(b);
  for (std::size_t k = 0; k < kCostTermCount; ++k) t.rows.push_back({std::string(kCostTermNames[k]), terms[k]});
  t.rows.push_back({std::string("c_phi3"), b.c_phi3});
  t.rows.push_back({std::string("dc_equipment"), b.dc_equipment});
  t.rows.push_back({std::string("total_per_km2"), b.total_per_km2});
  t.rows.push_back({std::string("equipment_per_km2"), b.equipment_per_km2()});
  t.rows.push_back({std::string("capacity_per_km2"), b.capacity_per_km2()});
  t.rows.push_back({std::string("infrastructure_per_km2"), b.infrastructure_per_km2()});
  t.rows.push_back({std::string("processing_per_km2"), b.processing_per_km2()});
  t.rows.push_back({std::string("lambda1"), s.bs_intensity()});
  t.rows.push_back({std::string("a23_processing"), s.links.processing_base});
  auto meta = metadata(c);
  meta["architecture"] = c.architecture.label();
  write_table(t, o.fmt(), o.out, meta);
  return 0;
}

int cmd_sweep(const Common& o, const std::string& axis, const std::string& values, const std::string& archs) {
  ScenarioConfig c = o.load();
  if (!axis.empty()) c.sweep.axis = parse_axis(axis);
  if (!values.empty()) c.sweep.values = parse_list(values);
  if (!archs.empty()) {
    c.sweep.architectures.clear();
    std::stringstream ss(archs);
    std::string item;
    while (std::getline(ss, item, ',')) c.sweep.architectures.push_back(ArchitectureSpec::parse(item));
  }
  const SweepResult r = run_sweep(c.sweep, c, o.thread_count());
  emit(r, o.fmt(), o.out);
  int failed = 0;
  for (const auto& row : r.rows) failed += row.error.empty() ? 0 : 1;
  if (failed) std::cerr << "warning: " << failed << " sweep row(s) failed; see the error column\n";
  return 0;
}

SimulationOptions sim_options(const ScenarioConfig& c, unsigned threads) {
  SimulationOptions opt = c.simulation;
  opt.threads = threads;
  return opt;
}

int cmd_simulate(const Common& o, const std::string& dump) {
  const ScenarioConfig c = o.load();
  const Scenario s = resolve(c);
  const SimulationOptions opt = sim_options(c, o.thread_count());
  if (!dump.empty()) {
    const auto r = simulate_realization(s, opt, derive_seed(c.seed, stream::kReplication, 0));
    std::ofstream out(dump);
    if (!out) throw IoError("cannot open dump file '" + dump + "'");
    write_realization_csv(out, r);
  }
  const CostEstimate e = estimate_mean_dc_cost(s, opt, c.reps, c.seed);
  Table t{{"term", "mean", "std_error"}, {}};
  for (std::size_t k = 0; k < kCostTermCount; ++k) {
    t.rows.push_back({std::string(kCostTermNames[k]), e.per_term_means[k], e.per_term_std_errors[k]});
  }
  t.rows.push_back({std::string("c_phi3"), e.mean, e.std_error});
  auto meta = metadata(c);
  meta["architecture"] = c.architecture.label();
  meta["reps"] = e.n_reps;
  meta["discarded"] = e.n_discarded;
  meta["mean_dc_count"] = e.mean_dc_count;
  write_table(t, o.fmt(), o.out, meta);
  if (e.n_discarded) std::cerr << "note: " << e.n_discarded << " realization(s) discarded (empty layer)\n";
  return 0;
}

int cmd_compare(const Common& o) {
  const ScenarioConfig c = o.load();
  const Scenario s = resolve(c);
  const ComparisonReport rep = compare_to_closed_form(s, sim_options(c, o.thread_count()), c.reps, c.seed, c.quad);
  Table t{{"term", "closed_form", "empirical", "std_error", "z", "pass"}, {}};
  const auto closed = cost_terms(rep.closed_form);
  for (std::size_t k = 0; k < kCostTermCount; ++k) {
    t.rows.push_back({std::string(kCostTermNames[k]), closed[k], rep.estimate.per_term_means[k],
                      rep.estimate.per_term_std_errors[k], rep.z_scores[k],
                      std::string(std::abs(rep.z_scores[k]) <= rep.threshold ? "yes" : "no")});
  }
  t.rows.push_back({std::string("c_phi3"), rep.closed_form.c_phi3, rep.estimate.mean, rep.estimate.std_error,
                    rep.z_total, std::string(std::abs(rep.z_total) <= rep.threshold ? "yes" : "no")});
  auto meta = metadata(c);
  meta["architecture"] = c.architecture.label();
  meta["reps"] = rep.estimate.n_reps;
  meta["discard_rate"] = rep.estimate.discard_rate();
  meta["pass"] = rep.pass;
  meta["note"] = rep.note;
  write_table(t, o.fmt(), o.out, meta);
  std::cerr << (rep.pass ? "PASS" : "FAIL") << ": all |z| <= " << rep.threshold << " (" << rep.note << ")\n";
  return rep.pass ? 0 : 1;
}

int cmd_complexity(const Common& o, const std::string& pools) {
  const ScenarioConfig c = o.load();
  std::vector<unsigned> sizes = default_pool_sizes();
  if (!pools.empty()) {
    sizes.clear();
    for (double v : parse_list(pools)) {
      if (!(v >= 1.0) || v != std::floor(v)) throw ParameterError("pool sizes must be positive integers");
      sizes.push_back(static_cast<unsigned>(v));
    }
  }
  DecoderParams params = c.decoder;
  params.gamma_offset_db = c.architecture.gamma_offset_db;
  const McsTable mcs = snr_thresholds(c.mcs_rates, params);
  const SnrDistribution snr = SnrDistribution::parse(c.snr);
  const unsigned threads = o.thread_count();
  Table t{{"n_cloud", "d_outage", "d_outage_per_bs", "dran_equivalent", "servers_cloud", "servers_dran",
           "servers_cloud_with_downlink"},
          {}};
  const double single = outage_demand(1, snr, mcs, params, c.complexity_samples, c.complexity_seed, threads);
  for (unsigned n : sizes) {
    const double d = outage_demand(n, snr, mcs, params, c.complexity_samples, c.complexity_seed, threads);
    const double dran = n * single;
    t.rows.push_back({static_cast<double>(n), d, d / n, dran, servers_required(d, c.frame).d_unit,
                      servers_required(dran, c.frame).d_unit,
                      servers_required(d * params.downlink_uplift, c.frame).d_unit});
  }
  auto meta = metadata(c);
  meta["gamma_offset_db"] = params.gamma_offset_db;
  meta["snr"] = snr.to_string();
  meta["samples"] = c.complexity_samples;
  write_table(t, o.fmt(), o.out, meta);
  return 0;
}

int cmd_dimension(const Common& o, std::optional<double> demand) {
  const ScenarioConfig c = o.load();
  Table t{{"gamma_offset_db", "delta_rate", "target", "lambda1", "lambda1c", "rate_check"}, {}};
  for (double off : {0.0, 0.4, 0.9}) {
    const double target = spectral_efficiency_target(off);
    const double l1 = invert_for_bs_intensity(target, c.lambda0, c.radio);
    t.rows.push_back({off, rate_offset(off), target, l1, l1 / (1.0 + c.lambda1m), spatial_avg_rate(c.lambda0, l1, c.radio)});
  }
  const PowerBudget pb = power_params(c.radio.n_subcarriers, c.radio.bandwidth_hz);
  auto meta = metadata(c);
  meta["lambda0"] = c.lambda0;
  meta["p_tx_dbm_used"] = c.radio.p_tx_dbm;
  meta["noise_dbm_used"] = c.radio.noise_dbm;
  meta["p_tx_dbm_formula"] = pb.formula_p_tx_dbm;
  meta["noise_dbm_formula"] = pb.formula_noise_dbm;
  if (demand) meta["target_from_demand"] = spectral_efficiency_from_demand(*demand, c.radio);
  write_table(t, o.fmt(), o.out, meta);
  std::cerr << "note: transmit power " << c.radio.p_tx_dbm << " dBm used (printed formula gives "
            << pb.formula_p_tx_dbm << " dBm); noise " << c.radio.noise_dbm << " dBm used (formula gives "
            << pb.formula_noise_dbm << " dBm)\n";
  if (demand) {
    std::cerr << "note: demand " << *demand << " bps maps to " << spectral_efficiency_from_demand(*demand, c.radio)
              << " bps/Hz by demand/(B(1-overhead)); the targets above use " << kBaseSpectralEfficiency << "\n";
  }
  return 0;
}

void add_common(CLI::App* app, Common& o, bool simulation) {
  app->add_option("--config", o.config, "Scenario INI file")->check(CLI::ExistingFile);
  app->add_option("--preset", o.preset, "Base preset (paper-default)");
  app->add_option("--out", o.out, "Output path (default stdout)");
  app->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--threads", o.threads, "Worker threads (default CRANCOST_THREADS or 1)");
  app->add_option("--architecture", o.architecture, "DRAN or CloudRAN@<offset>dB");
  if (simulation) {
    app->add_option("--seed", o.seed, "Master seed");
    app->add_option("--reps", o.reps, "Replications");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cloud-RAN vs DRAN deployment-cost engine"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  Common o;
  auto* evaluate = app.add_subcommand("evaluate", "Closed-form cost breakdown of one scenario");
  add_common(evaluate, o, false);

  std::string axis, values, archs;
  auto* sweep = app.add_subcommand("sweep", "Total cost over one parameter axis");
  add_common(sweep, o, false);
  sweep->add_option("--axis", axis, "lambda3, alpha, lambda0, p or sigma2");
  sweep->add_option("--values", values, "Comma-separated ascending values");
  sweep->add_option("--architectures", archs, "Comma-separated, e.g. DRAN,CloudRAN@0dB");

  std::string dump;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo per-data-center cost");
  add_common(simulate, o, true);
  simulate->add_option("--dump", dump, "Write the first realization as CSV");

  auto* compare = app.add_subcommand("compare", "Closed form vs Monte Carlo, z-score per term");
  add_common(compare, o, true);

  std::string pools;
  auto* complexity = app.add_subcommand("complexity", "Pooled vs distributed decoding demand");
  add_common(complexity, o, false);
  complexity->add_option("--pool-sizes", pools, "Comma-separated pool sizes");

  std::optional<double> demand;
  auto* dimension = app.add_subcommand("dimension", "Base-station intensity from the rate target");
  add_common(dimension, o, false);
  dimension->add_option("--demand", demand, "Per-user demand in bit/s for the conversion helper");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*evaluate) return cmd_evaluate(o);
    if (*sweep) return cmd_sweep(o, axis, values, archs);
    if (*simulate) return cmd_simulate(o, dump);
    if (*compare) return cmd_compare(o);
    if (*complexity) return cmd_complexity(o, pools);
    if (*dimension) return cmd_dimension(o, demand);
  } catch (const Error& e) {
    std::cerr << "error[" << category_name(e.category()) << "]: " << e.what() << '\n';
    return exit_code(e.category());
  } catch (const std::exception& e) {
    std::cerr << "error[internal]: " << e.what() << '\n';
    return 10;
  }
  return 2;
}
