#pragma once

// INI-style scenario files. Sections: [scenario], [geometry], [costs],
// [complexity], [radio], [analysis], [sweep], [simulation]; keys follow the
// model notation (lambda0, lambda1c, gamma_offset_db, ...). Every key is
// optional and defaults to the paper-default preset.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crancost/cost_model.hpp"
#include "crancost/decoder_complexity.hpp"
#include "crancost/deployment_sim.hpp"
#include "crancost/dimensioning.hpp"
#include "crancost/palm_analytics.hpp"

namespace crancost {

enum class SweepAxis { kLambda3, kAlpha, kLambda0, kP, kSigma2 };

/// One curve of a sweep: DRAN, or Cloud-RAN at a link-adaptation offset.
struct ArchitectureSpec {
  Architecture architecture = Architecture::kCloudRan;
  double gamma_offset_db = 0.0;

  std::string label() const;
  static ArchitectureSpec parse(const std::string& label);
  bool operator==(const ArchitectureSpec&) const = default;
};

struct SweepSpec {
  SweepAxis axis = SweepAxis::kLambda3;
  std::vector<double> values{0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0, 5.5, 6.0};
  std::vector<ArchitectureSpec> architectures{{Architecture::kDran, 0.0},
                                              {Architecture::kCloudRan, 0.0},
                                              {Architecture::kCloudRan, 0.4},
                                              {Architecture::kCloudRan, 0.9}};
  void validate() const;
};

std::string axis_name(SweepAxis axis);
SweepAxis parse_axis(const std::string& name);

struct ScenarioConfig {
  // [scenario]
  ArchitectureSpec architecture{};

  // [geometry]
  double lambda0 = 170.0;
  std::optional<double> lambda1c;  // unset: derived from the rate target by dimensioning
  double lambda1m = 4.0;
  double sigma2 = 0.5;
  double p = 0.5;
  double lambda2_mw = 5.0;
  double lambda2_of = 5.0;
  double lambda3 = 3.0;

  // [costs]
  EquipmentCosts equipment{};
  LinkCostParams links{};
  std::optional<double> processing_base;  // A''; unset: from the processing line
  BackhaulCostMode c2_mode = BackhaulCostMode::kLiteral;

  // [complexity]
  DecoderParams decoder{};
  FrameConstants frame{};
  std::string snr = "rayleigh:10";
  std::vector<double> mcs_rates = default_mcs_rates();
  unsigned complexity_samples = 4000;
  std::uint64_t complexity_seed = 20160501;
  std::optional<double> processing_slope;
  std::optional<double> processing_intercept;
  std::optional<double> dran_pooling_ratio;

  // [radio]
  RadioParams radio{};

  // [analysis]
  UserDistanceModel user_distance = UserDistanceModel::kEmptySpace;
  JForm j_form = JForm::kParentAware;
  QuadratureSettings quad{};

  // [sweep]
  SweepSpec sweep{};

  // [simulation]
  SimulationOptions simulation{};
  std::size_t reps = 2000;
  std::uint64_t seed = 1;

  void validate() const;
};

/// The built-in "paper-default" preset.
ScenarioConfig paper_default_config();

/// Throws ConfigError for an unknown preset name.
ScenarioConfig preset_config(const std::string& name);

/// Reads an INI file on top of `base`. Unknown sections or keys, parse
/// failures and range violations raise ConfigError naming the key.
ScenarioConfig load_config(const std::string& path, const ScenarioConfig& base = paper_default_config());
ScenarioConfig parse_config(const std::string& text, const ScenarioConfig& base = paper_default_config());

/// Writes every key; loading the output reproduces `config`.
void write_config(const ScenarioConfig& config, const std::string& path);
std::string format_config(const ScenarioConfig& config);

/// Per-base-station pooled and distributed processing lines.
struct ProcessingLine {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Pooled line for the configured offset (override or preset).
ProcessingLine cloud_processing_line(const ScenarioConfig& config, double gamma_offset_db);
/// Distributed line: pooled slope times the pooling ratio, no intercept.
ProcessingLine dran_processing_line(const ScenarioConfig& config);
/// Configured override, or outage_demand(1) / fitted pooled slope at 0 dB offset.
double pooling_ratio(const ScenarioConfig& config);

/// Fully resolved Scenario for `arch`: lambda1 from dimensioning unless
/// lambda1c is given, A'' from the matching processing line.
Scenario resolve(const ScenarioConfig& config, const ArchitectureSpec& arch);
Scenario resolve(const ScenarioConfig& config);

Scenario load_scenario(const std::string& path, const std::string& preset = "paper-default");

/// 64-bit FNV-1a of the canonical config text.
std::uint64_t config_hash(const ScenarioConfig& config);

}  // namespace crancost
