#pragma once

// Parameter sweeps over one scenario axis for several architectures, and
// their CSV / JSON serialization.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "crancost/cost_model.hpp"
#include "crancost/scenario_config.hpp"

namespace crancost {

inline constexpr const char* kToolVersion = "crancost 1.0.0";

struct SweepRow {
  SweepAxis axis = SweepAxis::kLambda3;
  double value = 0.0;
  ArchitectureSpec architecture;
  std::optional<CostBreakdown> breakdown;  // empty when the row failed
  std::string error;
};

struct SweepMetadata {
  std::uint64_t scenario_hash = 0;
  std::uint64_t seed = 0;
  std::uint64_t complexity_seed = 0;
  std::string tool_version = kToolVersion;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // value-major, architectures in spec order
  SweepMetadata metadata;
};

enum class OutputFormat { kCsv, kJson };
OutputFormat parse_format(const std::string& name);

/// Returns `config` with the axis quantity set to `value`.
ScenarioConfig apply_axis(ScenarioConfig config, SweepAxis axis, double value);

/// One total_cost evaluation per (value, architecture). Row failures are
/// recorded in the row and the sweep continues.
SweepResult run_sweep(const SweepSpec& spec, const ScenarioConfig& base, unsigned threads = 1);

inline constexpr const char* kCsvHeader =
    "axis,value,architecture,gamma_offset_db,total_per_km2,equipment,capacity,infrastructure,processing";

void emit_csv(const SweepResult& result, std::ostream& os);
void emit_json(const SweepResult& result, std::ostream& os);
/// Writes to `path`, or to stdout when `path` is empty or "-".
void emit(const SweepResult& result, OutputFormat format, const std::string& path);

/// printf("%.6g").
std::string format_g6(double v);

}  // namespace crancost
