#include "crancost/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>

#include "json.hpp"

#include "crancost/errors.hpp"
#include "crancost/parallel.hpp"

namespace crancost {

namespace {

using nlohmann::ordered_json;

// JSON numbers rounded to six significant digits; NaN becomes null.
ordered_json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::stod(format_g6(v));
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

std::string format_g6(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "json") return OutputFormat::kJson;
  throw ParameterError("unknown output format '" + name + "'; expected csv or json");
}

ScenarioConfig apply_axis(ScenarioConfig c, SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::kLambda3: c.lambda3 = value; break;
    case SweepAxis::kAlpha: c.equipment.alpha = value; break;
    case SweepAxis::kLambda0: c.lambda0 = value; break;
    case SweepAxis::kP: c.p = value; break;
    case SweepAxis::kSigma2: c.sigma2 = value; break;
  }
  return c;
}

SweepResult run_sweep(const SweepSpec& spec, const ScenarioConfig& base, unsigned threads) {
  spec.validate();
  SweepResult result;
  result.metadata.scenario_hash = config_hash(base);
  result.metadata.seed = base.seed;
  result.metadata.complexity_seed = base.complexity_seed;
  const std::size_t n_arch = spec.architectures.size();
  result.rows.resize(spec.values.size() * n_arch);
  // Resolve the pooling ratio once up front so workers only read the cache.
  bool needs_ratio = false;
  for (const auto& a : spec.architectures) needs_ratio |= a.architecture == Architecture::kDran;
  if (needs_ratio && !base.processing_base) {
    try {
      (void)pooling_ratio(base);
    } catch (const Error&) {
      // reported per row below
    }
  }
  parallel_for(result.rows.size(), threads, [&](std::size_t i) {
    SweepRow& row = result.rows[i];
    row.axis = spec.axis;
    row.value = spec.values[i / n_arch];
    row.architecture = spec.architectures[i % n_arch];
    try {
      const ScenarioConfig c = apply_axis(base, spec.axis, row.value);
      row.breakdown = total_cost(resolve(c, row.architecture), c.quad);
    } catch (const Error& e) {
      row.error = std::string(category_name(e.category())) + ": " + e.what();
    } catch (const std::exception& e) {
      row.error = std::string("internal: ") + e.what();
    }
  });
  return result;
}

void emit_csv(const SweepResult& result, std::ostream& os) {
  os << kCsvHeader << '\n';
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const SweepRow& r : result.rows) {
    const CostBreakdown* b = r.breakdown ? &*r.breakdown : nullptr;
    os << axis_name(r.axis) << ',' << format_g6(r.value) << ',' << r.architecture.label() << ','
       << format_g6(r.architecture.gamma_offset_db) << ',' << format_g6(b ? b->total_per_km2 : nan) << ','
       << format_g6(b ? b->equipment_per_km2() : nan) << ',' << format_g6(b ? b->capacity_per_km2() : nan) << ','
       << format_g6(b ? b->infrastructure_per_km2() : nan) << ',' << format_g6(b ? b->processing_per_km2() : nan)
       << '\n';
  }
}

void emit_json(const SweepResult& result, std::ostream& os) {
  ordered_json doc;
  doc["metadata"] = {{"tool_version", result.metadata.tool_version},
                     {"scenario_hash", hex64(result.metadata.scenario_hash)},
                     {"seeds", {{"simulation", result.metadata.seed}, {"complexity", result.metadata.complexity_seed}}}};
  ordered_json rows = ordered_json::array();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const SweepRow& r : result.rows) {
    const CostBreakdown* b = r.breakdown ? &*r.breakdown : nullptr;
    ordered_json row;
    row["axis"] = axis_name(r.axis);
    row["value"] = json_number(r.value);
    row["architecture"] = r.architecture.label();
    row["gamma_offset_db"] = json_number(r.architecture.gamma_offset_db);
    row["total_per_km2"] = json_number(b ? b->total_per_km2 : nan);
    row["equipment"] = json_number(b ? b->equipment_per_km2() : nan);
    row["capacity"] = json_number(b ? b->capacity_per_km2() : nan);
    row["infrastructure"] = json_number(b ? b->infrastructure_per_km2() : nan);
    row["processing"] = json_number(b ? b->processing_per_km2() : nan);
    if (b) {
      ordered_json terms;
      const auto t = cost_terms(*b);
      for (std::size_t k = 0; k < kCostTermCount; ++k) terms[std::string(kCostTermNames[k])] = json_number(t[k]);
      terms["c_phi3"] = json_number(b->c_phi3);
      terms["dc_equipment"] = json_number(b->dc_equipment);
      row["per_dc_terms"] = terms;
    }
    row["error"] = r.error.empty() ? ordered_json(nullptr) : ordered_json(r.error);
    rows.push_back(row);
  }
  doc["rows"] = rows;
  os << doc.dump(2) << '\n';
}

void emit(const SweepResult& result, OutputFormat format, const std::string& path) {
  auto write = [&](std::ostream& os) {
    if (format == OutputFormat::kCsv) emit_csv(result, os);
    else emit_json(result, os);
  };
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open output file '" + path + "'");
  write(out);
  out.flush();
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace crancost
