#include "crancost/scenario_config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>

#include "crancost/errors.hpp"

namespace crancost {

namespace {

namespace pt = boost::property_tree;

std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

enum class Range { kAny, kPositive, kNonNegative, kOpenUnit, kClosedUnit };

double parse_double(const std::string& key, const std::string& text, Range range = Range::kAny) {
  const std::string t = trim(text);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
    throw ConfigError(key, "expected a finite number, got '" + text + "'");
  }
  switch (range) {
    case Range::kAny: break;
    case Range::kPositive:
      if (!(v > 0.0)) throw ConfigError(key, "must be > 0");
      break;
    case Range::kNonNegative:
      if (!(v >= 0.0)) throw ConfigError(key, "must be >= 0");
      break;
    case Range::kOpenUnit:
      if (!(v > 0.0 && v < 1.0)) throw ConfigError(key, "must lie in (0,1)");
      break;
    case Range::kClosedUnit:
      if (!(v >= 0.0 && v <= 1.0)) throw ConfigError(key, "must lie in [0,1]");
      break;
  }
  return v;
}

std::uint64_t parse_uint(const std::string& key, const std::string& text, std::uint64_t min_value = 0) {
  const std::string t = trim(text);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError(key, "expected a nonnegative integer, got '" + text + "'");
  }
  if (v < min_value) throw ConfigError(key, "must be >= " + std::to_string(min_value));
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw ConfigError(key, "expected true or false, got '" + text + "'");
}

std::string fmt_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
  return s;
}

struct Field {
  std::string section;
  std::string key;
  std::function<void(ScenarioConfig&, const std::string& full_key, const std::string& value)> set;
  // Empty optional: the key is not written (unset optional field).
  std::function<std::optional<std::string>(const ScenarioConfig&)> get;
};

Field number(std::string section, std::string key, double ScenarioConfig::*member, Range range) {
  return {std::move(section), std::move(key),
          [member, range](ScenarioConfig& c, const std::string& k, const std::string& v) {
            c.*member = parse_double(k, v, range);
          },
          [member](const ScenarioConfig& c) -> std::optional<std::string> { return fmt(c.*member); }};
}

template <typename Access>
Field number_at(std::string section, std::string key, Access access, Range range) {
  return {std::move(section), std::move(key),
          [access, range](ScenarioConfig& c, const std::string& k, const std::string& v) {
            access(c) = parse_double(k, v, range);
          },
          [access](const ScenarioConfig& c) -> std::optional<std::string> {
            return fmt(access(const_cast<ScenarioConfig&>(c)));
          }};
}

Field optional_number(std::string section, std::string key, std::optional<double> ScenarioConfig::*member,
                      Range range) {
  return {std::move(section), std::move(key),
          [member, range](ScenarioConfig& c, const std::string& k, const std::string& v) {
            c.*member = parse_double(k, v, range);
          },
          [member](const ScenarioConfig& c) -> std::optional<std::string> {
            if (!(c.*member)) return std::nullopt;
            return fmt(*(c.*member));
          }};
}

void add_link(std::vector<Field>& f, const std::string& suffix, LinkCost& (*access)(ScenarioConfig&),
              const std::string& a_name, const std::string& b_name) {
  auto field = [&](const std::string& key, double LinkCost::*m) {
    f.push_back(number_at("costs", key, [access, m](ScenarioConfig& c) -> double& { return access(c).*m; },
                          Range::kNonNegative));
  };
  field(a_name + suffix, &LinkCost::capacity_base);
  field("beta" + a_name.substr(1) + suffix, &LinkCost::capacity_exponent);
  field(b_name + suffix, &LinkCost::infra_base);
  field("theta" + b_name.substr(1) + suffix, &LinkCost::infra_exponent);
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    using C = ScenarioConfig;
    // [scenario]
    f.push_back({"scenario", "architecture",
                 [](C& c, const std::string& k, const std::string& v) {
                   const std::string t = trim(v);
                   if (t == "DRAN") c.architecture.architecture = Architecture::kDran;
                   else if (t == "CloudRAN") c.architecture.architecture = Architecture::kCloudRan;
                   else throw ConfigError(k, "expected DRAN or CloudRAN, got '" + v + "'");
                 },
                 [](const C& c) -> std::optional<std::string> {
                   return std::string(architecture_name(c.architecture.architecture));
                 }});
    f.push_back(number_at("scenario", "gamma_offset_db",
                          [](C& c) -> double& { return c.architecture.gamma_offset_db; }, Range::kNonNegative));

    // [geometry]
    f.push_back(number("geometry", "lambda0", &C::lambda0, Range::kPositive));
    f.push_back(optional_number("geometry", "lambda1c", &C::lambda1c, Range::kPositive));
    f.push_back(number("geometry", "lambda1m", &C::lambda1m, Range::kNonNegative));
    f.push_back(number("geometry", "sigma2", &C::sigma2, Range::kPositive));
    f.push_back(number("geometry", "p", &C::p, Range::kClosedUnit));
    f.push_back(number("geometry", "lambda2_mw", &C::lambda2_mw, Range::kPositive));
    f.push_back(number("geometry", "lambda2_of", &C::lambda2_of, Range::kPositive));
    f.push_back(number("geometry", "lambda3", &C::lambda3, Range::kPositive));

    // [costs]
    auto equip = [&](const std::string& key, double EquipmentCosts::*m, Range r) {
      f.push_back(number_at("costs", key, [m](C& c) -> double& { return c.equipment.*m; }, r));
    };
    equip("c_macro", &EquipmentCosts::c_macro, Range::kNonNegative);
    equip("c_micro", &EquipmentCosts::c_micro, Range::kNonNegative);
    equip("c_mw", &EquipmentCosts::c_mw, Range::kNonNegative);
    equip("c_of", &EquipmentCosts::c_of, Range::kNonNegative);
    equip("c3", &EquipmentCosts::c_dc, Range::kNonNegative);
    equip("alpha", &EquipmentCosts::alpha, Range::kClosedUnit);
    add_link(f, "", [](C& c) -> LinkCost& { return c.links.user_bs; }, "a01", "b01");
    add_link(f, "_mw", [](C& c) -> LinkCost& { return c.links.bs_backhaul.microwave; }, "a12", "b12");
    add_link(f, "_of", [](C& c) -> LinkCost& { return c.links.bs_backhaul.fiber; }, "a12", "b12");
    add_link(f, "_mw", [](C& c) -> LinkCost& { return c.links.backhaul_dc.microwave; }, "a23", "b23");
    add_link(f, "_of", [](C& c) -> LinkCost& { return c.links.backhaul_dc.fiber; }, "a23", "b23");
    f.push_back(optional_number("costs", "a23_processing", &C::processing_base, Range::kNonNegative));
    f.push_back({"costs", "c2_mode",
                 [](C& c, const std::string& k, const std::string& v) {
                   const std::string t = trim(v);
                   if (t == "literal") c.c2_mode = BackhaulCostMode::kLiteral;
                   else if (t == "normalized") c.c2_mode = BackhaulCostMode::kNormalized;
                   else throw ConfigError(k, "expected literal or normalized, got '" + v + "'");
                 },
                 [](const C& c) -> std::optional<std::string> {
                   return std::string(c.c2_mode == BackhaulCostMode::kLiteral ? "literal" : "normalized");
                 }});

    // [complexity]
    auto dec = [&](const std::string& key, double DecoderParams::*m, Range r) {
      f.push_back(number_at("complexity", key, [m](C& c) -> double& { return c.decoder.*m; }, r));
    };
    dec("zeta", &DecoderParams::zeta, Range::kPositive);
    dec("k", &DecoderParams::k_scale, Range::kPositive);
    dec("channel_outage", &DecoderParams::channel_outage, Range::kOpenUnit);
    dec("nu_db", &DecoderParams::nu_db, Range::kAny);
    dec("comp_outage", &DecoderParams::comp_outage, Range::kOpenUnit);
    dec("downlink_uplift", &DecoderParams::downlink_uplift, Range::kNonNegative);
    auto frame = [&](const std::string& key, double FrameConstants::*m) {
      f.push_back(number_at("complexity", key, [m](C& c) -> double& { return c.frame.*m; }, Range::kPositive));
    };
    frame("subframe_s", &FrameConstants::subframe_s);
    frame("resource_blocks", &FrameConstants::resource_blocks);
    frame("subcarriers_per_block", &FrameConstants::subcarriers_per_block);
    frame("symbols_per_block", &FrameConstants::symbols_per_block);
    frame("flop_per_bit_iter", &FrameConstants::flop_per_bit_iter);
    frame("server_flops", &FrameConstants::server_flops);
    frame("server_cost", &FrameConstants::server_cost);
    f.push_back({"complexity", "snr",
                 [](C& c, const std::string& k, const std::string& v) {
                   try {
                     c.snr = SnrDistribution::parse(v).to_string();
                   } catch (const ParameterError& e) {
                     throw ConfigError(k, e.what());
                   }
                 },
                 [](const C& c) -> std::optional<std::string> { return c.snr; }});
    f.push_back({"complexity", "mcs_rates",
                 [](C& c, const std::string& k, const std::string& v) {
                   std::vector<double> rates;
                   for (const auto& item : split_list(v)) rates.push_back(parse_double(k, item, Range::kPositive));
                   if (rates.empty()) throw ConfigError(k, "empty rate list");
                   for (std::size_t i = 1; i < rates.size(); ++i) {
                     if (!(rates[i] > rates[i - 1])) throw ConfigError(k, "rates must be strictly increasing");
                   }
                   c.mcs_rates = std::move(rates);
                 },
                 [](const C& c) -> std::optional<std::string> { return fmt_list(c.mcs_rates); }});
    f.push_back({"complexity", "samples",
                 [](C& c, const std::string& k, const std::string& v) {
                   c.complexity_samples = static_cast<unsigned>(parse_uint(k, v, 1));
                 },
                 [](const C& c) -> std::optional<std::string> { return std::to_string(c.complexity_samples); }});
    f.push_back({"complexity", "seed",
                 [](C& c, const std::string& k, const std::string& v) { c.complexity_seed = parse_uint(k, v); },
                 [](const C& c) -> std::optional<std::string> { return std::to_string(c.complexity_seed); }});
    f.push_back(optional_number("complexity", "processing_slope", &C::processing_slope, Range::kNonNegative));
    f.push_back(optional_number("complexity", "processing_intercept", &C::processing_intercept, Range::kNonNegative));
    f.push_back(optional_number("complexity", "dran_pooling_ratio", &C::dran_pooling_ratio, Range::kPositive));

    // [radio]
    f.push_back({"radio", "preset",
                 [](C& c, const std::string& k, const std::string& v) {
                   if (trim(v) != "paper-lte-10mhz") throw ConfigError(k, "unknown radio preset '" + v + "'");
                   c.radio = RadioParams{};
                 },
                 [](const C&) -> std::optional<std::string> { return std::nullopt; }});
    auto radio = [&](const std::string& key, double RadioParams::*m, Range r) {
      f.push_back(number_at("radio", key, [m](C& c) -> double& { return c.radio.*m; }, r));
    };
    radio("p_tx_dbm", &RadioParams::p_tx_dbm, Range::kAny);
    radio("noise_dbm", &RadioParams::noise_dbm, Range::kAny);
    radio("n_subcarriers", &RadioParams::n_subcarriers, Range::kPositive);
    radio("bandwidth_hz", &RadioParams::bandwidth_hz, Range::kPositive);
    radio("control_overhead", &RadioParams::control_overhead, Range::kNonNegative);

    // [analysis]
    f.push_back({"analysis", "user_distance",
                 [](C& c, const std::string& k, const std::string& v) {
                   const std::string t = trim(v);
                   if (t == "empty_space") c.user_distance = UserDistanceModel::kEmptySpace;
                   else if (t == "nearest_neighbor") c.user_distance = UserDistanceModel::kNearestNeighbor;
                   else throw ConfigError(k, "expected empty_space or nearest_neighbor, got '" + v + "'");
                 },
                 [](const C& c) -> std::optional<std::string> {
                   return std::string(c.user_distance == UserDistanceModel::kEmptySpace ? "empty_space"
                                                                                        : "nearest_neighbor");
                 }});
    f.push_back({"analysis", "j_form",
                 [](C& c, const std::string& k, const std::string& v) {
                   const std::string t = trim(v);
                   if (t == "parent_aware") c.j_form = JForm::kParentAware;
                   else if (t == "independent") c.j_form = JForm::kIndependentSuperposition;
                   else throw ConfigError(k, "expected parent_aware or independent, got '" + v + "'");
                 },
                 [](const C& c) -> std::optional<std::string> {
                   return std::string(c.j_form == JForm::kParentAware ? "parent_aware" : "independent");
                 }});
    f.push_back(number_at("analysis", "abs_tol", [](C& c) -> double& { return c.quad.abs_tol; }, Range::kPositive));
    f.push_back(number_at("analysis", "rel_tol", [](C& c) -> double& { return c.quad.rel_tol; }, Range::kPositive));
    f.push_back(number_at("analysis", "max_radius_factor", [](C& c) -> double& { return c.quad.max_radius_factor; },
                          Range::kPositive));
    f.push_back({"analysis", "max_subdivisions",
                 [](C& c, const std::string& k, const std::string& v) {
                   c.quad.max_subdivisions = static_cast<unsigned>(parse_uint(k, v, 1));
                 },
                 [](const C& c) -> std::optional<std::string> { return std::to_string(c.quad.max_subdivisions); }});

    // [sweep]
    f.push_back({"sweep", "axis",
                 [](C& c, const std::string& k, const std::string& v) {
                   try {
                     c.sweep.axis = parse_axis(trim(v));
                   } catch (const ParameterError& e) {
                     throw ConfigError(k, e.what());
                   }
                 },
                 [](const C& c) -> std::optional<std::string> { return axis_name(c.sweep.axis); }});
    f.push_back({"sweep", "values",
                 [](C& c, const std::string& k, const std::string& v) {
                   std::vector<double> values;
                   for (const auto& item : split_list(v)) values.push_back(parse_double(k, item));
                   c.sweep.values = std::move(values);
                 },
                 [](const C& c) -> std::optional<std::string> { return fmt_list(c.sweep.values); }});
    f.push_back({"sweep", "architectures",
                 [](C& c, const std::string& k, const std::string& v) {
                   std::vector<ArchitectureSpec> archs;
                   try {
                     for (const auto& item : split_list(v)) archs.push_back(ArchitectureSpec::parse(item));
                   } catch (const ParameterError& e) {
                     throw ConfigError(k, e.what());
                   }
                   c.sweep.architectures = std::move(archs);
                 },
                 [](const C& c) -> std::optional<std::string> {
                   std::string s;
                   for (std::size_t i = 0; i < c.sweep.architectures.size(); ++i) {
                     s += (i ? "," : "") + c.sweep.architectures[i].label();
                   }
                   return s;
                 }});

    // [simulation]
    f.push_back(number_at("simulation", "width", [](C& c) -> double& { return c.simulation.window.width; },
                          Range::kPositive));
    f.push_back(number_at("simulation", "height", [](C& c) -> double& { return c.simulation.window.height; },
                          Range::kPositive));
    f.push_back({"simulation", "wrap",
                 [](C& c, const std::string& k, const std::string& v) { c.simulation.window.wrap = parse_bool(k, v); },
                 [](const C& c) -> std::optional<std::string> {
                   return std::string(c.simulation.window.wrap ? "true" : "false");
                 }});
    f.push_back(number_at("simulation", "guard_km", [](C& c) -> double& { return c.simulation.guard_km; },
                          Range::kNonNegative));
    f.push_back({"simulation", "user_distance",
                 [](C& c, const std::string& k, const std::string& v) {
                   const std::string t = trim(v);
                   if (t == "euclidean") c.simulation.literal_user_distance = false;
                   else if (t == "literal") c.simulation.literal_user_distance = true;
                   else throw ConfigError(k, "expected euclidean or literal, got '" + v + "'");
                 },
                 [](const C& c) -> std::optional<std::string> {
                   return std::string(c.simulation.literal_user_distance ? "literal" : "euclidean");
                 }});
    f.push_back({"simulation", "normalization",
                 [](C& c, const std::string& k, const std::string& v) {
                   const std::string t = trim(v);
                   if (t == "expected") c.simulation.normalization = DcNormalization::kExpectedCount;
                   else if (t == "realized") c.simulation.normalization = DcNormalization::kRealizedCount;
                   else throw ConfigError(k, "expected 'expected' or 'realized', got '" + v + "'");
                 },
                 [](const C& c) -> std::optional<std::string> {
                   return std::string(c.simulation.normalization == DcNormalization::kExpectedCount ? "expected"
                                                                                                     : "realized");
                 }});
    f.push_back({"simulation", "reps",
                 [](C& c, const std::string& k, const std::string& v) { c.reps = parse_uint(k, v, 2); },
                 [](const C& c) -> std::optional<std::string> { return std::to_string(c.reps); }});
    f.push_back({"simulation", "seed",
                 [](C& c, const std::string& k, const std::string& v) { c.seed = parse_uint(k, v); },
                 [](const C& c) -> std::optional<std::string> { return std::to_string(c.seed); }});
    return f;
  }();
  return table;
}

const Field* find_field(const std::string& section, const std::string& key) {
  for (const auto& f : fields()) {
    if (f.section == section && f.key == key) return &f;
  }
  return nullptr;
}

// Drops a trailing "; comment" or "# comment" preceded by whitespace.
std::string strip_inline_comment(const std::string& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if ((v[i] == ';' || v[i] == '#') && std::isspace(static_cast<unsigned char>(v[i - 1]))) {
      return v.substr(0, v.find_last_not_of(" \t", i - 1) + 1);
    }
  }
  return v;
}

ScenarioConfig apply_tree(const pt::ptree& tree, ScenarioConfig config) {
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) throw ConfigError(section, "key outside of any section");
    const bool known = std::any_of(fields().begin(), fields().end(),
                                   [&](const Field& f) { return f.section == section; });
    if (!known) throw ConfigError(section, "unknown section");
    for (const auto& [key, value] : body) {
      const std::string full = section + "." + key;
      const Field* f = find_field(section, key);
      if (!f) throw ConfigError(full, "unknown key");
      f->set(config, full, strip_inline_comment(value.get_value<std::string>()));
    }
  }
  config.validate();
  return config;
}

double pooling_ratio_uncached(const ScenarioConfig& c) {
  DecoderParams params = c.decoder;
  params.gamma_offset_db = 0.0;
  const McsTable mcs = snr_thresholds(c.mcs_rates, params);
  return dran_pooling_ratio(SnrDistribution::parse(c.snr), mcs, params, c.complexity_samples, c.complexity_seed);
}

}  // namespace

std::string ArchitectureSpec::label() const {
  if (architecture == Architecture::kDran) return "DRAN";
  return "CloudRAN@" + fmt(gamma_offset_db) + "dB";
}

ArchitectureSpec ArchitectureSpec::parse(const std::string& label) {
  const std::string t = trim(label);
  if (t == "DRAN") return {Architecture::kDran, 0.0};
  const std::string prefix = "CloudRAN@";
  if (t.rfind(prefix, 0) == 0 && t.size() > prefix.size() + 2 && t.substr(t.size() - 2) == "dB") {
    const std::string num = t.substr(prefix.size(), t.size() - prefix.size() - 2);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), v);
    if (ec == std::errc() && ptr == num.data() + num.size() && v >= 0.0 && std::isfinite(v)) {
      return {Architecture::kCloudRan, v};
    }
  }
  if (t == "CloudRAN") return {Architecture::kCloudRan, 0.0};
  throw ParameterError("unknown architecture '" + label + "'; expected DRAN or CloudRAN@<offset>dB");
}

std::string axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kLambda3: return "lambda3";
    case SweepAxis::kAlpha: return "alpha";
    case SweepAxis::kLambda0: return "lambda0";
    case SweepAxis::kP: return "p";
    case SweepAxis::kSigma2: return "sigma2";
  }
  return "lambda3";
}

SweepAxis parse_axis(const std::string& name) {
  for (SweepAxis a : {SweepAxis::kLambda3, SweepAxis::kAlpha, SweepAxis::kLambda0, SweepAxis::kP, SweepAxis::kSigma2}) {
    if (axis_name(a) == name) return a;
  }
  throw ParameterError("unknown sweep axis '" + name + "'; expected lambda3, alpha, lambda0, p or sigma2");
}

void SweepSpec::validate() const {
  if (values.empty()) throw ConfigError("sweep.values", "must not be empty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw ConfigError("sweep.values", "must be finite");
    if (i > 0 && !(values[i] >= values[i - 1])) throw ConfigError("sweep.values", "must be sorted ascending");
  }
  if (architectures.empty()) throw ConfigError("sweep.architectures", "must not be empty");
}

void ScenarioConfig::validate() const {
  if (!(decoder.zeta > 2.0)) throw ConfigError("complexity.zeta", "must be > 2");
  if (!(radio.control_overhead < 1.0)) throw ConfigError("radio.control_overhead", "must be < 1");
  const Window& w = simulation.window;
  if (!w.wrap && !(w.width > 2.0 * simulation.guard_km && w.height > 2.0 * simulation.guard_km)) {
    throw ConfigError("simulation.guard_km", "leaves no interior window");
  }
  sweep.validate();
}

ScenarioConfig paper_default_config() { return ScenarioConfig{}; }

ScenarioConfig preset_config(const std::string& name) {
  if (name == "paper-default") return paper_default_config();
  throw ConfigError("preset", "unknown preset '" + name + "'");
}

ScenarioConfig parse_config(const std::string& text, const ScenarioConfig& base) {
  pt::ptree tree;
  std::istringstream is(text);
  try {
    pt::ini_parser::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("line " + std::to_string(e.line()), e.message());
  }
  return apply_tree(tree, base);
}

ScenarioConfig load_config(const std::string& path, const ScenarioConfig& base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), base);
}

std::string format_config(const ScenarioConfig& config) {
  std::ostringstream os;
  std::string section;
  for (const auto& f : fields()) {
    const auto value = f.get(config);
    if (!value) continue;
    if (f.section != section) {
      if (!section.empty()) os << '\n';
      os << '[' << f.section << "]\n";
      section = f.section;
    }
    os << f.key << " = " << *value << '\n';
  }
  return os.str();
}

void write_config(const ScenarioConfig& config, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write config file '" + path + "'");
  out << format_config(config);
  if (!out) throw IoError("write failed for '" + path + "'");
}

double pooling_ratio(const ScenarioConfig& c) {
  if (c.dran_pooling_ratio) return *c.dran_pooling_ratio;
  static std::mutex mutex;
  static std::map<std::string, double> cache;
  std::ostringstream key;
  key << c.snr << '|' << fmt_list(c.mcs_rates) << '|' << fmt(c.decoder.zeta) << '|' << fmt(c.decoder.k_scale) << '|'
      << fmt(c.decoder.nu_db) << '|' << fmt(c.decoder.comp_outage) << '|' << c.complexity_samples << '|'
      << c.complexity_seed;
  std::lock_guard lock(mutex);
  auto it = cache.find(key.str());
  if (it != cache.end()) return it->second;
  const double r = pooling_ratio_uncached(c);
  cache.emplace(key.str(), r);
  return r;
}

ProcessingLine cloud_processing_line(const ScenarioConfig& c, double gamma_offset_db) {
  ProcessingLine line;
  if (!c.processing_slope || !c.processing_intercept) {
    try {
      const ProcessingPreset& p = processing_preset(gamma_offset_db);
      line.slope = p.slope;
      line.intercept = p.intercept;
    } catch (const ParameterError& e) {
      throw ConfigError("scenario.gamma_offset_db",
                        std::string(e.what()) + " (or set complexity.processing_slope and processing_intercept)");
    }
  }
  if (c.processing_slope) line.slope = *c.processing_slope;
  if (c.processing_intercept) line.intercept = *c.processing_intercept;
  return line;
}

ProcessingLine dran_processing_line(const ScenarioConfig& c) {
  const ProcessingLine cloud = cloud_processing_line(c, 0.0);
  return {cloud.slope * pooling_ratio(c), 0.0};
}

Scenario resolve(const ScenarioConfig& c, const ArchitectureSpec& arch) {
  c.validate();
  Scenario s;
  s.architecture = arch.architecture;
  s.gamma_offset_db = arch.architecture == Architecture::kDran ? 0.0 : arch.gamma_offset_db;
  s.user_intensity = c.lambda0;
  s.base_stations.mean_offspring = c.lambda1m;
  s.base_stations.sigma = std::sqrt(c.sigma2);
  if (c.lambda1c) {
    s.base_stations.parent_intensity = *c.lambda1c;
  } else {
    double lambda1 = 0.0;
    try {
      lambda1 = bs_intensity_for_offset(s.gamma_offset_db, c.lambda0, c.radio);
    } catch (const ParameterError& e) {
      throw ConfigError("scenario.gamma_offset_db", std::string(e.what()) + " (or set geometry.lambda1c)");
    }
    s.base_stations.parent_intensity = lambda1 / (1.0 + c.lambda1m);
  }
  s.p_microwave = c.p;
  s.microwave_intensity = c.lambda2_mw;
  s.fiber_intensity = c.lambda2_of;
  s.dc_intensity = c.lambda3;
  s.equipment = c.equipment;
  s.links = c.links;
  s.backhaul_cost_mode = c.c2_mode;
  s.user_distance = c.user_distance;
  s.j_form = c.j_form;
  if (c.processing_base) {
    s.links.processing_base = *c.processing_base;
  } else {
    const ProcessingLine line = arch.architecture == Architecture::kDran
                                    ? dran_processing_line(c)
                                    : cloud_processing_line(c, s.gamma_offset_db);
    s.links.processing_base =
        processing_cost_rate(line.slope, line.intercept, s.bs_intensity(), c.frame.server_cost, c.lambda0);
  }
  try {
    s.validate();
  } catch (const ParameterError& e) {
    throw ConfigError("scenario", e.what());
  }
  return s;
}

Scenario resolve(const ScenarioConfig& config) { return resolve(config, config.architecture); }

Scenario load_scenario(const std::string& path, const std::string& preset) {
  return resolve(load_config(path, preset_config(preset)));
}

std::uint64_t config_hash(const ScenarioConfig& config) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : format_config(config)) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace crancost
