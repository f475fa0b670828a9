#include "risplace/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <utility>

namespace risplace::config {

namespace {

// One mapping of the document. Every key read is remembered so leftovers can
// be reported as unknown.
class Section {
 public:
  Section(YAML::Node node, std::string name) : node_(std::move(node)), name_(std::move(name)) {
    if (node_.IsDefined() && !node_.IsNull() && !node_.IsMap()) {
      throw ConfigError(name_ + ": expected a mapping");
    }
  }

  [[nodiscard]] bool present() const { return node_.IsDefined() && node_.IsMap(); }

  std::optional<double> number(const std::string& key) {
    const auto v = take(key);
    if (!v) return std::nullopt;
    double out = 0.0;
    if (!v->IsScalar() || !YAML::convert<double>::decode(*v, out) || !std::isfinite(out)) {
      throw ConfigError(field(key) + ": expected a finite number, got '" + text(*v) + "'");
    }
    return out;
  }

  std::optional<long long> integer(const std::string& key, long long lo, long long hi) {
    const auto v = number(key);
    if (!v) return std::nullopt;
    if (std::floor(*v) != *v || *v < static_cast<double>(lo) || *v > static_cast<double>(hi)) {
      throw ConfigError(field(key) + ": expected an integer in [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "]");
    }
    return static_cast<long long>(*v);
  }

  std::optional<bool> boolean(const std::string& key) {
    const auto v = take(key);
    if (!v) return std::nullopt;
    bool out = false;
    if (!v->IsScalar() || !YAML::convert<bool>::decode(*v, out)) {
      throw ConfigError(field(key) + ": expected true or false, got '" + text(*v) + "'");
    }
    return out;
  }

  std::optional<std::string> string(const std::string& key) {
    const auto v = take(key);
    if (!v) return std::nullopt;
    if (!v->IsScalar()) throw ConfigError(field(key) + ": expected a string");
    return v->Scalar();
  }

  std::optional<std::pair<double, double>> pair(const std::string& key) {
    const auto v = take(key);
    if (!v) return std::nullopt;
    std::pair<double, double> out;
    if (!v->IsSequence() || v->size() != 2 ||
        !YAML::convert<double>::decode((*v)[0], out.first) ||
        !YAML::convert<double>::decode((*v)[1], out.second)) {
      throw ConfigError(field(key) + ": expected [lo, hi]");
    }
    return out;
  }

  [[nodiscard]] std::string field(const std::string& key) const { return name_ + "." + key; }

  void finish() const {
    if (!present()) return;
    for (const auto& kv : node_) {
      const std::string key = kv.first.as<std::string>();
      if (!seen_.contains(key)) throw ConfigError(name_ + ": unknown key '" + key + "'");
    }
  }

 private:
  // Absent and explicit null both read as "not given".
  std::optional<YAML::Node> take(const std::string& key) {
    seen_.insert(key);
    if (!present()) return std::nullopt;
    const YAML::Node v = std::as_const(node_)[key];
    if (!v.IsDefined() || v.IsNull()) return std::nullopt;
    return v;
  }

  static std::string text(const YAML::Node& v) {
    if (v.IsScalar()) return v.Scalar();
    std::ostringstream os;
    os << v;
    return os.str();
  }

  YAML::Node node_;
  std::string name_;
  std::set<std::string> seen_;
};

template <class F>
void guard(const std::string& section, F&& check) {
  try {
    check();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(section + ": " + e.what());
  }
}

linkbudget::Mode mode_field(Section& s, const std::string& key, linkbudget::Mode fallback) {
  const auto v = s.string(key);
  if (!v) return fallback;
  try {
    return linkbudget::parse_mode(*v);
  } catch (const ArgumentError&) {
    throw ConfigError(s.field(key) + ": expected exact, small, large or auto, got '" + *v + "'");
  }
}

SweepVariable parse_variable(const std::string& text, const std::string& field) {
  if (text == "r1h") return SweepVariable::TxRisHorizontal;
  if (text == "ys") return SweepVariable::LateralOffset;
  if (text == "Dr") return SweepVariable::RxDiameter;
  throw ConfigError(field + ": expected r1h, ys or Dr, got '" + text + "'");
}

}  // namespace

std::string_view to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::TxRisHorizontal: return "r1h";
    case SweepVariable::LateralOffset: return "ys";
    case SweepVariable::RxDiameter: return "Dr";
  }
  return "r1h";
}

double SweepSpec::at(int k) const {
  if (k + 1 == steps) return to;
  return from + (to - from) * static_cast<double>(k) / static_cast<double>(steps - 1);
}

ScenarioConfig ScenarioConfig::at_sweep_value(double value) const {
  ScenarioConfig out = *this;
  if (!sweep) return out;
  switch (sweep->variable) {
    case SweepVariable::TxRisHorizontal: out.geometry.tx_ris_horizontal = value; break;
    case SweepVariable::LateralOffset: out.geometry.lateral_offset = value; break;
    case SweepVariable::RxDiameter: out.rx.diameter_m = value; break;
  }
  return out;
}

linkbudget::EvaluateOptions ScenarioConfig::evaluate_options(unsigned threads) const {
  linkbudget::EvaluateOptions o;
  o.mode = mode;
  o.small_ris_ratio = small_ris_ratio;
  o.ru_cap = ru_cap;
  o.threads = threads;
  o.compute_exact = compute_exact;
  return o;
}

ScenarioConfig parse_config(std::string_view yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config: YAML syntax error: ") + e.what());
  }
  if (root && !root.IsNull() && !root.IsMap()) throw ConfigError("config: expected a mapping");

  static const std::set<std::string> kSections{"radio", "tx_antenna", "rx_antenna", "ris",
                                               "geometry", "sweep", "model", "placement",
                                               "output"};
  if (root && root.IsMap()) {
    for (const auto& kv : root) {
      const std::string key = kv.first.as<std::string>();
      if (!kSections.contains(key)) throw ConfigError("config: unknown section '" + key + "'");
    }
  }
  auto section = [&](const char* name) {
    if (root.IsMap()) {
      const YAML::Node node = std::as_const(root)[name];
      if (node.IsDefined()) return Section(node, name);
    }
    return Section(YAML::Node(YAML::NodeType::Undefined), name);
  };

  ScenarioConfig cfg;

  Section radio = section("radio");
  if (auto v = radio.number("frequency_hz")) cfg.radio.frequency_hz = *v;
  if (auto v = radio.number("tx_power_w")) cfg.radio.tx_power_w = *v;
  if (auto v = radio.number("bandwidth_hz")) cfg.radio.bandwidth_hz = *v;
  if (auto v = radio.number("noise_figure_db")) cfg.radio.noise_figure_db = *v;
  radio.finish();
  guard("radio", [&] { cfg.radio.validate(); });

  for (auto [name, spec] : {std::pair{"tx_antenna", &cfg.tx}, std::pair{"rx_antenna", &cfg.rx}}) {
    Section s = section(name);
    if (auto v = s.number("diameter_m")) spec->diameter_m = *v;
    if (auto v = s.number("efficiency")) spec->efficiency = *v;
    s.finish();
    guard(name, [&] { spec->validate(); });
  }

  const double half_wave = 0.5 * cfg.radio.wavelength();
  Section ris = section("ris");
  cfg.ris.unit_width = ris.number("unit_width_m").value_or(half_wave);
  cfg.ris.unit_height = ris.number("unit_height_m").value_or(half_wave);
  cfg.ris.reflection = ris.number("reflection").value_or(0.9);
  constexpr long long kMaxCount = std::numeric_limits<int>::max();
  const auto columns = ris.integer("columns", 1, kMaxCount);
  const auto rows = ris.integer("rows", 1, kMaxCount);
  const auto area = ris.number("area_m2");
  ris.finish();
  if (area && (columns || rows)) {
    throw ConfigError("ris: give either area_m2 or columns and rows, not both");
  }
  if (columns.has_value() != rows.has_value()) {
    throw ConfigError("ris: columns and rows must be given together");
  }
  if (area && !(*area > 0.0)) throw ConfigError("ris.area_m2: must be > 0");
  if (!(cfg.ris.unit_width > 0.0)) throw ConfigError("ris.unit_width_m: must be > 0");
  if (!(cfg.ris.unit_height > 0.0)) throw ConfigError("ris.unit_height_m: must be > 0");
  if (columns) {
    cfg.ris.columns = static_cast<int>(*columns);
    cfg.ris.rows = static_cast<int>(*rows);
  } else {
    // Square surface of the requested (default 0.012 m^2) area.
    const double target = area.value_or(0.012);
    const double cell = std::sqrt(cfg.ris.unit_width * cfg.ris.unit_height);
    const geometry::RisSpec sq = geometry::RisSpec::square(target, cell, cfg.ris.reflection);
    cfg.ris.columns = sq.columns;
    cfg.ris.rows = sq.rows;
  }
  guard("ris", [&] { cfg.ris.validate(); });

  Section geo = section("geometry");
  if (auto v = geo.number("tx_rx_horizontal_m")) cfg.geometry.tx_rx_horizontal = *v;
  if (auto v = geo.number("tx_ris_horizontal_m")) {
    cfg.geometry.tx_ris_horizontal = *v;
    cfg.has_tx_ris_horizontal = true;
  }
  if (auto v = geo.number("lateral_offset_m")) cfg.geometry.lateral_offset = *v;
  if (auto v = geo.number("tx_height_m")) cfg.geometry.tx_height = *v;
  if (auto v = geo.number("rx_height_m")) cfg.geometry.rx_height = *v;
  if (auto v = geo.number("ris_height_m")) cfg.geometry.ris_height = *v;
  geo.finish();
  guard("geometry", [&] { cfg.geometry.validate(); });

  Section sweep = section("sweep");
  if (sweep.present()) {
    SweepSpec s;
    const auto var = sweep.string("variable");
    const auto from = sweep.number("from");
    const auto to = sweep.number("to");
    const auto steps = sweep.integer("steps", 2, 10'000'000);
    sweep.finish();
    if (!var) throw ConfigError("sweep.variable: required");
    if (!from) throw ConfigError("sweep.from: required");
    if (!to) throw ConfigError("sweep.to: required");
    if (!steps) throw ConfigError("sweep.steps: required");
    s.variable = parse_variable(*var, "sweep.variable");
    s.from = *from;
    s.to = *to;
    s.steps = static_cast<int>(*steps);
    if (!(s.from < s.to)) throw ConfigError("sweep: from must be < to");
    if (s.variable != SweepVariable::TxRisHorizontal && !(s.from > 0.0)) {
      throw ConfigError("sweep.from: must be > 0 for " + std::string(to_string(s.variable)));
    }
    cfg.sweep = s;
  } else {
    sweep.finish();
  }

  Section model = section("model");
  cfg.mode = mode_field(model, "mode", cfg.mode);
  if (auto v = model.number("small_ris_ratio")) {
    if (!(*v > 0.0 && *v < 1.0)) throw ConfigError("model.small_ris_ratio: must lie in (0, 1)");
    cfg.small_ris_ratio = *v;
  }
  if (auto v = model.integer("ru_cap", 1, std::numeric_limits<long long>::max() / 2)) {
    cfg.ru_cap = static_cast<std::size_t>(*v);
  }
  if (auto v = model.boolean("exact")) cfg.compute_exact = *v;
  model.finish();

  Section place = section("placement");
  if (auto v = place.pair("domain")) {
    placement::Domain d{v->first, v->second};
    guard("placement.domain", [&] { d.validate(); });
    cfg.domain = d;
  }
  if (auto v = place.integer("oracle_grid", 3, 10'000'000)) cfg.oracle_grid = static_cast<int>(*v);
  cfg.oracle_mode = mode_field(place, "oracle_mode", cfg.oracle_mode);
  if (cfg.oracle_mode == linkbudget::Mode::Auto) {
    throw ConfigError("placement.oracle_mode: expected exact, small or large");
  }
  if (auto v = place.number("refine_tol_m")) {
    if (!(*v > 0.0)) throw ConfigError("placement.refine_tol_m: must be > 0");
    cfg.refine_tol_m = *v;
  }
  place.finish();

  Section output = section("output");
  if (auto v = output.string("format")) {
    if (*v == "csv") {
      cfg.format = OutputFormat::Csv;
    } else if (*v == "json") {
      cfg.format = OutputFormat::Json;
    } else {
      throw ConfigError("output.format: expected csv or json, got '" + *v + "'");
    }
  }
  if (auto v = output.string("path")) cfg.output_path = *v;
  output.finish();

  if (cfg.sweep && cfg.sweep->variable != SweepVariable::TxRisHorizontal &&
      !cfg.has_tx_ris_horizontal) {
    throw ConfigError("geometry.tx_ris_horizontal_m: required when sweeping " +
                      std::string(to_string(cfg.sweep->variable)));
  }
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string serialize_config(const ScenarioConfig& cfg) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;

  out << YAML::Key << "radio" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "frequency_hz" << YAML::Value << cfg.radio.frequency_hz;
  out << YAML::Key << "tx_power_w" << YAML::Value << cfg.radio.tx_power_w;
  out << YAML::Key << "bandwidth_hz" << YAML::Value << cfg.radio.bandwidth_hz;
  out << YAML::Key << "noise_figure_db" << YAML::Value << cfg.radio.noise_figure_db;
  out << YAML::EndMap;

  for (auto [name, spec] : {std::pair{"tx_antenna", &cfg.tx}, std::pair{"rx_antenna", &cfg.rx}}) {
    out << YAML::Key << name << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "diameter_m" << YAML::Value << spec->diameter_m;
    out << YAML::Key << "efficiency" << YAML::Value << spec->efficiency;
    out << YAML::EndMap;
  }

  out << YAML::Key << "ris" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "unit_width_m" << YAML::Value << cfg.ris.unit_width;
  out << YAML::Key << "unit_height_m" << YAML::Value << cfg.ris.unit_height;
  out << YAML::Key << "columns" << YAML::Value << cfg.ris.columns;
  out << YAML::Key << "rows" << YAML::Value << cfg.ris.rows;
  out << YAML::Key << "reflection" << YAML::Value << cfg.ris.reflection;
  out << YAML::EndMap;

  out << YAML::Key << "geometry" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "tx_rx_horizontal_m" << YAML::Value << cfg.geometry.tx_rx_horizontal;
  if (cfg.has_tx_ris_horizontal) {
    out << YAML::Key << "tx_ris_horizontal_m" << YAML::Value << cfg.geometry.tx_ris_horizontal;
  }
  out << YAML::Key << "lateral_offset_m" << YAML::Value << cfg.geometry.lateral_offset;
  out << YAML::Key << "tx_height_m" << YAML::Value << cfg.geometry.tx_height;
  out << YAML::Key << "rx_height_m" << YAML::Value << cfg.geometry.rx_height;
  out << YAML::Key << "ris_height_m" << YAML::Value << cfg.geometry.ris_height;
  out << YAML::EndMap;

  if (cfg.sweep) {
    out << YAML::Key << "sweep" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "variable" << YAML::Value << std::string(to_string(cfg.sweep->variable));
    out << YAML::Key << "from" << YAML::Value << cfg.sweep->from;
    out << YAML::Key << "to" << YAML::Value << cfg.sweep->to;
    out << YAML::Key << "steps" << YAML::Value << cfg.sweep->steps;
    out << YAML::EndMap;
  }

  auto lower = [](linkbudget::Mode m) {
    std::string s(linkbudget::to_string(m));
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
  };

  out << YAML::Key << "model" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "mode" << YAML::Value << lower(cfg.mode);
  out << YAML::Key << "small_ris_ratio" << YAML::Value << cfg.small_ris_ratio;
  out << YAML::Key << "ru_cap" << YAML::Value << static_cast<unsigned long long>(cfg.ru_cap);
  out << YAML::Key << "exact" << YAML::Value << cfg.compute_exact;
  out << YAML::EndMap;

  out << YAML::Key << "placement" << YAML::Value << YAML::BeginMap;
  if (cfg.domain) {
    out << YAML::Key << "domain" << YAML::Value << YAML::Flow << YAML::BeginSeq << cfg.domain->lo
        << cfg.domain->hi << YAML::EndSeq;
  }
  out << YAML::Key << "oracle_grid" << YAML::Value << cfg.oracle_grid;
  out << YAML::Key << "oracle_mode" << YAML::Value << lower(cfg.oracle_mode);
  out << YAML::Key << "refine_tol_m" << YAML::Value << cfg.refine_tol_m;
  out << YAML::EndMap;

  out << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "format" << YAML::Value
      << (cfg.format == OutputFormat::Json ? "json" : "csv");
  if (cfg.output_path) out << YAML::Key << "path" << YAML::Value << *cfg.output_path;
  out << YAML::EndMap;

  out << YAML::EndMap;
  if (!out.good()) throw Error(std::string("serialize_config: ") + out.GetLastError());
  return std::string(out.c_str()) + "\n";
}

}  // namespace risplace::config
