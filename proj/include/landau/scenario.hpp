#pragma once

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "landau/initial_data.hpp"
#include "landau/integrator.hpp"
#include "landau/io.hpp"

namespace landau {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class DatumKind { Maxwellian, BiMaxwellian, AnisotropicGaussian, SmoothedIndicator, FromFile };

struct InitialDatum {
  DatumKind kind = DatumKind::Maxwellian;
  // maxwellian
  double mass = 1.0, temperature = 1.0;
  // bi_maxwellian
  double separation = 2.0, w1 = 0.5, w2 = 0.5;
  // anisotropic_gaussian
  double t1 = 1.0, t2 = 1.0, t3 = 1.0;
  // smoothed_indicator
  double radius = 1.0, edge_width = 0.2;
  // from_file
  std::string path;
};

struct ScenarioConfig {
  double gamma = 0.0;
  int n = 32;
  double half_width = 8.0;
  InitialDatum datum;
  SchemeConfig scheme;
  double t_end = 0.0;
  int diag_every = 50;
  std::vector<double> c0_list = {0.25, 0.5};
  int m_max = 2;
  double weight_s = 0.0;  // defaults to gamma
  double tol_neg = 1e-6;
  double tol_trunc = 0.03;
  bool clip_negative = false;
  int alpha_max = 12;
};

namespace detail {

// SAX pass that rejects duplicate keys (the DOM parser silently keeps the
// last duplicate otherwise)
struct DupKeySax {
  using json = nlohmann::json;
  std::vector<std::set<std::string>> scopes;

  bool null() { return true; }
  bool boolean(bool) { return true; }
  bool number_integer(json::number_integer_t) { return true; }
  bool number_unsigned(json::number_unsigned_t) { return true; }
  bool number_float(json::number_float_t, const json::string_t&) { return true; }
  bool string(json::string_t&) { return true; }
  bool binary(json::binary_t&) { return true; }
  bool start_object(std::size_t) {
    scopes.emplace_back();
    return true;
  }
  bool key(json::string_t& k) {
    if (!scopes.back().insert(k).second)
      throw ConfigError("config: duplicate key \"" + k + "\"");
    return true;
  }
  bool end_object() {
    scopes.pop_back();
    return true;
  }
  bool start_array(std::size_t) { return true; }
  bool end_array() { return true; }
  bool parse_error(std::size_t pos, const std::string&,
                   const nlohmann::detail::exception& ex) {
    throw ConfigError("config: parse error at byte " + std::to_string(pos) + ": " + ex.what());
  }
};

inline void reject_unknown(const nlohmann::json& obj, const std::string& where,
                           const std::set<std::string>& allowed) {
  for (const auto& [k, v] : obj.items()) {
    if (!allowed.count(k))
      throw ConfigError("config: unknown key \"" + (where.empty() ? k : where + "." + k) + "\"");
  }
}

inline double get_num(const nlohmann::json& obj, const std::string& where, const char* key,
                      double fallback, bool required = false) {
  if (!obj.contains(key)) {
    if (required) throw ConfigError("config: missing required key \"" + where + key + "\"");
    return fallback;
  }
  if (!obj[key].is_number())
    throw ConfigError("config: \"" + where + key + "\" must be a number");
  return obj[key].get<double>();
}

}  // namespace detail

// strict parse: unknown keys and duplicate keys rejected, ranges validated
inline ScenarioConfig parse_config(const std::string& text) {
  detail::DupKeySax sax;
  nlohmann::json::sax_parse(text, &sax);
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.is_object()) throw ConfigError("config: top level must be an object");

  detail::reject_unknown(j, "",
                         {"gamma", "grid", "initial_datum", "scheme", "t_end", "diag_every",
                          "c0_list", "m_max", "s", "tol_neg", "tol_trunc", "clip_negative",
                          "alpha_max"});
  ScenarioConfig cfg;
  cfg.gamma = detail::get_num(j, "", "gamma", 0.0, /*required=*/true);
  if (!(cfg.gamma >= 0.0 && cfg.gamma <= 1.0))
    throw ConfigError("config: gamma = " + std::to_string(cfg.gamma) +
                      " outside the admissible interval [0, 1] (hard potentials are (0, 1], "
                      "Maxwellian molecules gamma = 0)");

  if (!j.contains("grid") || !j["grid"].is_object())
    throw ConfigError("config: missing required object \"grid\"");
  detail::reject_unknown(j["grid"], "grid", {"n", "V"});
  cfg.n = static_cast<int>(detail::get_num(j["grid"], "grid.", "n", 0, true));
  cfg.half_width = detail::get_num(j["grid"], "grid.", "V", 0, true);
  if (cfg.n < 4 || (cfg.n & (cfg.n - 1)) != 0)
    throw ConfigError("config: grid.n must be a power of two >= 4");
  if (!(cfg.half_width > 0)) throw ConfigError("config: grid.V must be positive");

  if (!j.contains("initial_datum") || !j["initial_datum"].is_object())
    throw ConfigError("config: missing required object \"initial_datum\"");
  const auto& d = j["initial_datum"];
  if (!d.contains("kind") || !d["kind"].is_string())
    throw ConfigError("config: initial_datum.kind must be a string");
  const std::string kind = d["kind"].get<std::string>();
  auto& dat = cfg.datum;
  if (kind == "maxwellian") {
    detail::reject_unknown(d, "initial_datum", {"kind", "mass", "temperature"});
    dat.kind = DatumKind::Maxwellian;
    dat.mass = detail::get_num(d, "initial_datum.", "mass", 1.0);
    dat.temperature = detail::get_num(d, "initial_datum.", "temperature", 1.0);
  } else if (kind == "bi_maxwellian") {
    detail::reject_unknown(d, "initial_datum", {"kind", "separation", "weights"});
    dat.kind = DatumKind::BiMaxwellian;
    dat.separation = detail::get_num(d, "initial_datum.", "separation", 2.0);
    if (d.contains("weights")) {
      if (!d["weights"].is_array() || d["weights"].size() != 2)
        throw ConfigError("config: initial_datum.weights must be an array of two numbers");
      dat.w1 = d["weights"][0].get<double>();
      dat.w2 = d["weights"][1].get<double>();
    }
  } else if (kind == "anisotropic_gaussian") {
    detail::reject_unknown(d, "initial_datum", {"kind", "T"});
    dat.kind = DatumKind::AnisotropicGaussian;
    if (!d.contains("T") || !d["T"].is_array() || d["T"].size() != 3)
      throw ConfigError("config: initial_datum.T must be an array of three temperatures");
    dat.t1 = d["T"][0].get<double>();
    dat.t2 = d["T"][1].get<double>();
    dat.t3 = d["T"][2].get<double>();
  } else if (kind == "smoothed_indicator") {
    detail::reject_unknown(d, "initial_datum", {"kind", "radius", "edge_width"});
    dat.kind = DatumKind::SmoothedIndicator;
    dat.radius = detail::get_num(d, "initial_datum.", "radius", 1.0);
    dat.edge_width = detail::get_num(d, "initial_datum.", "edge_width", 0.2);
  } else if (kind == "from_file") {
    detail::reject_unknown(d, "initial_datum", {"kind", "path"});
    dat.kind = DatumKind::FromFile;
    if (!d.contains("path") || !d["path"].is_string())
      throw ConfigError("config: initial_datum.path must be a string");
    dat.path = d["path"].get<std::string>();
  } else {
    throw ConfigError("config: unknown initial_datum.kind \"" + kind + "\"");
  }

  cfg.t_end = detail::get_num(j, "", "t_end", 0.0, /*required=*/true);
  if (!(cfg.t_end >= 0)) throw ConfigError("config: t_end must be nonnegative");

  if (j.contains("scheme")) {
    const auto& s = j["scheme"];
    detail::reject_unknown(s, "scheme",
                           {"kind", "cfl", "dt_max", "refresh", "filter", "tail_floor"});
    if (s.contains("kind")) {
      const std::string sk = s["kind"].get<std::string>();
      if (sk == "RK4")
        cfg.scheme.scheme = Scheme::RK4;
      else if (sk == "RK2")
        cfg.scheme.scheme = Scheme::RK2;
      else
        throw ConfigError("config: scheme.kind must be RK4 or RK2");
    }
    cfg.scheme.cfl = detail::get_num(s, "scheme.", "cfl", cfg.scheme.cfl);
    if (!(cfg.scheme.cfl > 0 && cfg.scheme.cfl <= 1))
      throw ConfigError("config: scheme.cfl must lie in (0, 1]");
    cfg.scheme.dt_max = detail::get_num(s, "scheme.", "dt_max", cfg.scheme.dt_max);
    if (s.contains("refresh")) {
      const std::string r = s["refresh"].get<std::string>();
      if (r == "every_stage")
        cfg.scheme.refresh = Refresh::EveryStage;
      else if (r == "every_step")
        cfg.scheme.refresh = Refresh::EveryStep;
      else
        throw ConfigError("config: scheme.refresh must be every_stage or every_step");
    }
    cfg.scheme.tail_floor = detail::get_num(s, "scheme.", "tail_floor", 0.0);
    if (s.contains("filter")) {
      const std::string fl = s["filter"].get<std::string>();
      if (fl == "none")
        cfg.scheme.filter = StateFilter::None;
      else if (fl == "exp")
        cfg.scheme.filter = StateFilter::Exp36;
      else if (fl == "two_thirds")
        cfg.scheme.filter = StateFilter::TwoThirds;
      else
        throw ConfigError("config: scheme.filter must be none, exp, or two_thirds");
    }
  }

  cfg.diag_every = static_cast<int>(detail::get_num(j, "", "diag_every", cfg.diag_every));
  if (cfg.diag_every < 1) throw ConfigError("config: diag_every must be >= 1");
  if (j.contains("c0_list")) {
    if (!j["c0_list"].is_array()) throw ConfigError("config: c0_list must be an array");
    cfg.c0_list.clear();
    for (const auto& v : j["c0_list"]) cfg.c0_list.push_back(v.get<double>());
  }
  cfg.m_max = static_cast<int>(detail::get_num(j, "", "m_max", cfg.m_max));
  cfg.weight_s = detail::get_num(j, "", "s", cfg.gamma);
  cfg.tol_neg = detail::get_num(j, "", "tol_neg", cfg.tol_neg);
  cfg.tol_trunc = detail::get_num(j, "", "tol_trunc", cfg.tol_trunc);
  if (j.contains("clip_negative")) cfg.clip_negative = j["clip_negative"].get<bool>();
  cfg.alpha_max = static_cast<int>(detail::get_num(j, "", "alpha_max", cfg.alpha_max));
  return cfg;
}

inline ScenarioConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config: cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  return parse_config(text);
}

inline DistributionField build_initial(const ScenarioConfig& cfg) {
  const auto grid = VelocityGrid::make(cfg.n, cfg.half_width);
  switch (cfg.datum.kind) {
    case DatumKind::Maxwellian:
      return maxwellian_field(grid, cfg.datum.mass, cfg.datum.temperature);
    case DatumKind::BiMaxwellian:
      return bi_maxwellian_field(grid, cfg.datum.separation, cfg.datum.w1, cfg.datum.w2);
    case DatumKind::AnisotropicGaussian:
      return anisotropic_gaussian_field(grid, cfg.datum.t1, cfg.datum.t2, cfg.datum.t3);
    case DatumKind::SmoothedIndicator:
      return smoothed_indicator_field(grid, cfg.datum.radius, cfg.datum.edge_width);
    case DatumKind::FromFile: {
      auto dump = read_field_dump(cfg.datum.path);
      if (!(dump.field.grid == grid))
        throw ConfigError("config: from_file grid (" + std::to_string(dump.field.grid.n) +
                          ", V=" + std::to_string(dump.field.grid.half_width) +
                          ") does not match the configured grid");
      return std::move(dump.field);
    }
  }
  throw ConfigError("config: unreachable datum kind");
}

enum class SnapshotPolicy { None, All, EveryK };

struct ScenarioOutput {
  RunResult result;
  std::string csv_path;
};

// drive a full scenario: build the initial datum, integrate, emit the CSV
// (and optional binary snapshots) under out_dir
inline ScenarioOutput run_scenario(const ScenarioConfig& cfg, const std::string& out_dir,
                                   SnapshotPolicy snaps = SnapshotPolicy::None,
                                   int snap_every = 1, const RecordHook& hook = {}) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const auto grid = VelocityGrid::make(cfg.n, cfg.half_width);
  Assembler assembler(grid, cfg.gamma, cfg.tol_trunc);
  auto f0 = build_initial(cfg);

  RunConfig rc;
  rc.t_end = cfg.t_end;
  rc.diag_every = cfg.diag_every;
  rc.tol_neg = cfg.tol_neg;
  rc.clip_negative = cfg.clip_negative;
  rc.scheme = cfg.scheme;
  rc.record.gamma = cfg.gamma;
  rc.record.m_max = cfg.m_max;
  rc.record.c0_list = cfg.c0_list;
  rc.record.alpha_max = cfg.alpha_max;

  long snap_counter = 0;
  RecordHook combined = [&](const SimulationState& st, const DiagnosticsRecord& rec) {
    if (snaps == SnapshotPolicy::All ||
        (snaps == SnapshotPolicy::EveryK && snap_counter % snap_every == 0)) {
      char name[64];
      std::snprintf(name, sizeof name, "snapshot_%06ld.bin", snap_counter);
      write_field_dump((fs::path(out_dir) / name).string(), st.f, cfg.gamma, st.t);
    }
    ++snap_counter;
    if (hook) hook(st, rec);
  };

  ScenarioOutput out;
  out.result = run_simulation(std::move(f0), assembler, rc, combined);
  out.csv_path = (fs::path(out_dir) / "diagnostics.csv").string();
  std::ofstream os(out.csv_path);
  write_csv(os, out.result.records, cfg.m_max, cfg.c0_list);
  return out;
}

}  // namespace landau
