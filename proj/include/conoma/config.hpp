#pragma once

// Configuration ingestion. Config files are flat key-value text with one
// table per section:
//
//   [vlc]
//   bandwidth_hz = 20e6
//   fov_semiangle_deg = 50
//   ...
//   [rf]
//   carrier_hz = 2.4e9
//   ...
//   [sweep]
//   axis = fov
//   values = 30,40,50,60,70,80,90
//   trials = 1000
//   methods = co-noma,noma,baseline2
//
// Unknown keys are rejected so typos never silently fall back to defaults.
// Every default is the simulation parameter table value.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "conoma/channel.hpp"
#include "conoma/rates.hpp"
#include "conoma/solvers.hpp"

namespace conoma {

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SweepAxis { fov, users, blockage, radius };

inline const char* to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::fov: return "fov";
    case SweepAxis::users: return "users";
    case SweepAxis::blockage: return "blockage";
    case SweepAxis::radius: return "radius";
  }
  return "?";
}

inline SweepAxis axis_from_string(const std::string& s) {
  if (s == "fov") return SweepAxis::fov;
  if (s == "users") return SweepAxis::users;
  if (s == "blockage") return SweepAxis::blockage;
  if (s == "radius") return SweepAxis::radius;
  throw config_error("unknown sweep axis '" + s + "' (expected fov|users|blockage|radius)");
}

struct SweepConfig {
  ScenarioConfig base;           // scenario defaults; the axis overrides one field
  PhyConstants phy;              // pair_count is derived per point
  SweepAxis axis = SweepAxis::fov;
  std::vector<double> values{30, 40, 50, 60, 70, 80, 90};
  int trials = 1000;
  std::vector<Method> methods{Method::co_noma, Method::noma, Method::baseline2};
  std::uint64_t seed = 1;
  std::string out = "sweep";
  int workers = 1;
  int weight_updates = 10;  // solves per trial; weights reset between trials

  void validate() const {
    base.validate();
    phy.validate();
    if (trials < 1) throw config_error("trials must be >= 1");
    if (values.empty()) throw config_error("sweep needs at least one axis value");
    if (!std::is_sorted(values.begin(), values.end()))
      throw config_error("axis values must be sorted ascending");
    if (workers < 1) throw config_error("workers must be >= 1");
    if (weight_updates < 1) throw config_error("weight_updates must be >= 1");
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

using KvSections = std::map<std::string, std::map<std::string, std::string>>;

// A comment starts at '#' or ';' when at the start of the line or preceded
// by whitespace, and runs to the end of the line.
inline std::string strip_comment(const std::string& line) {
  for (std::size_t i = 0; i < line.size(); ++i) {
    if ((line[i] == '#' || line[i] == ';') &&
        (i == 0 || std::isspace(static_cast<unsigned char>(line[i - 1]))))
      return line.substr(0, i);
  }
  return line;
}

inline KvSections parse_kv_text(std::istream& in, const std::string& origin) {
  KvSections sections;
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(strip_comment(line));
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw config_error(origin + ":" + std::to_string(line_no) + ": malformed section header");
      section = trim(t.substr(1, t.size() - 2));
      sections[section];
      continue;
    }
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw config_error(origin + ":" + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) throw config_error(origin + ":" + std::to_string(line_no) + ": empty key");
    sections[section][key] = value;
  }
  return sections;
}

inline double parse_double(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return d;
  } catch (const std::exception&) {
    throw config_error("bad numeric value '" + v + "' for " + key);
  }
}

inline int parse_int(const std::string& v, const std::string& key) {
  const double d = parse_double(v, key);
  const int i = static_cast<int>(d);
  if (static_cast<double>(i) != d) throw config_error("expected integer value for " + key);
  return i;
}

inline std::uint64_t parse_u64(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const std::uint64_t u = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return u;
  } catch (const std::exception&) {
    throw config_error("bad unsigned value '" + v + "' for " + key);
  }
}

inline bool parse_on_off(const std::string& v, const std::string& key) {
  if (v == "on" || v == "true" || v == "1") return true;
  if (v == "off" || v == "false" || v == "0") return false;
  throw config_error("expected on|off for " + key + ", got '" + v + "'");
}

inline std::vector<std::string> split_csv(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string t = trim(item);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

}  // namespace detail

inline std::vector<double> parse_value_list(const std::string& csv) {
  std::vector<double> out;
  for (const std::string& s : detail::split_csv(csv)) out.push_back(detail::parse_double(s, "values"));
  return out;
}

inline std::vector<Method> parse_method_list(const std::string& csv) {
  std::vector<Method> out;
  for (const std::string& s : detail::split_csv(csv)) {
    const auto m = method_from_string(s);
    if (!m) throw config_error("unknown method '" + s + "'");
    out.push_back(*m);
  }
  return out;
}

inline SweepConfig sweep_config_from_text(std::istream& in, const std::string& origin) {
  SweepConfig cfg;
  const detail::KvSections sections = detail::parse_kv_text(in, origin);
  for (const auto& [section, kv] : sections) {
    for (const auto& [key, value] : kv) {
      const std::string where = origin + ": [" + section + "] " + key;
      if (section == "vlc") {
        if (key == "bandwidth_hz") cfg.phy.vlc_bandwidth = detail::parse_double(value, where);
        else if (key == "noise_psd") cfg.phy.vlc_noise_psd = detail::parse_double(value, where);
        else if (key == "responsivity_a_per_w") cfg.phy.responsivity = detail::parse_double(value, where);
        else if (key == "conversion_w_per_a") cfg.phy.conversion_factor = detail::parse_double(value, where);
        else if (key == "fill_factor") cfg.phy.fill_factor = detail::parse_double(value, where);
        else if (key == "thermal_voltage_v") cfg.phy.thermal_voltage = detail::parse_double(value, where);
        else if (key == "dark_current_a") cfg.phy.dark_current = detail::parse_double(value, where);
        else if (key == "bias_high_a") cfg.phy.bias_high = detail::parse_double(value, where);
        else if (key == "bias_low_a") cfg.phy.bias_low = detail::parse_double(value, where);
        else if (key == "photodetector_area_m2") cfg.base.vlc.photodetector_area = detail::parse_double(value, where);
        else if (key == "half_intensity_angle_deg") cfg.base.vlc.half_intensity_angle_deg = detail::parse_double(value, where);
        else if (key == "optical_filter_gain") cfg.base.vlc.optical_filter_gain = detail::parse_double(value, where);
        else if (key == "refractive_index") cfg.base.vlc.refractive_index = detail::parse_double(value, where);
        else if (key == "fov_semiangle_deg") cfg.base.vlc.fov_semiangle_deg = detail::parse_double(value, where);
        else if (key == "led_height_m") {
          cfg.base.vlc.led_height = detail::parse_double(value, where);
          cfg.base.vlc.ap_position.z = cfg.base.vlc.led_height;
        } else if (key == "user_height_m") cfg.base.vlc.user_height = detail::parse_double(value, where);
        else throw config_error("unknown key " + where);
      } else if (section == "rf") {
        if (key == "bandwidth_hz") cfg.base.rf.bandwidth_hz = detail::parse_double(value, where);
        else if (key == "carrier_hz") cfg.base.rf.carrier_hz = detail::parse_double(value, where);
        else if (key == "breakpoint_m") cfg.base.rf.breakpoint_m = detail::parse_double(value, where);
        else if (key == "shadow_sigma_before_db") cfg.base.rf.shadow_sigma_before_db = detail::parse_double(value, where);
        else if (key == "shadow_sigma_after_db") cfg.base.rf.shadow_sigma_after_db = detail::parse_double(value, where);
        else if (key == "noise_psd_dbm_hz") cfg.base.rf.noise_psd_w_per_hz = dbm_per_hz_to_w_per_hz(detail::parse_double(value, where));
        else if (key == "multipath_gain") cfg.base.rf.multipath_gain = detail::parse_double(value, where);
        else throw config_error("unknown key " + where);
      } else if (section == "sweep") {
        if (key == "axis") cfg.axis = axis_from_string(value);
        else if (key == "values") cfg.values = parse_value_list(value);
        else if (key == "trials") cfg.trials = detail::parse_int(value, where);
        else if (key == "methods") cfg.methods = parse_method_list(value);
        else if (key == "users") cfg.base.user_count = detail::parse_int(value, where);
        else if (key == "cell_radius_m") cfg.base.cell_radius = detail::parse_double(value, where);
        else if (key == "blockage_rate") cfg.base.blockage_rate = detail::parse_double(value, where);
        else if (key == "seed") cfg.seed = detail::parse_u64(value, where);
        else if (key == "shadowing") cfg.base.shadowing = detail::parse_on_off(value, where);
        else if (key == "out") cfg.out = value;
        else if (key == "workers") cfg.workers = detail::parse_int(value, where);
        else if (key == "weight_updates") cfg.weight_updates = detail::parse_int(value, where);
        else throw config_error("unknown key " + where);
      } else {
        throw config_error(origin + ": unknown section [" + section + "]");
      }
    }
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw config_error(origin + ": " + e.what());
  }
  return cfg;
}

inline SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open config file: " + path);
  return sweep_config_from_text(in, path);
}

}  // namespace conoma
