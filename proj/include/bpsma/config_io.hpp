#pragma once

// Sectioned key-value configuration files with mandatory units.
//
//   # comment
//   [material]
//   E_A = 75 GPa
//   C_A = 10 MPa/degC
//   r_A = 100 uOhm*cm
//   [drive]
//   segment = 15 V, 10 s
//
// Values are converted to SI on load (temperatures stay in degC). Dimensional
// keys must carry a unit; dimensionless and count keys must not.

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bpsma/config.hpp"
#include "bpsma/drive.hpp"
#include "bpsma/error.hpp"

namespace bpsma {

enum class Dimension {
  None,
  Count,
  Boolean,
  Text,
  Pressure,
  PressurePerTemperature,
  Temperature,
  Length,
  Area,
  Mass,
  Angle,
  Density,
  SpecificHeat,
  SpecificEnergy,
  Resistivity,
  HeatTransfer,
  Stiffness,
  Time,
  Voltage,
};

namespace detail {

struct UnitScale {
  double scale;
  double offset = 0.0;
};

/// Folds unicode symbols and spelling variants into one ASCII form.
inline std::string canonical_unit(std::string_view raw) {
  std::string s;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const auto rest = raw.substr(i);
    auto take = [&](std::string_view from, std::string_view to) {
      if (rest.substr(0, from.size()) == from) {
        s += to;
        i += from.size() - 1;
        return true;
      }
      return false;
    };
    if (take("\xC2\xB0" "C", "degC") || take("\xC2\xB0", "deg") || take("\xCE\xBC", "u") ||
        take("\xC2\xB5", "u") || take("\xCE\xA9", "Ohm") || take("\xC2\xB7", "*") || take("\xC2\xB2", "^2") ||
        take("\xC2\xB3", "^3")) {
      continue;
    }
    const char c = raw[i];
    if (c == ' ' || c == '(' || c == ')') continue;
    s += (c == '-' || c == '.') ? '*' : c;
  }
  // "ohm" and "Ohm" are both common.
  for (auto pos = s.find("ohm"); pos != std::string::npos; pos = s.find("ohm", pos)) s[pos] = 'O';
  return s;
}

inline const std::map<std::string, UnitScale>& units_for(Dimension d) {
  static const std::map<Dimension, std::map<std::string, UnitScale>> table = {
      {Dimension::Pressure, {{"Pa", {1.0}}, {"kPa", {1e3}}, {"MPa", {1e6}}, {"GPa", {1e9}}}},
      {Dimension::PressurePerTemperature,
       {{"Pa/degC", {1.0}}, {"Pa/K", {1.0}}, {"kPa/degC", {1e3}}, {"kPa/K", {1e3}},
        {"MPa/degC", {1e6}}, {"MPa/K", {1e6}}, {"GPa/degC", {1e9}}, {"GPa/K", {1e9}}}},
      {Dimension::Temperature, {{"degC", {1.0}}, {"C", {1.0}}, {"K", {1.0, -273.15}}}},
      {Dimension::Length, {{"m", {1.0}}, {"cm", {1e-2}}, {"mm", {1e-3}}, {"um", {1e-6}}}},
      {Dimension::Area, {{"m^2", {1.0}}, {"cm^2", {1e-4}}, {"mm^2", {1e-6}}}},
      {Dimension::Mass, {{"kg", {1.0}}, {"g", {1e-3}}, {"mg", {1e-6}}}},
      {Dimension::Angle, {{"rad", {1.0}}, {"deg", {std::numbers::pi / 180.0}}}},
      {Dimension::Density, {{"kg/m^3", {1.0}}, {"g/cm^3", {1e3}}}},
      {Dimension::SpecificHeat,
       {{"J/kg*K", {1.0}}, {"J/kg/K", {1.0}}, {"J/kgK", {1.0}}, {"J/kg*degC", {1.0}}, {"kJ/kg*K", {1e3}}}},
      {Dimension::SpecificEnergy, {{"J/kg", {1.0}}, {"kJ/kg", {1e3}}, {"J/g", {1e3}}}},
      {Dimension::Resistivity,
       {{"Ohm*m", {1.0}}, {"Ohm*cm", {1e-2}}, {"uOhm*cm", {1e-8}}, {"uOhm*m", {1e-6}}}},
      {Dimension::HeatTransfer, {{"W/m^2*K", {1.0}}, {"W/m^2/K", {1.0}}, {"W/m^2K", {1.0}}, {"W/m^2*degC", {1.0}}}},
      {Dimension::Stiffness, {{"N/m", {1.0}}, {"N/mm", {1e3}}, {"kN/m", {1e3}}}},
      {Dimension::Time, {{"s", {1.0}}, {"ms", {1e-3}}, {"us", {1e-6}}, {"min", {60.0}}}},
      {Dimension::Voltage, {{"V", {1.0}}, {"mV", {1e-3}}}},
  };
  static const std::map<std::string, UnitScale> empty;
  const auto it = table.find(d);
  return it == table.end() ? empty : it->second;
}

/// SI unit written back by write_config.
inline std::string_view si_unit(Dimension d) {
  switch (d) {
    case Dimension::Pressure: return "Pa";
    case Dimension::PressurePerTemperature: return "Pa/degC";
    case Dimension::Temperature: return "degC";
    case Dimension::Length: return "m";
    case Dimension::Area: return "m^2";
    case Dimension::Mass: return "kg";
    case Dimension::Angle: return "rad";
    case Dimension::Density: return "kg/m^3";
    case Dimension::SpecificHeat: return "J/(kg*K)";
    case Dimension::SpecificEnergy: return "J/kg";
    case Dimension::Resistivity: return "Ohm*m";
    case Dimension::HeatTransfer: return "W/(m^2*K)";
    case Dimension::Stiffness: return "N/m";
    case Dimension::Time: return "s";
    case Dimension::Voltage: return "V";
    default: return "";
  }
}

inline std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

/// Splits "<number> <unit>" and converts to SI.
inline double parse_quantity(std::string_view text, Dimension d, const std::string& where) {
  text = trim(text);
  std::size_t split = 0;
  while (split < text.size()) {
    const char c = text[split];
    const bool numeric = (c >= '0' && c <= '9') || c == '.' || c == '-' || c == '+' ||
                         ((c == 'e' || c == 'E') && split > 0 && split + 1 < text.size() &&
                          ((text[split + 1] >= '0' && text[split + 1] <= '9') || text[split + 1] == '-' ||
                           text[split + 1] == '+'));
    if (!numeric) break;
    ++split;
  }
  const double value = parse_number(text.substr(0, split), where);
  const auto unit = canonical_unit(text.substr(split));
  if (d == Dimension::None) {
    if (!unit.empty() && unit != "1" && unit != "*") {
      throw UnitError(where + ": dimensionless value must not carry a unit, got '" + unit + "'");
    }
    return value;
  }
  if (unit.empty()) throw UnitError(where + ": missing unit");
  const auto& units = units_for(d);
  const auto it = units.find(unit);
  if (it == units.end()) throw UnitError(where + ": unit '" + unit + "' is not valid here");
  return value * it->second.scale + it->second.offset;
}

}  // namespace detail

namespace detail {

struct Entry {
  std::string value;
  int line;
};

struct RawConfig {
  std::string source;
  std::map<std::string, Entry> values;  // "section.key"
  std::vector<Entry> segments;          // repeated drive.segment lines
};

inline RawConfig parse_sections(std::istream& in, const std::string& source) {
  RawConfig raw{source, {}, {}};
  std::string section;
  std::string line;
  int number = 0;
  auto here = [&] { return source + ":" + std::to_string(number); };
  while (std::getline(in, line)) {
    ++number;
    auto text = std::string_view(line);
    if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    text = trim(text);
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']') throw ParseError(here() + ": unterminated section header");
      section = std::string(trim(text.substr(1, text.size() - 2)));
      if (section.empty()) throw ParseError(here() + ": empty section name");
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ParseError(here() + ": expected 'key = value'");
    const auto key = std::string(trim(text.substr(0, eq)));
    const auto value = std::string(trim(text.substr(eq + 1)));
    if (key.empty()) throw ParseError(here() + ": empty key");
    if (section.empty()) throw ParseError(here() + ": key '" + key + "' outside of a section");
    const auto path = section + "." + key;
    if (path == "drive.segment") {
      raw.segments.push_back({value, number});
      continue;
    }
    if (!raw.values.emplace(path, Entry{value, number}).second) {
      throw ParseError(here() + ": duplicate key '" + path + "'");
    }
  }
  return raw;
}

class Reader {
 public:
  explicit Reader(RawConfig raw) : raw_(std::move(raw)) {}

  template <typename Assign>
  void quantity(const std::string& path, Dimension d, bool required, Assign assign) {
    const auto it = raw_.values.find(path);
    used_.insert(path);
    if (it == raw_.values.end()) {
      if (required) throw ConfigError(raw_.source + ": missing required key '" + path + "'");
      return;
    }
    assign(parse_quantity(it->second.value, d, where(path, it->second.line)));
  }

  void count(const std::string& path, bool required, int& out) {
    quantity(path, Dimension::None, required, [&](double v) {
      if (v != std::floor(v) || std::abs(v) > 1e9) {
        throw ParseError(where(path, raw_.values.at(path).line) + ": expected an integer");
      }
      out = static_cast<int>(v);
    });
  }

  void boolean(const std::string& path, bool& out) {
    const auto it = raw_.values.find(path);
    used_.insert(path);
    if (it == raw_.values.end()) return;
    if (it->second.value == "true") out = true;
    else if (it->second.value == "false") out = false;
    else throw ParseError(where(path, it->second.line) + ": expected true or false");
  }

  std::optional<std::string> text(const std::string& path) {
    used_.insert(path);
    const auto it = raw_.values.find(path);
    if (it == raw_.values.end()) return std::nullopt;
    return it->second.value;
  }

  bool has(const std::string& path) const { return raw_.values.count(path) > 0; }

  const std::vector<Entry>& segments() const { return raw_.segments; }
  const std::string& source() const { return raw_.source; }

  void reject_unknown() const {
    for (const auto& [path, entry] : raw_.values) {
      if (!used_.count(path)) throw ConfigError(where(path, entry.line) + ": unknown key '" + path + "'");
    }
  }

  std::string where(const std::string& path, int line) const {
    return raw_.source + ":" + std::to_string(line) + ": " + path;
  }

 private:
  RawConfig raw_;
  std::set<std::string> used_;
};

}  // namespace detail

/// Parses and validates a configuration. `source` names the input in messages.
inline ActuatorConfig parse_config(std::istream& in, const std::string& source = "<config>") {
  using detail::Reader;
  Reader r(detail::parse_sections(in, source));
  ActuatorConfig c;
  auto& m = c.material;
  auto set = [](double& field) { return [&field](double v) { field = v; }; };
  auto set_opt = [](std::optional<double>& field) { return [&field](double v) { field = v; }; };

  r.quantity("material.E_A", Dimension::Pressure, true, set(m.E_A));
  r.quantity("material.E_M", Dimension::Pressure, true, set(m.E_M));
  r.quantity("material.theta_T", Dimension::PressurePerTemperature, true, set(m.theta_T));
  r.quantity("material.eps_L", Dimension::None, true, set(m.eps_L));
  r.quantity("material.C_A", Dimension::PressurePerTemperature, true, set(m.C_A));
  r.quantity("material.C_M", Dimension::PressurePerTemperature, true, set(m.C_M));
  r.quantity("material.A_s", Dimension::Temperature, true, set(m.A_s));
  r.quantity("material.A_f", Dimension::Temperature, true, set(m.A_f));
  r.quantity("material.M_s", Dimension::Temperature, true, set(m.M_s));
  r.quantity("material.M_f", Dimension::Temperature, true, set(m.M_f));
  r.quantity("material.A_s0", Dimension::Temperature, false, set_opt(m.A_s0));
  r.quantity("material.A_f0", Dimension::Temperature, false, set_opt(m.A_f0));
  r.quantity("material.rho", Dimension::Density, true, set(m.rho));
  r.quantity("material.c_p", Dimension::SpecificHeat, true, set(m.c_p));
  r.quantity("material.dH", Dimension::SpecificEnergy, true, set(m.dH));
  r.quantity("material.r_A", Dimension::Resistivity, true, set(m.r_A));
  r.quantity("material.r_M", Dimension::Resistivity, true, set(m.r_M));

  r.count("geometry.n", true, c.geometry.n);
  r.quantity("geometry.alpha", Dimension::Angle, true, set(c.geometry.alpha));
  r.quantity("geometry.l_0", Dimension::Length, true, set(c.geometry.l_0));
  r.quantity("geometry.d", Dimension::Length, true, set(c.geometry.d));

  r.quantity("spring.K_x", Dimension::Stiffness, true, set(c.spring.K_x));
  r.quantity("spring.x_0", Dimension::Length, true, set(c.spring.x_0));
  c.spring.label = r.text("spring.label").value_or("");

  r.count("network.n_series", false, c.network.n_series);
  r.count("network.n_parallel", false, c.network.n_parallel);
  r.quantity("network.l_branch", Dimension::Length, false, set(c.network.l_branch));

  double h_T = 0.0;
  double T_inf = 0.0;
  r.quantity("thermal.h_T", Dimension::HeatTransfer, true, set(h_T));
  r.quantity("thermal.T_inf", Dimension::Temperature, true, set(T_inf));
  std::optional<double> m_wire;
  std::optional<double> A_c;
  r.quantity("thermal.m_wire", Dimension::Mass, false, set_opt(m_wire));
  r.quantity("thermal.A_c", Dimension::Area, false, set_opt(A_c));

  auto& s = c.solver;
  r.quantity("solver.dt", Dimension::Time, false, set(s.dt));
  r.quantity("solver.output_interval", Dimension::Time, false, set(s.output_interval));
  r.quantity("solver.fixpoint_tol", Dimension::None, false, set(s.fixpoint_tol));
  r.count("solver.max_iters", false, s.max_iters);
  r.quantity("solver.overtemp_warning", Dimension::Temperature, false, set(s.overtemp_warning));
  r.boolean("solver.exact_geometry", s.exact_geometry);

  if (r.has("hsam.factor") && (r.has("hsam.d_upper") || r.has("hsam.d_lower"))) {
    throw ConfigError(source + ": give either hsam.factor or hsam.d_upper/hsam.d_lower, not both");
  }
  if (r.has("hsam.factor")) {
    HsamParams h;
    r.quantity("hsam.factor", Dimension::None, true, set(h.factor));
    c.hsam = h;
  } else if (r.has("hsam.d_upper") || r.has("hsam.d_lower")) {
    double up = 0.0;
    double low = 0.0;
    r.quantity("hsam.d_upper", Dimension::Length, true, set(up));
    r.quantity("hsam.d_lower", Dimension::Length, true, set(low));
    c.hsam = HsamParams{factor_from_pistons(up, low)};
  }

  if (!r.segments().empty()) {
    DriveProfile drive;
    for (const auto& seg : r.segments()) {
      const auto where = r.where("drive.segment", seg.line);
      const auto comma = seg.value.find(',');
      if (comma == std::string::npos) throw ParseError(where + ": expected '<voltage>, <duration>'");
      const std::string_view v(seg.value);
      drive.segments.push_back({detail::parse_quantity(v.substr(comma + 1), Dimension::Time, where),
                                detail::parse_quantity(v.substr(0, comma), Dimension::Voltage, where)});
    }
    c.drive = drive;
  }
  r.reject_unknown();

  c.thermal = derive_thermal(c.material, c.geometry, h_T, T_inf);
  if (m_wire) c.thermal.m_wire = *m_wire;
  if (A_c) c.thermal.A_c = *A_c;
  try {
    validate(c);
  } catch (const ConfigError& e) {
    throw ConfigError(source + ": " + e.what());
  }
  return c;
}

inline ActuatorConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  return parse_config(in, path);
}

/// Serializes in SI units with shortest round-trip number formatting, so
/// parse_config(write_config(c)) == c.
inline void write_config(std::ostream& out, const ActuatorConfig& c) {
  using detail::format_double;
  auto q = [&](std::string_view key, double v, Dimension d) {
    out << key << " = " << format_double(v);
    const auto unit = detail::si_unit(d);
    if (!unit.empty()) out << ' ' << unit;
    out << '\n';
  };
  const auto& m = c.material;
  out << "[material]\n";
  q("E_A", m.E_A, Dimension::Pressure);
  q("E_M", m.E_M, Dimension::Pressure);
  q("theta_T", m.theta_T, Dimension::PressurePerTemperature);
  q("eps_L", m.eps_L, Dimension::None);
  q("C_A", m.C_A, Dimension::PressurePerTemperature);
  q("C_M", m.C_M, Dimension::PressurePerTemperature);
  q("A_s", m.A_s, Dimension::Temperature);
  q("A_f", m.A_f, Dimension::Temperature);
  q("M_s", m.M_s, Dimension::Temperature);
  q("M_f", m.M_f, Dimension::Temperature);
  if (m.A_s0) q("A_s0", *m.A_s0, Dimension::Temperature);
  if (m.A_f0) q("A_f0", *m.A_f0, Dimension::Temperature);
  q("rho", m.rho, Dimension::Density);
  q("c_p", m.c_p, Dimension::SpecificHeat);
  q("dH", m.dH, Dimension::SpecificEnergy);
  q("r_A", m.r_A, Dimension::Resistivity);
  q("r_M", m.r_M, Dimension::Resistivity);
  out << "\n[geometry]\n";
  out << "n = " << c.geometry.n << '\n';
  q("alpha", c.geometry.alpha, Dimension::Angle);
  q("l_0", c.geometry.l_0, Dimension::Length);
  q("d", c.geometry.d, Dimension::Length);
  out << "\n[spring]\n";
  q("K_x", c.spring.K_x, Dimension::Stiffness);
  q("x_0", c.spring.x_0, Dimension::Length);
  if (!c.spring.label.empty()) out << "label = " << c.spring.label << '\n';
  out << "\n[network]\n";
  out << "n_series = " << c.network.n_series << '\n';
  out << "n_parallel = " << c.network.n_parallel << '\n';
  q("l_branch", c.network.l_branch, Dimension::Length);
  out << "\n[thermal]\n";
  q("h_T", c.thermal.h_T, Dimension::HeatTransfer);
  q("T_inf", c.thermal.T_inf, Dimension::Temperature);
  q("m_wire", c.thermal.m_wire, Dimension::Mass);
  q("A_c", c.thermal.A_c, Dimension::Area);
  out << "\n[solver]\n";
  q("dt", c.solver.dt, Dimension::Time);
  q("output_interval", c.solver.output_interval, Dimension::Time);
  q("fixpoint_tol", c.solver.fixpoint_tol, Dimension::None);
  out << "max_iters = " << c.solver.max_iters << '\n';
  q("overtemp_warning", c.solver.overtemp_warning, Dimension::Temperature);
  out << "exact_geometry = " << (c.solver.exact_geometry ? "true" : "false") << '\n';
  if (c.hsam) {
    out << "\n[hsam]\n";
    q("factor", c.hsam->factor, Dimension::None);
  }
  if (c.drive) {
    out << "\n[drive]\n";
    for (const auto& s : c.drive->segments) {
      out << "segment = " << format_double(s.voltage) << " V, " << format_double(s.duration) << " s\n";
    }
  }
}

inline std::string write_config(const ActuatorConfig& c) {
  std::ostringstream os;
  write_config(os, c);
  return os.str();
}

}  // namespace bpsma
