#include "rotcav/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace rotcav {
namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string position_prefix(int line, int column) {
  if (line <= 0) return {};
  return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": ";
}

enum class Kind {
  length, rate, detuning, power, density, velocity, time, volume, angle, frequency,
  number, integer, boolean, text, velocity_list, kappa_list, power_list
};

struct Unit {
  const char* name;
  double factor;
};

const std::vector<Unit>& units_for(Kind kind) {
  static const std::vector<Unit> length{{"nm", 1e-9}, {"um", 1e-6}, {"mm", 1e-3}, {"cm", 1e-2}, {"m", 1.0}};
  // cyclic units are subject to the rate convention; rad/s and 1/s are not
  static const std::vector<Unit> rate{{"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}, {"GHz", 1e9},
                                      {"rad/s", 1.0}, {"1/s", 1.0}};
  static const std::vector<Unit> power{{"uW", 1e-6}, {"mW", 1e-3}, {"W", 1.0}};
  static const std::vector<Unit> density{{"kg/m3", 1.0}, {"g/cm3", 1e3}};
  static const std::vector<Unit> velocity{{"mm/s", 1e-3}, {"m/s", 1.0}};
  static const std::vector<Unit> time{{"ns", 1e-9}, {"us", 1e-6}, {"ms", 1e-3}, {"s", 1.0}};
  static const std::vector<Unit> volume{{"um3", 1e-18}, {"mm3", 1e-9}, {"m3", 1.0}};
  static const std::vector<Unit> angle{{"deg", pi / 180.0}, {"rad", 1.0}};
  static const std::vector<Unit> frequency{{"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}, {"GHz", 1e9}};
  static const std::vector<Unit> kappa{{"kappa", 1.0}};
  static const std::vector<Unit> none;
  switch (kind) {
    case Kind::length: return length;
    case Kind::rate: return rate;
    case Kind::detuning: return rate;  // plus "kappa", handled separately
    case Kind::power: case Kind::power_list: return power;
    case Kind::density: return density;
    case Kind::velocity: case Kind::velocity_list: return velocity;
    case Kind::time: return time;
    case Kind::volume: return volume;
    case Kind::angle: return angle;
    case Kind::frequency: return frequency;
    case Kind::kappa_list: return kappa;
    default: return none;
  }
}

const char* kind_name(Kind kind) {
  switch (kind) {
    case Kind::length: return "a length";
    case Kind::rate: return "a rate";
    case Kind::detuning: return "a detuning";
    case Kind::power: return "a power";
    case Kind::density: return "a mass density";
    case Kind::velocity: return "a velocity";
    case Kind::time: return "a time";
    case Kind::volume: return "a volume";
    case Kind::angle: return "an angle";
    case Kind::frequency: return "a frequency";
    case Kind::number: return "a plain number";
    case Kind::integer: return "an integer";
    case Kind::boolean: return "true or false";
    case Kind::text: return "a name";
    case Kind::velocity_list: return "a list of velocities";
    case Kind::kappa_list: return "a list of detunings in kappa";
    case Kind::power_list: return "a list of powers";
  }
  return "a value";
}

std::string unit_list(Kind kind) {
  std::string out;
  for (const auto& u : units_for(kind)) {
    if (!out.empty()) out += ", ";
    out += u.name;
  }
  if (kind == Kind::detuning) out += ", kappa";
  return out;
}

struct Entry {
  std::string value;
  int line = 0;
  int column = 0;  // column of the value
  int key_column = 0;
};

struct Key {
  const char* section;
  const char* name;
  Kind kind;
  bool required;
  const char* fallback;  // default text, parsed like user input
};

const std::vector<Key>& schema() {
  static const std::vector<Key> keys{
      {"particle", "kind", Kind::text, true, nullptr},
      {"particle", "length", Kind::length, false, "800 nm"},
      {"particle", "radius", Kind::length, false, "25 nm"},
      {"particle", "density", Kind::density, false, "2329 kg/m3"},
      {"particle", "permittivity", Kind::number, false, "12.1"},
      {"cavity", "wavelength", Kind::length, true, nullptr},
      {"cavity", "rate_convention", Kind::text, false, "divided_by_2pi"},
      {"cavity", "linewidth", Kind::rate, true, nullptr},
      {"cavity", "detuning", Kind::detuning, true, nullptr},
      {"cavity", "pump_power", Kind::power, true, nullptr},
      {"cavity", "waist", Kind::length, true, nullptr},
      {"cavity", "mode_volume", Kind::volume, false, nullptr},
      {"cavity", "coupling_ratio", Kind::number, false, nullptr},
      {"integrator", "rel_tol", Kind::number, false, "1e-8"},
      {"integrator", "abs_tol", Kind::number, false, "1e-10"},
      {"integrator", "max_step", Kind::time, false, "0 s"},
      {"integrator", "cavity_mode", Kind::text, false, "dynamic"},
      {"integrator", "radiation_pressure", Kind::boolean, false, "false"},
      {"ensemble", "velocities", Kind::velocity_list, false, "0.1, 0.2, 0.35, 0.5, 0.75, 1, 1.5, 2, 3 m/s"},
      {"ensemble", "trajectories", Kind::integer, false, "2000"},
      {"ensemble", "transverse_spread", Kind::number, false, "0.05"},
      {"ensemble", "rotation_frequency", Kind::frequency, false, "1 MHz"},
      {"ensemble", "start_waists", Kind::number, false, "3"},
      {"ensemble", "depth_fraction", Kind::number, false, "1e-3"},
      {"ensemble", "exit_waists", Kind::number, false, "3"},
      {"ensemble", "hold_crossings", Kind::number, false, "10"},
      {"ensemble", "max_transits", Kind::number, false, "20"},
      {"trajectory", "start_waists", Kind::number, false, "3"},
      {"trajectory", "y0", Kind::length, false, "0 m"},
      {"trajectory", "z0", Kind::length, false, "0 m"},
      {"trajectory", "vx", Kind::velocity, false, "0.5 m/s"},
      {"trajectory", "vy", Kind::velocity, false, "0 m/s"},
      {"trajectory", "vz", Kind::velocity, false, "-0.3 m/s"},
      {"trajectory", "alpha", Kind::angle, false, "0 deg"},
      {"trajectory", "beta", Kind::angle, false, "90 deg"},
      {"trajectory", "rotation_frequency", Kind::frequency, false, "0 Hz"},
      {"trajectory", "duration", Kind::time, false, "0 s"},
      {"trajectory", "output_interval", Kind::time, false, "0 s"},
      {"maps", "z_min", Kind::length, false, "-0.78 um"},
      {"maps", "z_max", Kind::length, false, "0.78 um"},
      {"maps", "z_points", Kind::integer, false, "101"},
      {"maps", "alpha_points", Kind::integer, false, "91"},
      {"maps", "detector_distance", Kind::length, false, "10 cm"},
      {"maps", "theta_points", Kind::integer, false, "91"},
      {"maps", "phi_points", Kind::integer, false, "180"},
      {"maps", "x", Kind::length, false, "0 m"},
      {"maps", "y", Kind::length, false, "0 m"},
      {"maps", "z", Kind::length, false, "0 m"},
      {"maps", "alpha", Kind::angle, false, "0 deg"},
      {"maps", "beta", Kind::angle, false, "90 deg"},
      {"cooling", "detunings", Kind::kappa_list, false, "-0.5, -1.2, -2, -4 kappa"},
      {"cooling", "powers", Kind::power_list, false, "1, 10 mW"},
      {"cooling", "degree", Kind::integer, false, "40"},
      {"run", "seed", Kind::integer, false, "1"},
      {"run", "threads", Kind::integer, false, "0"},
  };
  return keys;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Value parsing ---------------------------------------------------------------

struct Context {
  std::string where;  // "section.key"
  int line = 0;
  int column = 0;
  [[noreturn]] void fail(const std::string& message) const {
    throw ConfigError(message, line, column);
  }
};

double parse_number(const std::string& token, const Context& ctx) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = first + token.size();
  if (!token.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v))
    ctx.fail("'" + ctx.where + "' has invalid number '" + token + "'");
  return v;
}

// Splits "1.5 um" / "1.5um" into number and unit text.
std::pair<std::string, std::string> split_unit(const std::string& text) {
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    const bool numeric = std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-' ||
                         c == '+' ||
                         ((c == 'e' || c == 'E') && i > 0 &&
                          (std::isdigit(static_cast<unsigned char>(text[i - 1])) || text[i - 1] == '.'));
    if (!numeric) break;
    ++i;
  }
  return {trim(text.substr(0, i)), trim(text.substr(i))};
}

double apply_unit(Kind kind, double number, const std::string& unit, const Context& ctx) {
  if (unit.empty())
    ctx.fail("'" + ctx.where + "' needs a unit suffix (" + unit_list(kind) + ")");
  for (const auto& u : units_for(kind))
    if (unit == u.name) return number * u.factor;
  ctx.fail("'" + ctx.where + "' expects " + kind_name(kind) + " (" + unit_list(kind) +
           "), got unit '" + unit + "'");
}

struct Resolver {
  RunConfig& cfg;
  RateConvention convention = RateConvention::angular;
  double kappa = 0.0;

  // Rates quoted in cyclic units follow the configured convention.
  double rate(double number, const std::string& unit, const Context& ctx) const {
    const double base = apply_unit(Kind::rate, number, unit, ctx);
    const bool cyclic = unit != "rad/s" && unit != "1/s";
    return cyclic && convention == RateConvention::divided_by_2pi ? two_pi * base : base;
  }

  double scalar(Kind kind, const std::string& text, const Context& ctx) const {
    const auto [num, unit] = split_unit(text);
    if (num.empty()) ctx.fail("'" + ctx.where + "' expects " + kind_name(kind) + ", got '" + text + "'");
    const double v = parse_number(num, ctx);
    switch (kind) {
      case Kind::number:
        if (!unit.empty()) ctx.fail("'" + ctx.where + "' is dimensionless, got unit '" + unit + "'");
        return v;
      case Kind::rate: return rate(v, unit, ctx);
      case Kind::detuning:
        if (unit == "kappa") {
          if (!(kappa > 0.0)) ctx.fail("'" + ctx.where + "' in units of kappa needs a linewidth");
          return v * kappa;
        }
        return rate(v, unit, ctx);
      default: return apply_unit(kind, v, unit, ctx);
    }
  }

  // "a, b, c unit"
  std::vector<double> list(Kind element, const std::string& text, const Context& ctx) const {
    const auto [body, unit] = [&]() -> std::pair<std::string, std::string> {
      const auto pos = text.find_last_of("0123456789.");
      if (pos == std::string::npos) return {text, ""};
      return {text.substr(0, pos + 1), trim(text.substr(pos + 1))};
    }();
    std::vector<double> out;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) ctx.fail("'" + ctx.where + "' has an empty list entry");
      const double v = parse_number(item, ctx);
      if (element == Kind::kappa_list) {
        if (unit != "kappa") ctx.fail("'" + ctx.where + "' needs the suffix kappa");
        out.push_back(v);
      } else {
        out.push_back(apply_unit(element, v, unit, ctx));
      }
    }
    if (out.empty()) ctx.fail("'" + ctx.where + "' is an empty list");
    return out;
  }
};

long parse_integer(const std::string& text, const Context& ctx) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    ctx.fail("'" + ctx.where + "' expects an integer, got '" + text + "'");
  return v;
}

bool parse_bool(const std::string& text, const Context& ctx) {
  if (text == "true" || text == "on" || text == "yes") return true;
  if (text == "false" || text == "off" || text == "no") return false;
  ctx.fail("'" + ctx.where + "' expects true or false, got '" + text + "'");
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (double x : v) {
    if (!out.empty()) out += ",";
    out += format_double(x);
  }
  return out;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

ConfigError::ConfigError(const std::string& message, int line, int column)
    : std::runtime_error(position_prefix(line, column) + message), line_(line), column_(column) {}

std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

Model RunConfig::model() const {
  CavityConfig cav = cavity;
  if (!(cav.mode_volume > 0.0)) {
    if (!coupling_ratio) throw ConfigError("cavity needs mode_volume or coupling_ratio");
    cav.mode_volume = calibrate_mode_volume(particle, cav, *coupling_ratio);
  }
  return Model(particle, cav);
}

std::string RunConfig::hash() const {
  std::string canon;
  for (const auto& [k, v] : resolved)
    if (k != "run.threads") canon += k + "=" + v + "\n";
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, fnv1a(canon));
  return buf;
}

RunConfig parse_config_string(const std::string& text, const std::string& source) {
  std::map<std::string, Entry> entries;
  std::set<std::string> sections_seen;
  std::set<std::string> known_sections;
  for (const auto& k : schema()) known_sections.insert(k.section);

  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    if (trim(line).empty()) continue;
    const int indent = static_cast<int>(line.find_first_not_of(" \t")) + 1;
    const std::string body = trim(line);
    if (body.front() == '[') {
      if (body.back() != ']') throw ConfigError("unterminated section header", line_no, indent);
      section = trim(body.substr(1, body.size() - 2));
      if (!known_sections.count(section)) {
        std::string best;
        std::size_t best_d = 1000;
        for (const auto& s : known_sections) {
          const std::size_t d = edit_distance(section, s);
          if (d < best_d) best_d = d, best = s;
        }
        throw ConfigError("unknown section [" + section + "]" +
                              (best_d <= 3 ? "; did you mean [" + best + "]?" : ""),
                          line_no, indent + 1);
      }
      if (!sections_seen.insert(section).second)
        throw ConfigError("section [" + section + "] appears twice", line_no, indent);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line_no, indent);
    if (section.empty()) throw ConfigError("key outside of any section", line_no, indent);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto value_col = line.find_first_not_of(" \t", eq + 1);
    const int column = static_cast<int>(value_col == std::string::npos ? eq + 1 : value_col) + 1;

    const auto it = std::find_if(schema().begin(), schema().end(), [&](const Key& k) {
      return section == k.section && key == k.name;
    });
    if (it == schema().end()) {
      std::string best;
      std::size_t best_d = 1000;
      for (const auto& k : schema()) {
        if (section != k.section) continue;
        const std::size_t d = edit_distance(key, k.name);
        if (d < best_d) best_d = d, best = k.name;
      }
      std::string msg = "unknown key '" + key + "' in [" + section + "]";
      if (!best.empty()) msg += "; nearest valid key is '" + best + "'";
      throw ConfigError(msg, line_no, indent);
    }
    if (value.empty()) throw ConfigError("key '" + key + "' has no value", line_no, column);
    const std::string full = section + "." + key;
    if (entries.count(full))
      throw ConfigError("key '" + key + "' given twice in [" + section + "]", line_no, indent);
    entries[full] = Entry{value, line_no, column, indent};
  }

  RunConfig cfg;
  cfg.source = source;
  Resolver res{cfg};

  // Fetch the text for a key, falling back to its default.
  auto get = [&](const char* sec, const char* name) -> std::optional<std::pair<std::string, Context>> {
    const std::string full = std::string(sec) + "." + name;
    const Key& k = *std::find_if(schema().begin(), schema().end(), [&](const Key& x) {
      return std::string(x.section) == sec && std::string(x.name) == name;
    });
    const auto it = entries.find(full);
    if (it != entries.end()) return std::make_pair(it->second.value, Context{full, it->second.line, it->second.column});
    if (k.required) throw ConfigError("missing required key '" + std::string(name) + "' in [" + sec + "]");
    if (!k.fallback) return std::nullopt;
    cfg.defaulted.push_back(full);
    return std::make_pair(std::string(k.fallback), Context{full, 0, 0});
  };
  auto record = [&](const char* sec, const char* name, const std::string& canonical) {
    cfg.resolved[std::string(sec) + "." + name] = canonical;
  };
  auto scalar = [&](const char* sec, const char* name, Kind kind) -> std::optional<double> {
    const auto v = get(sec, name);
    if (!v) return std::nullopt;
    const double x = res.scalar(kind, v->first, v->second);
    record(sec, name, format_double(x));
    return x;
  };
  auto number = [&](const char* sec, const char* name, Kind kind) { return *scalar(sec, name, kind); };
  auto integer = [&](const char* sec, const char* name) {
    const auto v = get(sec, name);
    const long x = parse_integer(v->first, v->second);
    record(sec, name, std::to_string(x));
    return std::make_pair(x, v->second);
  };
  auto word = [&](const char* sec, const char* name) {
    const auto v = get(sec, name);
    record(sec, name, v->first);
    return *v;
  };
  auto list = [&](const char* sec, const char* name, Kind kind) {
    const auto v = get(sec, name);
    auto xs = res.list(kind, v->first, v->second);
    record(sec, name, join(xs));
    return xs;
  };
  auto guarded = [](const Context& ctx, const auto& fn) {
    try {
      return fn();
    } catch (const std::invalid_argument& e) {
      throw ConfigError("'" + ctx.where + "': " + e.what(), ctx.line, ctx.column);
    }
  };

  // [particle]
  {
    const auto kind = word("particle", "kind");
    cfg.particle.kind = guarded(kind.second, [&] { return particle_kind_from_string(kind.first); });
    cfg.particle.length = number("particle", "length", Kind::length);
    cfg.particle.radius = number("particle", "radius", Kind::length);
    cfg.particle.mass_density = number("particle", "density", Kind::density);
    cfg.particle.permittivity = number("particle", "permittivity", Kind::number);
    try {
      cfg.particle.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("[particle]: ") + e.what());
    }
  }
  // [cavity]
  {
    cfg.cavity.wavelength = number("cavity", "wavelength", Kind::length);
    const auto conv = word("cavity", "rate_convention");
    res.convention = guarded(conv.second, [&] { return rate_convention_from_string(conv.first); });
    cfg.cavity.rate_convention = res.convention;
    cfg.cavity.linewidth = number("cavity", "linewidth", Kind::rate);
    res.kappa = cfg.cavity.linewidth;
    cfg.cavity.detuning = number("cavity", "detuning", Kind::detuning);
    cfg.cavity.pump_power = number("cavity", "pump_power", Kind::power);
    cfg.cavity.waist = number("cavity", "waist", Kind::length);
    const auto vc = scalar("cavity", "mode_volume", Kind::volume);
    const auto ratio = scalar("cavity", "coupling_ratio", Kind::number);
    if (vc && ratio) throw ConfigError("give either mode_volume or coupling_ratio in [cavity], not both",
                                       entries["cavity.coupling_ratio"].line, entries["cavity.coupling_ratio"].key_column);
    if (!vc && !ratio) throw ConfigError("missing required key 'mode_volume' or 'coupling_ratio' in [cavity]");
    if (vc) cfg.cavity.mode_volume = *vc;
    cfg.coupling_ratio = ratio;
    try {
      cfg.cavity.validate();
      cfg.model();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("[cavity]: ") + e.what());
    }
  }
  // [integrator]
  {
    auto& ic = cfg.integrator;
    ic.rel_tol = number("integrator", "rel_tol", Kind::number);
    ic.abs_tol = number("integrator", "abs_tol", Kind::number);
    ic.max_step = number("integrator", "max_step", Kind::time);
    const auto mode = word("integrator", "cavity_mode");
    ic.cavity_mode = guarded(mode.second, [&] { return cavity_mode_from_string(mode.first); });
    const auto rp = word("integrator", "radiation_pressure");
    ic.radiation_pressure = parse_bool(rp.first, rp.second);
    try {
      ic.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("[integrator]: ") + e.what());
    }
  }
  // [ensemble]
  {
    auto& ec = cfg.ensemble;
    ec.velocities = list("ensemble", "velocities", Kind::velocity_list);
    const auto n = integer("ensemble", "trajectories");
    if (n.first < 1) throw ConfigError("'ensemble.trajectories' must be positive", n.second.line, n.second.column);
    ec.trajectories = static_cast<int>(n.first);
    ec.launch.transverse_spread = number("ensemble", "transverse_spread", Kind::number);
    ec.launch.rotation_frequency = number("ensemble", "rotation_frequency", Kind::frequency);
    ec.launch.start_waists = number("ensemble", "start_waists", Kind::number);
    ec.capture.rule.depth_fraction = number("ensemble", "depth_fraction", Kind::number);
    ec.capture.rule.exit_waists = number("ensemble", "exit_waists", Kind::number);
    ec.capture.hold_crossings = number("ensemble", "hold_crossings", Kind::number);
    ec.capture.max_transits = number("ensemble", "max_transits", Kind::number);
    ec.capture.integrator = cfg.integrator;
    for (double v : ec.velocities)
      if (!(v > 0.0)) throw ConfigError("'ensemble.velocities' must all be positive");
    try {
      ec.launch.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("[ensemble]: ") + e.what());
    }
  }
  // [trajectory]
  {
    auto& t = cfg.trajectory;
    t.start_waists = number("trajectory", "start_waists", Kind::number);
    t.y0 = number("trajectory", "y0", Kind::length);
    t.z0 = number("trajectory", "z0", Kind::length);
    t.vx = number("trajectory", "vx", Kind::velocity);
    t.vy = number("trajectory", "vy", Kind::velocity);
    t.vz = number("trajectory", "vz", Kind::velocity);
    t.alpha = number("trajectory", "alpha", Kind::angle);
    t.beta = number("trajectory", "beta", Kind::angle);
    t.rotation_frequency = number("trajectory", "rotation_frequency", Kind::frequency);
    t.duration = number("trajectory", "duration", Kind::time);
    t.output_interval = number("trajectory", "output_interval", Kind::time);
    if (t.duration < 0.0 || t.output_interval < 0.0)
      throw ConfigError("[trajectory]: duration and output_interval must be non-negative");
  }
  // [maps]
  {
    auto& m = cfg.maps;
    m.z_min = number("maps", "z_min", Kind::length);
    m.z_max = number("maps", "z_max", Kind::length);
    m.z_points = static_cast<int>(integer("maps", "z_points").first);
    m.alpha_points = static_cast<int>(integer("maps", "alpha_points").first);
    m.detector_distance = number("maps", "detector_distance", Kind::length);
    m.theta_points = static_cast<int>(integer("maps", "theta_points").first);
    m.phi_points = static_cast<int>(integer("maps", "phi_points").first);
    m.x = number("maps", "x", Kind::length);
    m.y = number("maps", "y", Kind::length);
    m.z = number("maps", "z", Kind::length);
    m.alpha = number("maps", "alpha", Kind::angle);
    m.beta = number("maps", "beta", Kind::angle);
    if (m.z_points < 2 || m.alpha_points < 2 || m.theta_points < 2 || m.phi_points < 1)
      throw ConfigError("[maps]: grids need at least two points per axis");
    if (!(m.z_max > m.z_min)) throw ConfigError("[maps]: z_max must exceed z_min");
  }
  // [cooling]
  {
    cfg.cooling.detunings = list("cooling", "detunings", Kind::kappa_list);
    cfg.cooling.powers = list("cooling", "powers", Kind::power_list);
    const auto d = integer("cooling", "degree");
    if (d.first < 20 || d.first > 50)
      throw ConfigError("'cooling.degree' must lie in [20, 50]", d.second.line, d.second.column);
    cfg.cooling.degree = static_cast<int>(d.first);
  }
  // [run]
  {
    const auto seed = integer("run", "seed");
    if (seed.first < 0) throw ConfigError("'run.seed' must be non-negative", seed.second.line, seed.second.column);
    cfg.seed = static_cast<std::uint64_t>(seed.first);
    cfg.ensemble.master_seed = cfg.seed;
    const auto threads = integer("run", "threads");
    if (threads.first < 0) throw ConfigError("'run.threads' must be non-negative", threads.second.line, threads.second.column);
    cfg.ensemble.threads = static_cast<int>(threads.first);
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_string(ss.str(), path);
}

}  // namespace rotcav
