#include "terradeform/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <cmath>
#include <sstream>
#include <utility>

namespace terradeform {

namespace {

struct Entry {
  std::string key;
  std::string value;
  int line;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(std::string_view v) {
  std::string_view s = v;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw std::invalid_argument("expected a number, got '" + std::string(v) + "'");
  return out;
}

int to_int(std::string_view v) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty())
    throw std::invalid_argument("expected an integer, got '" + std::string(v) + "'");
  return out;
}

bool to_bool(std::string_view v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("expected true or false, got '" + std::string(v) + "'");
}

using Setter = std::function<void(ScenarioConfig&, std::string_view)>;

Setter num(double ScenarioConfig::*field) {
  return [field](ScenarioConfig& c, std::string_view v) { c.*field = to_double(v); };
}

template <typename Obj>
Setter num(Obj ScenarioConfig::*obj, double Obj::*field) {
  return [obj, field](ScenarioConfig& c, std::string_view v) { (c.*obj).*field = to_double(v); };
}

template <typename Obj>
Setter integer(Obj ScenarioConfig::*obj, int Obj::*field) {
  return [obj, field](ScenarioConfig& c, std::string_view v) { (c.*obj).*field = to_int(v); };
}

template <typename Obj>
Setter text(Obj ScenarioConfig::*obj, std::string Obj::*field) {
  return [obj, field](ScenarioConfig& c, std::string_view v) { (c.*obj).*field = std::string(v); };
}

template <typename Obj>
Setter flag(Obj ScenarioConfig::*obj, bool Obj::*field) {
  return [obj, field](ScenarioConfig& c, std::string_view v) { (c.*obj).*field = to_bool(v); };
}

const std::vector<std::pair<std::string, Setter>>& setters() {
  static const std::vector<std::pair<std::string, Setter>> table = {
      {"scenario.kind", [](ScenarioConfig& c, std::string_view v) { c.kind = parse_scenario_kind(v); }},
      {"scenario.duration", num(&ScenarioConfig::duration)},
      {"scenario.dt", num(&ScenarioConfig::dt)},

      {"terrain.width", num(&ScenarioConfig::terrain, &TerrainSpec::width)},
      {"terrain.depth", num(&ScenarioConfig::terrain, &TerrainSpec::depth)},
      {"terrain.nx", integer(&ScenarioConfig::terrain, &TerrainSpec::nx)},
      {"terrain.nz", integer(&ScenarioConfig::terrain, &TerrainSpec::nz)},
      {"terrain.profile", text(&ScenarioConfig::terrain, &TerrainSpec::profile)},
      {"terrain.base_height", num(&ScenarioConfig::terrain, &TerrainSpec::base_height)},
      {"terrain.slope_deg", num(&ScenarioConfig::terrain, &TerrainSpec::slope_deg)},

      {"material.preset", [](ScenarioConfig& c, std::string_view v) {
         c.material = preset(v);
         c.material_preset = std::string(v);
       }},
      {"material.young_modulus", num(&ScenarioConfig::material, &MaterialParams::young_modulus)},
      {"material.poisson_ratio", num(&ScenarioConfig::material, &MaterialParams::poisson_ratio)},
      {"material.char_time", num(&ScenarioConfig::material, &MaterialParams::char_time)},
      {"material.loose_depth", num(&ScenarioConfig::material, &MaterialParams::loose_depth)},
      {"material.blur_sigma_cm", num(&ScenarioConfig::material, &MaterialParams::blur_sigma_cm)},
      {"material.contour_radius", num(&ScenarioConfig::material, &MaterialParams::contour_radius)},

      {"contact.window_side", num(&ScenarioConfig::window_side)},
      {"contact.foot_half_x", num(&ScenarioConfig::foot_half_extents, &Vec3::x)},
      {"contact.foot_half_y", num(&ScenarioConfig::foot_half_extents, &Vec3::y)},
      {"contact.foot_half_z", num(&ScenarioConfig::foot_half_extents, &Vec3::z)},

      {"character.mass", num(&ScenarioConfig::mass)},
      {"character.height", num(&ScenarioConfig::height)},
      {"character.radius", num(&ScenarioConfig::radius)},
      {"character.com_height", num(&ScenarioConfig::com_height)},
      {"character.gain_kp", num(&ScenarioConfig::gain_kp)},
      {"character.gain_kd", num(&ScenarioConfig::gain_kd)},

      {"gait.forward_speed", num(&ScenarioConfig::gait, &GaitParams::forward_speed)},
      {"gait.step_length", num(&ScenarioConfig::gait, &GaitParams::step_length)},
      {"gait.duty_factor", num(&ScenarioConfig::gait, &GaitParams::duty_factor)},
      {"gait.swing_lift", num(&ScenarioConfig::gait, &GaitParams::swing_lift)},
      {"gait.contact_speed", num(&ScenarioConfig::gait, &GaitParams::contact_speed)},
      {"gait.step_width", num(&ScenarioConfig::gait, &GaitParams::step_width)},
      {"gait.stand_com_offset", num(&ScenarioConfig::gait, &GaitParams::stand_com_offset)},
      {"gait.start_cycle", num(&ScenarioConfig::start_cycle)},

      {"path.kind", text(&ScenarioConfig::path, &PathSpec::kind)},
      {"path.x", num(&ScenarioConfig::path, &PathSpec::x)},
      {"path.z", num(&ScenarioConfig::path, &PathSpec::z)},
      {"path.heading_deg", num(&ScenarioConfig::path, &PathSpec::heading_deg)},
      {"path.center_x", num(&ScenarioConfig::path, &PathSpec::center_x)},
      {"path.center_z", num(&ScenarioConfig::path, &PathSpec::center_z)},
      {"path.radius", num(&ScenarioConfig::path, &PathSpec::radius)},
      {"path.start_angle_deg", num(&ScenarioConfig::path, &PathSpec::start_angle_deg)},
      {"path.counter_clockwise", flag(&ScenarioConfig::path, &PathSpec::counter_clockwise)},

      {"sphere.mass", num(&ScenarioConfig::sphere, &SphereSpec::mass)},
      {"sphere.radius", num(&ScenarioConfig::sphere, &SphereSpec::radius)},
      {"sphere.drop_height", num(&ScenarioConfig::sphere, &SphereSpec::drop_height)},
      {"sphere.contact_depth", num(&ScenarioConfig::sphere, &SphereSpec::contact_depth)},
      {"sphere.x", num(&ScenarioConfig::sphere, &SphereSpec::x)},
      {"sphere.z", num(&ScenarioConfig::sphere, &SphereSpec::z)},

      {"output.dir", text(&ScenarioConfig::output, &OutputSpec::dir)},
      {"output.forces", flag(&ScenarioConfig::output, &OutputSpec::forces)},
      {"output.trace", flag(&ScenarioConfig::output, &OutputSpec::trace)},
      {"output.heightmap", flag(&ScenarioConfig::output, &OutputSpec::heightmap)},
  };
  return table;
}

const Setter* find_setter(std::string_view key) {
  for (const auto& [k, s] : setters())
    if (k == key) return &s;
  return nullptr;
}

void apply(ScenarioConfig& cfg, const Entry& e) {
  const Setter* setter = find_setter(e.key);
  if (setter == nullptr) throw ConfigError(e.line, "unknown key '" + e.key + "'");
  try {
    (*setter)(cfg, e.value);
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(e.line, e.key + ": " + ex.what());
  }
}

Entry split_override(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ConfigError(0, "override '" + text + "' is not key=value");
  return {std::string(trim(std::string_view(text).substr(0, eq))), std::string(trim(std::string_view(text).substr(eq + 1))),
          0};
}

}  // namespace

std::string_view name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kWalk: return "walk";
    case ScenarioKind::kStand: return "stand";
    case ScenarioKind::kSphereDrop: return "sphere_drop";
    case ScenarioKind::kSlopeWalk: return "slope_walk";
    case ScenarioKind::kGallery: return "gallery";
    case ScenarioKind::kWalkGrf: return "walk_grf";
  }
  return "walk";
}

ScenarioKind parse_scenario_kind(std::string_view text) {
  for (ScenarioKind k : {ScenarioKind::kWalk, ScenarioKind::kStand, ScenarioKind::kSphereDrop, ScenarioKind::kSlopeWalk,
                         ScenarioKind::kGallery, ScenarioKind::kWalkGrf})
    if (name(k) == text) return k;
  throw std::invalid_argument("unknown scenario kind '" + std::string(text) + "'");
}

ConfigError::ConfigError(int line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

ScenarioConfig parse_config(std::string_view text, const std::vector<std::string>& overrides) {
  std::vector<Entry> entries;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) throw ConfigError(line_no, "malformed section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "expected key = value");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(line_no, "missing key");
    if (value.empty()) throw ConfigError(line_no, "missing value for '" + std::string(key) + "'");
    entries.push_back({section.empty() ? std::string(key) : section + "." + std::string(key), std::string(value), line_no});
    if (end == text.size()) break;
  }
  for (const std::string& o : overrides) entries.push_back(split_override(o));

  ScenarioConfig cfg;
  // A preset replaces the whole material record, so it goes first.
  for (const Entry& e : entries)
    if (e.key == "material.preset") apply(cfg, e);
  for (const Entry& e : entries)
    if (e.key != "material.preset") apply(cfg, e);

  const auto errors = validate(cfg);
  if (!errors.empty()) {
    std::string joined;
    for (const std::string& m : errors) joined += (joined.empty() ? "" : "; ") + m;
    throw ConfigError(0, joined);
  }
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), overrides);
}

std::vector<std::string> validate(const ScenarioConfig& c) {
  std::vector<std::string> out;
  const auto need = [&out](bool ok, const char* msg) {
    if (!ok) out.emplace_back(msg);
  };
  need(c.duration > 0.0, "scenario.duration must be positive");
  need(c.dt > 0.0, "scenario.dt must be positive");
  need(c.terrain.width > 0.0 && c.terrain.depth > 0.0, "terrain.width and terrain.depth must be positive");
  need(c.terrain.nx >= 2 && c.terrain.nz >= 2, "terrain.nx and terrain.nz must be at least 2");
  need(c.terrain.profile == "flat" || c.terrain.profile == "slope", "terrain.profile must be flat or slope");
  need(std::abs(c.terrain.slope_deg) < 80.0, "terrain.slope_deg must lie in (-80, 80)");
  for (const std::string& m : validate(c.material)) out.push_back("material." + m);
  need(c.window_side > 0.0, "contact.window_side must be positive");
  need(c.foot_half_extents.x > 0.0 && c.foot_half_extents.y > 0.0 && c.foot_half_extents.z > 0.0,
       "contact.foot_half_* must be positive");
  need(c.mass > 0.0, "character.mass must be positive");
  need(c.radius > 0.0 && c.height >= 2.0 * c.radius, "character.height must be at least twice character.radius");
  need(c.com_height > 0.0, "character.com_height must be positive");
  need(c.gain_kp >= 0.0 && c.gain_kd >= 0.0, "character gains must be non-negative");
  for (const std::string& m : validate(c.gait)) out.push_back("gait." + m);
  need(c.path.kind == "straight" || c.path.kind == "circle", "path.kind must be straight or circle");
  need(c.path.kind != "circle" || c.path.radius > 0.0, "path.radius must be positive");
  need(c.sphere.mass > 0.0, "sphere.mass must be positive");
  need(c.sphere.radius > 0.0, "sphere.radius must be positive");
  need(c.sphere.drop_height >= 0.0, "sphere.drop_height must be non-negative");
  need(c.sphere.contact_depth > 0.0 && c.sphere.contact_depth < c.sphere.radius,
       "sphere.contact_depth must lie in (0, sphere.radius)");
  return out;
}

std::vector<std::string> config_keys() {
  std::vector<std::string> out;
  for (const auto& [k, s] : setters()) out.push_back(k);
  return out;
}

}  // namespace terradeform
