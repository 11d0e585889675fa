#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "terradeform/character.hpp"
#include "terradeform/materials.hpp"
#include "terradeform/simulation.hpp"

namespace terradeform {

enum class ScenarioKind { kWalk, kStand, kSphereDrop, kSlopeWalk, kGallery, kWalkGrf };

std::string_view name(ScenarioKind kind);
ScenarioKind parse_scenario_kind(std::string_view text);

struct TerrainSpec {
  double width = 10.0;
  double depth = 10.0;
  int nx = 256;
  int nz = 256;
  std::string profile = "flat";  // flat | slope
  double base_height = 0.0;
  double slope_deg = 15.0;  // rise along +x for the slope profile
};

struct PathSpec {
  std::string kind = "straight";  // straight | circle
  double x = 1.0;
  double z = 5.0;
  double heading_deg = 0.0;
  double center_x = 5.0;
  double center_z = 5.0;
  double radius = 3.0;
  double start_angle_deg = -90.0;
  bool counter_clockwise = true;
};

struct SphereSpec {
  double mass = 50.0;
  double radius = 0.15;
  double drop_height = 2.5;
  double contact_depth = 0.02;  // penetration of the resting sphere below the surface
  double x = 5.0;
  double z = 5.0;
};

struct OutputSpec {
  std::string dir;  // empty: ./out/<scenario>
  bool forces = true;
  bool trace = true;
  bool heightmap = true;
};

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::kWalk;
  double duration = 5.0;
  double dt = 1.0 / 60.0;
  TerrainSpec terrain;
  std::string material_preset = "snow";
  MaterialParams material = preset("snow");
  double window_side = 0.40;
  Vec3 foot_half_extents{0.05, 0.03, 0.05};
  double mass = 77.5;
  double height = 1.8;
  double radius = 0.25;
  double com_height = 0.9;
  double gain_kp = 30.0;
  double gain_kd = 6.0;
  GaitParams gait;
  double start_cycle = 0.25;
  PathSpec path;
  SphereSpec sphere;
  OutputSpec output;
};

/// Parse failure or validation failure. line is 0 for overrides and for
/// whole-config validation.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

/// Line-oriented `key = value` text with optional `[section]` headers; keys in
/// a section are prefixed with "<section>.". `#` and `;` start comments.
/// material.preset is applied before the other keys regardless of position.
/// Unknown keys, malformed values and validation failures throw ConfigError.
ScenarioConfig parse_config(std::string_view text, const std::vector<std::string>& overrides = {});
ScenarioConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides = {});

/// Every violated constraint across the config, prefixed with the field name.
std::vector<std::string> validate(const ScenarioConfig& cfg);

/// Names of all recognised keys, in documentation order.
std::vector<std::string> config_keys();

}  // namespace terradeform
