#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace terradeform {

/// Constitutive record for one terrain type.
struct MaterialParams {
  double young_modulus = 0.375e6;  // Pa
  double poisson_ratio = 0.05;     // [0, 0.5]
  double char_time = 0.2;          // s
  double loose_depth = 0.30;       // m
  double blur_sigma_cm = 0.5;      // cm, Gaussian std-dev for display
  double contour_radius = 0.04;    // m

  bool operator==(const MaterialParams&) const = default;
};

inline constexpr std::array<std::string_view, 4> kPresetNames{"snow", "dry_sand", "mud", "soil"};

/// Named terrain presets. Young's modulus is the midpoint of the tabulated
/// range. Throws std::invalid_argument for unknown names.
MaterialParams preset(std::string_view name);

/// Every violated range constraint, one message each; empty when valid.
std::vector<std::string> validate(const MaterialParams& params);

}  // namespace terradeform
