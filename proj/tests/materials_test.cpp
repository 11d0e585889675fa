#include "terradeform/materials.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <stdexcept>

namespace terradeform {
namespace {

TEST(Presets, ValuesAtRangeMidpoints) {
  const MaterialParams snow = preset("snow");
  EXPECT_DOUBLE_EQ(snow.young_modulus, 0.375e6);
  EXPECT_DOUBLE_EQ(snow.char_time, 0.2);
  EXPECT_DOUBLE_EQ(snow.poisson_ratio, 0.05);
  EXPECT_DOUBLE_EQ(snow.blur_sigma_cm, 0.5);

  const MaterialParams sand = preset("dry_sand");
  EXPECT_DOUBLE_EQ(sand.young_modulus, 2.25e6);
  EXPECT_DOUBLE_EQ(sand.char_time, 0.05);
  EXPECT_DOUBLE_EQ(sand.poisson_ratio, 0.5);
  EXPECT_DOUBLE_EQ(sand.blur_sigma_cm, 1.0);

  const MaterialParams mud = preset("mud");
  EXPECT_DOUBLE_EQ(mud.young_modulus, 0.625e6);
  EXPECT_DOUBLE_EQ(mud.char_time, 0.15);
  EXPECT_DOUBLE_EQ(mud.poisson_ratio, 0.35);
  EXPECT_DOUBLE_EQ(mud.blur_sigma_cm, 1.0);

  const MaterialParams soil = preset("soil");
  EXPECT_DOUBLE_EQ(soil.young_modulus, 1.25e6);
  EXPECT_DOUBLE_EQ(soil.char_time, 0.05);
  EXPECT_DOUBLE_EQ(soil.poisson_ratio, 0.35);
  EXPECT_DOUBLE_EQ(soil.blur_sigma_cm, 0.5);

  for (std::string_view n : kPresetNames) {
    EXPECT_DOUBLE_EQ(preset(n).loose_depth, 0.30);
    EXPECT_DOUBLE_EQ(preset(n).contour_radius, 0.04);
  }
}

TEST(Presets, UnknownNameThrows) { EXPECT_THROW(preset("gravel"), std::invalid_argument); }

TEST(Presets, AreValidAndConstant) {
  for (std::string_view n : kPresetNames) {
    EXPECT_TRUE(validate(preset(n)).empty()) << n;
    EXPECT_EQ(preset(n), preset(n));
  }
}

bool mentions(const std::vector<std::string>& v, const std::string& msg) {
  return std::find(v.begin(), v.end(), msg) != v.end();
}

TEST(Validate, ReportsEveryViolation) {
  MaterialParams m = preset("mud");
  m.poisson_ratio = 0.6;
  EXPECT_TRUE(mentions(validate(m), "poisson_ratio out of [0, 0.5]"));

  m = preset("mud");
  m.char_time = 0.0;
  EXPECT_TRUE(mentions(validate(m), "char_time must be positive"));

  m.poisson_ratio = -0.1;
  m.young_modulus = 0.0;
  m.loose_depth = 0.0;
  m.blur_sigma_cm = -1.0;
  m.contour_radius = 0.0;
  EXPECT_EQ(validate(m).size(), 6u);
}

}  // namespace
}  // namespace terradeform
