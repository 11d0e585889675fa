#include "terradeform/character.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace terradeform {
namespace {

constexpr double kDt = 1.0 / 60.0;

Heightfield flat(double h = 0.0) {
  return Heightfield(10.0, 10.0, 250, 250, [h](double, double) { return h; });
}

Heightfield ramp(double deg) {
  const double slope = std::tan(deg * std::numbers::pi / 180.0);
  return Heightfield(10.0, 10.0, 250, 250, [slope](double x, double) { return slope * x; });
}

// Transverse moment of a solid capsule by summing thin disks along the axis.
double sliced_inertia(double mass, double height, double radius) {
  const int n = 200000;
  const double half = height / 2.0;
  const double lc = height - 2.0 * radius;
  double volume = 0.0;
  double moment = 0.0;
  for (int k = 0; k < n; ++k) {
    const double y = -half + (k + 0.5) * height / n;
    const double over = std::abs(y) - lc / 2.0;
    const double r2 = over > 0.0 ? radius * radius - over * over : radius * radius;
    const double dv = std::numbers::pi * r2 * height / n;
    volume += dv;
    moment += dv * (r2 / 4.0 + y * y);
  }
  return mass * moment / volume;
}

CharacterState standing_state(Vec2 com_xz, Vec2 left, Vec2 right, const Heightfield& terrain) {
  CharacterState s;
  s.inertia = 12.0;
  s.heading = {1.0, 0.0};
  s.ground_point = {com_xz.x, terrain.surface_height_at(com_xz.x, com_xz.z), com_xz.z};
  s.update_com();
  s.foot(Foot::kLeft).position = {left.x, terrain.surface_height_at(left.x, left.z), left.z};
  s.foot(Foot::kRight).position = {right.x, terrain.surface_height_at(right.x, right.z), right.z};
  return s;
}

TEST(CapsuleInertia, MatchesSliceQuadrature) {
  for (const auto& [m, h, r] : {std::tuple{77.5, 1.8, 0.25}, std::tuple{50.0, 1.0, 0.3}, std::tuple{10.0, 0.6, 0.3}}) {
    EXPECT_NEAR(capsule_inertia(m, h, r), sliced_inertia(m, h, r), 1e-6 * sliced_inertia(m, h, r));
  }
  EXPECT_THROW(capsule_inertia(77.5, 0.4, 0.25), std::invalid_argument);
}

TEST(Controller, EquilibriumIsExactlyZero) {
  const Heightfield g = flat();
  const CharacterState s = standing_state({5.0, 5.0}, {4.8, 5.1}, {5.2, 4.9}, g);
  EXPECT_EQ(controller_torque(s, g, 30.0, 6.0), 0.0);
  CharacterState stepped = s;
  step_rigid_body(stepped, 0.0, kDt);
  EXPECT_EQ(stepped.tilt, s.tilt);
  EXPECT_EQ(stepped.tilt_rate, s.tilt_rate);
  EXPECT_EQ(stepped.com, s.com);
}

TEST(Controller, ProportionalAndDerivativeTerms) {
  const Heightfield g = flat();
  CharacterState s = standing_state({4.9, 5.0}, {4.8, 5.1}, {5.2, 4.9}, g);
  EXPECT_NEAR(support_displacement(s, g), 0.1, 1e-12);
  EXPECT_NEAR(controller_torque(s, g, 30.0, 6.0), 3.0, 1e-10);
  s.tilt_rate = -0.5;
  EXPECT_NEAR(controller_torque(s, g, 30.0, 6.0), 0.0, 1e-10);
}

TEST(Controller, CoincidentFeetLeaveOnlyTheRateTerm) {
  const Heightfield g = flat();
  CharacterState s = standing_state({5.0, 5.0}, {5.0, 5.0}, {5.0, 5.0}, g);
  s.tilt_rate = 0.25;
  EXPECT_NEAR(controller_torque(s, g, 30.0, 6.0), 1.5, 1e-12);
}

TEST(Controller, RampTorqueTurnsTowardSupport) {
  const Heightfield g = ramp(15.0);
  std::mt19937 rng(15);
  std::uniform_real_distribution<double> gain(0.1, 100.0);
  std::uniform_real_distribution<double> lag(0.01, 0.3);
  for (int k = 0; k < 100; ++k) {
    const double behind = lag(rng);
    // COM trails the support midpoint (uphill along the heading).
    const CharacterState s = standing_state({5.0 - behind, 5.0}, {4.8, 5.1}, {5.2, 4.9}, g);
    const double t = controller_torque(s, g, gain(rng), gain(rng));
    EXPECT_GT(t, 0.0);
    CharacterState next = s;
    next.tilt_rate = 0.0;
    step_rigid_body(next, t, kDt);
    EXPECT_GT(next.com.x, s.com.x);
  }
}

TEST(RigidBody, SemiImplicitEuler) {
  CharacterState s;
  s.inertia = 12.0;
  step_rigid_body(s, 3.0, kDt);
  EXPECT_NEAR(s.tilt_rate, 0.004166666666666667, 1e-15);
  const double rate1 = s.tilt_rate;
  EXPECT_DOUBLE_EQ(s.tilt, rate1 * kDt);
  step_rigid_body(s, 3.0, kDt);
  const double rate2 = s.tilt_rate;
  EXPECT_DOUBLE_EQ(rate2, 2.0 * rate1);
  EXPECT_DOUBLE_EQ(s.tilt, rate1 * kDt + rate2 * kDt);
  EXPECT_THROW(step_rigid_body(s, 0.0, 0.0), std::invalid_argument);
}

TEST(RigidBody, ComFollowsTilt) {
  CharacterState s;
  s.ground_point = {1.0, 0.5, 2.0};
  s.heading = {0.0, 1.0};
  s.tilt = 0.3;
  s.update_com();
  EXPECT_NEAR(s.com.x, 1.0, 1e-15);
  EXPECT_NEAR(s.com.z, 2.0 + 0.9 * std::sin(0.3), 1e-15);
  EXPECT_NEAR(s.com.y, 0.5 + 0.9 * std::cos(0.3), 1e-15);
}

TEST(GaitParams, Validation) {
  GaitParams g;
  EXPECT_TRUE(validate(g).empty());
  EXPECT_NEAR(g.step_period(), 1.6 / 1.65, 1e-15);
  g.duty_factor = 0.5;
  ASSERT_EQ(validate(g).size(), 1u);
  EXPECT_EQ(validate(g).front(), "duty_factor out of (0.5, 1)");
  g.forward_speed = 0.0;
  EXPECT_TRUE(validate(g).empty());  // standing ignores the duty factor
  EXPECT_THROW(GaitGenerator(GaitParams{.forward_speed = -1.0}, WalkPath::straight({1, 5}, 0.0)),
               std::invalid_argument);
}

TEST(WalkPath, StraightAndCircle) {
  const WalkPath line = WalkPath::straight({1.0, 5.0}, 0.0);
  EXPECT_EQ(line.point(2.0), (Vec2{3.0, 5.0}));
  EXPECT_EQ(line.left(0.0), (Vec2{0.0, -1.0}));
  const WalkPath ring = WalkPath::circle({5.0, 5.0}, 3.0, -std::numbers::pi / 2);
  EXPECT_NEAR(ring.point(0.0).z, 2.0, 1e-15);
  EXPECT_NEAR(ring.tangent(0.0).x, 1.0, 1e-15);
  const double quarter = 3.0 * std::numbers::pi / 2;
  EXPECT_NEAR(ring.point(quarter).x, 8.0, 1e-12);
  EXPECT_NEAR(ring.point(quarter).z, 5.0, 1e-12);
  // The left side of a counter-clockwise walk faces away from the center.
  const Vec2 out = ring.point(1.0) + ring.left(1.0) - Vec2{5.0, 5.0};
  EXPECT_GT(norm(out), 3.0);
}

TEST(Gait, HeelStrikeLandsOnGroundAtContactSpeed) {
  const Heightfield g = flat(0.2);
  const GaitGenerator gait(GaitParams{}, WalkPath::straight({1.0, 5.0}, 0.0));
  const GaitTargets at = gait.targets(1.0, g);
  EXPECT_TRUE(at[Foot::kLeft].stance);
  EXPECT_DOUBLE_EQ(at[Foot::kLeft].position.y, 0.2);
  const double period = gait.params().step_period();
  const GaitTargets before = gait.targets(1.0 - 1e-9 / period, g);
  EXPECT_FALSE(before[Foot::kLeft].stance);
  EXPECT_NEAR(before[Foot::kLeft].velocity.y, -0.9, 1e-6);
  EXPECT_NEAR(before[Foot::kLeft].position.y, 0.2, 1e-8);
  EXPECT_NEAR(norm(before[Foot::kLeft].position.horizontal() - at[Foot::kLeft].position.horizontal()), 0.0, 1e-8);
}

TEST(Gait, MidSwingApex) {
  const Heightfield g = flat(0.1);
  const GaitGenerator gait(GaitParams{}, WalkPath::straight({1.0, 5.0}, 0.0));
  // Right foot runs half a cycle late; its swing spans local phase [0.6, 1).
  const GaitTargets mid = gait.targets(1.3, g);
  EXPECT_FALSE(mid[Foot::kRight].stance);
  EXPECT_NEAR(mid[Foot::kRight].position.y, 0.1 + 0.1, 1e-12);
  EXPECT_NEAR(mid[Foot::kRight].velocity.y, 0.0, 1e-12);
  EXPECT_TRUE(mid[Foot::kLeft].stance);
}

TEST(Gait, SwingProfileEndpoints) {
  const GaitGenerator gait(GaitParams{}, WalkPath::straight({1.0, 5.0}, 0.0));
  EXPECT_EQ(gait.swing_height(0.0), 0.0);
  EXPECT_EQ(gait.swing_height(1.0), 0.0);
  EXPECT_DOUBLE_EQ(gait.swing_height(0.5), 0.1);
  for (double s = 0.01; s < 1.0; s += 0.01) {
    const double fd = (gait.swing_height(s + 1e-7) - gait.swing_height(s - 1e-7)) / 2e-7;
    EXPECT_NEAR(gait.swing_height_rate(s), fd, 1e-5) << s;
  }
}

TEST(Gait, StandingHoldsFeetAndCentersRoot) {
  const Heightfield g = flat();
  const GaitGenerator gait(GaitParams{.forward_speed = 0.0}, WalkPath::straight({5.0, 5.0}, 0.0));
  const GaitTargets a = gait.targets_at_time(0.0, g);
  const GaitTargets b = gait.targets_at_time(7.5, g);
  for (Foot f : kFeet) {
    EXPECT_TRUE(a[f].stance);
    EXPECT_EQ(a[f].position, b[f].position);
    EXPECT_EQ(norm(a[f].velocity), 0.0);
  }
  EXPECT_EQ(weight_ratio(a[Foot::kLeft].position.horizontal(), a[Foot::kRight].position.horizontal(), a.root).right,
            0.5);
}

TEST(Gait, PeriodicOnFlatGround) {
  const Heightfield g = flat();
  const GaitGenerator gait(GaitParams{}, WalkPath::straight({1.0, 5.0}, 0.0));
  for (int k = 0; k < 20; ++k) {
    const double p = 0.263 + 0.05 * k;
    const GaitTargets a = gait.targets(p, g);
    const GaitTargets b = gait.targets(p + 1.0, g);
    EXPECT_NEAR(b.root.x - a.root.x, 1.6, 1e-12);
    for (Foot f : kFeet) {
      EXPECT_EQ(a[f].stance, b[f].stance);
      EXPECT_NEAR(b[f].position.x - a[f].position.x, 1.6, 1e-9);
      EXPECT_NEAR(b[f].position.y, a[f].position.y, 1e-12);
      EXPECT_NEAR(b[f].position.z, a[f].position.z, 1e-12);
    }
  }
}

TEST(Gait, DoubleSupportEveryHalfCycle) {
  const Heightfield g = flat();
  const GaitGenerator gait(GaitParams{}, WalkPath::straight({1.0, 5.0}, 0.0));
  int transitions = 0;
  bool prev = false;
  for (int k = 0; k < 1000; ++k) {
    const GaitTargets t = gait.targets(1.0003 + k / 1000.0, g);
    const bool both = t[Foot::kLeft].stance && t[Foot::kRight].stance;
    if (both && !prev) ++transitions;
    prev = both;
  }
  EXPECT_EQ(transitions, 2);
}

GaitTargets manual_targets(Vec3 left, Vec3 left_v, bool left_stance, Vec3 right, Vec2 root) {
  GaitTargets t;
  t.feet[0] = {left, left_v, left_stance};
  t.feet[1] = {right, {}, true};
  t.root = root;
  return t;
}

TEST(PlaceFeet, DescendingFootTouchesOnTheNextFrame) {
  const Heightfield g = flat();
  CharacterState s;
  const Vec3 down{0.0, -1.0, 0.0};
  auto events = place_feet(s, manual_targets({5.0, 0.01, 5.1}, down, false, {5.2, 0.0, 4.9}, {5.1, 5.0}), g, 0.0);
  ASSERT_EQ(events.size(), 1u);  // the right foot lands immediately
  EXPECT_EQ(events[0].foot, Foot::kRight);
  EXPECT_FALSE(s.foot(Foot::kLeft).grounded());
  events = place_feet(s, manual_targets({5.0, 0.01 - kDt, 5.1}, down, false, {5.2, 0.0, 4.9}, {5.1, 5.0}), g, kDt);
  ASSERT_EQ(events.size(), 1u);
  EXPECT_EQ(events[0].foot, Foot::kLeft);
  EXPECT_EQ(events[0].velocity_before, down);
  EXPECT_EQ(events[0].t0, kDt);
  EXPECT_EQ(events[0].pin_point, (Vec3{5.0, 0.0, 5.1}));
  EXPECT_TRUE(s.foot(Foot::kLeft).grounded());
}

TEST(PlaceFeet, PinnedFeetAndRootSinkWithTheGround) {
  Heightfield g = flat();
  CharacterState s;
  const GaitTargets t = manual_targets({5.0, 0.0, 5.1}, {}, true, {5.2, 0.0, 4.9}, {5.1, 5.0});
  place_feet(s, t, g, 0.0);
  const double root_before = s.ground_point.y;
  const Vec3 left_before = s.foot(Foot::kLeft).position;
  for (int j = 0; j < g.nz(); ++j)
    for (int i = 0; i < g.nx(); ++i) g.apply_compression({i, j}, 0.02, 0.3);
  // Targets move sideways but the pins stay put.
  const GaitTargets moved = manual_targets({5.3, 0.0, 5.4}, {}, true, {5.6, 0.0, 4.5}, {5.1, 5.0});
  place_feet(s, moved, g, kDt);
  EXPECT_NEAR(s.foot(Foot::kLeft).position.y, left_before.y - 0.02, 1e-15);
  EXPECT_EQ(s.foot(Foot::kLeft).position.x, left_before.x);
  EXPECT_EQ(s.foot(Foot::kLeft).position.z, left_before.z);
  EXPECT_NEAR(s.ground_point.y, root_before - 0.02, 1e-15);
}

TEST(PlaceFeet, ReleaseNeedsTargetAboveThreshold) {
  const Heightfield g = flat();
  CharacterState s;
  place_feet(s, manual_targets({5.0, 0.0, 5.1}, {}, true, {5.2, 0.0, 4.9}, {5.1, 5.0}), g, 0.0);
  place_feet(s, manual_targets({5.0, 0.5 * kReleaseThreshold, 5.1}, {}, false, {5.2, 0.0, 4.9}, {5.1, 5.0}), g, kDt);
  EXPECT_TRUE(s.foot(Foot::kLeft).grounded());
  place_feet(s, manual_targets({5.0, 2.0 * kReleaseThreshold, 5.1}, {}, false, {5.2, 0.0, 4.9}, {5.1, 5.0}), g,
             2 * kDt);
  EXPECT_FALSE(s.foot(Foot::kLeft).grounded());
  EXPECT_FALSE(s.foot(Foot::kLeft).pin_point.has_value());
}

}  // namespace
}  // namespace terradeform
