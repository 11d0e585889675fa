#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "terradeform/contact.hpp"
#include "terradeform/forces.hpp"
#include "terradeform/geometry.hpp"
#include "terradeform/heightfield.hpp"

namespace terradeform {

enum class FootPhase { kSwing, kContact };
constexpr const char* name(FootPhase p) { return p == FootPhase::kSwing ? "swing" : "contact"; }

struct FootState {
  FootPhase phase = FootPhase::kSwing;
  Vec3 position;  // center of the sole
  Vec3 velocity;
  double contact_time = 0.0;
  std::optional<Vec3> pin_point;  // set iff phase == kContact
  Vec3 half_extents{0.05, 0.03, 0.05};

  FootCollider collider() const { return {position + Vec3{0.0, half_extents.y, 0.0}, half_extents}; }
  bool grounded() const { return phase == FootPhase::kContact; }
};

/// Rigid capsule driven by the balance controller, plus two pinned feet.
///
/// The capsule pivots about its ground point; positive tilt leans it toward
/// the heading, so the center of mass sits at
/// ground_point + com_height * (sin(tilt) * heading + cos(tilt) * up).
struct CharacterState {
  double mass = 77.5;
  double height = 1.8;
  double radius = 0.25;
  double com_height = 0.9;
  double inertia = 0.0;  // about the swing axis

  Vec3 ground_point;  // root projected on the support height
  Vec2 heading{1.0, 0.0};
  double tilt = 0.0;
  double tilt_rate = 0.0;
  double torque = 0.0;  // last applied
  Vec3 com;
  Vec3 velocity;
  std::array<FootState, 2> feet{};

  FootState& foot(Foot f) { return feet[static_cast<std::size_t>(index(f))]; }
  const FootState& foot(Foot f) const { return feet[static_cast<std::size_t>(index(f))]; }
  void update_com();
};

/// Principal transverse moment of a solid capsule about its centroid.
double capsule_inertia(double mass, double height, double radius);

/// Gait timing and shape. step_length is the distance covered per full gait
/// cycle (each foot advances by it once per cycle); step_period is the cycle
/// duration.
struct GaitParams {
  double forward_speed = 1.65;
  double step_length = 1.6;
  double duty_factor = 0.6;
  double swing_lift = 0.10;
  double contact_speed = 0.9;
  double step_width = 0.2;
  double stand_com_offset = 0.0;  // standing only, toward the left foot

  double step_period() const { return forward_speed > 0.0 ? step_length / forward_speed : 0.0; }
  bool standing() const { return forward_speed == 0.0; }
};

std::vector<std::string> validate(const GaitParams& gait);

/// Ground path followed by the root: a straight line or a circle.
class WalkPath {
 public:
  static WalkPath straight(Vec2 origin, double heading_rad);
  static WalkPath circle(Vec2 center, double radius, double start_angle_rad, bool counter_clockwise = true);

  Vec2 point(double arc) const;
  Vec2 tangent(double arc) const;
  /// Unit vector to the left of the tangent (up x tangent).
  Vec2 left(double arc) const;

 private:
  bool circular_ = false;
  Vec2 origin_;
  double heading_ = 0.0;
  double radius_ = 0.0;
  double start_angle_ = 0.0;
  double sense_ = 1.0;
};

struct FootTarget {
  Vec3 position;
  Vec3 velocity;
  bool stance = false;
};

struct GaitTargets {
  std::array<FootTarget, 2> feet{};
  Vec2 root;  // horizontal root position
  Vec2 heading{1.0, 0.0};
  Vec3 root_velocity;

  const FootTarget& operator[](Foot f) const { return feet[static_cast<std::size_t>(index(f))]; }
};

/// Parametric walking gait. Cycle position 0 is the left heel strike; the
/// right foot runs half a cycle behind. Stance feet hold their landing point;
/// swing feet move along a cycloid law between landings while the sole rises
/// to swing_lift above the support height at mid-swing and touches down
/// moving downward at contact_speed. The root advances uniformly, passing the middle
/// of the support segment at the middle of each double-support phase.
class GaitGenerator {
 public:
  /// sole_half_extents sizes the footprint whose highest cell is the ground
  /// reference for foot targets.
  GaitGenerator(GaitParams params, WalkPath path, double start_cycle = 0.25, Vec2 sole_half_extents = {0.05, 0.05});

  const GaitParams& params() const { return params_; }
  const WalkPath& path() const { return path_; }
  double start_cycle() const { return start_cycle_; }
  double cycle_at(double t) const;

  /// Targets at an absolute cycle position (integer part counts cycles).
  GaitTargets targets(double cycle, const Heightfield& terrain) const;
  GaitTargets targets_at_time(double t, const Heightfield& terrain) const { return targets(cycle_at(t), terrain); }

  /// Vertical sole offset above the terrain along the swing, s in [0, 1].
  double swing_height(double s) const;
  /// d(swing_height)/ds.
  double swing_height_rate(double s) const;

 private:
  FootTarget foot_target(Foot f, double cycle, const Heightfield& terrain) const;
  Vec2 landing_point(Foot f, long long cycle_index) const;
  double root_arc(double cycle) const;

  GaitParams params_;
  WalkPath path_;
  double start_cycle_;
  Vec2 sole_half_;
};

/// T = gain_kp * ((p_target - p_com) . u) + gain_kd * tilt_rate, evaluated in
/// the vertical plane through the COM along the heading. p_target is the
/// midpoint of the feet's ground projections and u the unit slope of the
/// support segment (or of the terrain under the COM when the segment has no
/// extent along the heading).
double controller_torque(const CharacterState& state, const Heightfield& terrain, double gain_kp, double gain_kd);

/// The sagittal-plane displacement term of the controller, (p_target - p_com) . u.
double support_displacement(const CharacterState& state, const Heightfield& terrain);

/// Semi-implicit Euler on the tilt: rate first, then angle.
void step_rigid_body(CharacterState& state, double torque, double dt);

struct ContactEvent {
  Foot foot = Foot::kLeft;
  double t0 = 0.0;
  Vec3 velocity_before;  // foot velocity one frame before touchdown
  Vec3 pin_point;
};

inline constexpr double kReleaseThreshold = 1e-3;

/// Moves the feet to their targets, pinning feet that reach the deformed
/// surface and releasing feet whose targets rise above it. Updates the root
/// ground point so the body follows sinking stance feet.
std::vector<ContactEvent> place_feet(CharacterState& state, const GaitTargets& targets, const Heightfield& terrain,
                                     double t);

}  // namespace terradeform
