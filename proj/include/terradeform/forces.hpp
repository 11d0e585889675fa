#pragma once

#include <array>

#include "terradeform/geometry.hpp"

namespace terradeform {

enum class Foot { kLeft = 0, kRight = 1 };
inline constexpr std::array<Foot, 2> kFeet{Foot::kLeft, Foot::kRight};
constexpr int index(Foot f) { return static_cast<int>(f); }
constexpr const char* name(Foot f) { return f == Foot::kLeft ? "left" : "right"; }

struct FootForces {
  Vec3 weight;
  Vec3 momentum;
  Vec3 foot;            // weight + momentum, what the foot applies to the ground
  Vec3 ground_reaction; // -foot
  double weight_ratio = 0.0;
  bool grounded = false;
};

/// Per-frame force split for one character.
struct ForceBreakdown {
  double t = 0.0;
  std::array<FootForces, 2> feet{};
  double weight_ratio_right = 0.0;
  bool degenerate_support = false;

  FootForces& operator[](Foot f) { return feet[static_cast<std::size_t>(index(f))]; }
  const FootForces& operator[](Foot f) const { return feet[static_cast<std::size_t>(index(f))]; }
};

/// Impulse frozen at touchdown and spread over [t0, t0 + tau].
struct ImpulseWindow {
  Vec3 impulse;
  double t0 = 0.0;
  double tau = 0.0;
  double ratio = 0.0;
};

struct WeightRatio {
  double right = 0.5;
  bool degenerate = false;
};

/// Share of the body weight carried by the right foot: the clamped projection
/// parameter of p_com on the segment [p_left, p_right]. Coincident feet give
/// 0.5 with the degenerate flag set.
WeightRatio weight_ratio(Vec2 p_left, Vec2 p_right, Vec2 p_com);

/// Static weight split over the grounded feet. Throws for non-positive mass.
std::array<Vec3, 2> weight_forces(double mass, double ratio_right, std::array<bool, 2> grounded,
                                  Vec3 gravity = kGravityVec);

/// J = ratio * mass * v_prev.
Vec3 impact_impulse(double ratio, double mass, Vec3 v_prev);

/// Times within this distance of a window edge count as inside.
inline constexpr double kWindowEpsilon = 1e-9;

/// J / tau while t lies in [t0, t0 + tau], zero elsewhere.
Vec3 momentum_force(const ImpulseWindow& window, double t);

/// Normal stress max(0, -F.n) / area; zero when the contact area vanishes.
/// n is the upward unit normal of the ground.
double normal_stress(Vec3 foot_force, Vec3 normal, double contact_area);

}  // namespace terradeform
