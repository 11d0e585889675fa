#include "terradeform/forces.hpp"

#include <algorithm>
#include <stdexcept>

namespace terradeform {

WeightRatio weight_ratio(Vec2 p_left, Vec2 p_right, Vec2 p_com) {
  const Vec2 seg = p_right - p_left;
  const double len2 = dot(seg, seg);
  if (len2 <= 1e-18) return {0.5, true};
  return {std::clamp(dot(p_com - p_left, seg) / len2, 0.0, 1.0), false};
}

std::array<Vec3, 2> weight_forces(double mass, double ratio_right, std::array<bool, 2> grounded, Vec3 gravity) {
  if (!(mass > 0.0)) throw std::invalid_argument("weight_forces: mass must be positive");
  const Vec3 full = gravity * mass;
  const bool left = grounded[0];
  const bool right = grounded[1];
  if (left && right) return {full * (1.0 - ratio_right), full * ratio_right};
  if (left) return {full, Vec3{}};
  if (right) return {Vec3{}, full};
  return {Vec3{}, Vec3{}};
}

Vec3 impact_impulse(double ratio, double mass, Vec3 v_prev) { return v_prev * (ratio * mass); }

Vec3 momentum_force(const ImpulseWindow& window, double t) {
  if (!(window.tau > 0.0)) return {};
  const double elapsed = t - window.t0;
  if (elapsed < -kWindowEpsilon || elapsed > window.tau + kWindowEpsilon) return {};
  return window.impulse / window.tau;
}

double normal_stress(Vec3 foot_force, Vec3 normal, double contact_area) {
  if (!(contact_area > 0.0)) return 0.0;
  return std::max(0.0, -dot(foot_force, normal)) / contact_area;
}

}  // namespace terradeform
