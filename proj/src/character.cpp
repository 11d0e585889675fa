#include "terradeform/character.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace terradeform {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Vec3 lift3(Vec2 h, double y) { return {h.x, y, h.z}; }

Vec2 normalized(Vec2 v) {
  const double n = norm(v);
  return n > 0.0 ? v * (1.0 / n) : Vec2{1.0, 0.0};
}

// Terrain gradient by central differences half a cell apart, kept inside the extent.
Vec2 surface_gradient(const Heightfield& terrain, Vec2 p) {
  const double ex = 0.5 * terrain.cell_size_x();
  const double ez = 0.5 * terrain.cell_size_z();
  const double x0 = std::max(p.x - ex, 0.0);
  const double x1 = std::min(p.x + ex, terrain.width());
  const double z0 = std::max(p.z - ez, 0.0);
  const double z1 = std::min(p.z + ez, terrain.depth());
  const double gx = (terrain.surface_height_at(x1, p.z) - terrain.surface_height_at(x0, p.z)) / (x1 - x0);
  const double gz = (terrain.surface_height_at(p.x, z1) - terrain.surface_height_at(p.x, z0)) / (z1 - z0);
  return {gx, gz};
}

}  // namespace

void CharacterState::update_com() {
  const Vec2 h = normalized(heading);
  com = ground_point + Vec3{h.x, 0.0, h.z} * (com_height * std::sin(tilt)) + kUp * (com_height * std::cos(tilt));
}

double capsule_inertia(double mass, double height, double radius) {
  if (!(mass > 0.0) || !(radius > 0.0) || height < 2.0 * radius)
    throw std::invalid_argument("capsule needs positive mass and height >= 2 * radius");
  const double lc = height - 2.0 * radius;
  const double v_cyl = std::numbers::pi * radius * radius * lc;
  const double v_caps = 4.0 / 3.0 * std::numbers::pi * radius * radius * radius;
  const double m_cyl = mass * v_cyl / (v_cyl + v_caps);
  const double m_caps = mass - m_cyl;
  return m_cyl * (lc * lc / 12.0 + radius * radius / 4.0) +
         m_caps * (0.4 * radius * radius + lc * lc / 4.0 + 3.0 * lc * radius / 8.0);
}

std::vector<std::string> validate(const GaitParams& g) {
  std::vector<std::string> out;
  if (g.forward_speed < 0.0) out.emplace_back("forward_speed must be non-negative");
  if (!g.standing()) {
    if (!(g.step_length > 0.0)) out.emplace_back("step_length must be positive when walking");
    if (!(g.duty_factor > 0.5 && g.duty_factor < 1.0)) out.emplace_back("duty_factor out of (0.5, 1)");
  }
  if (!(g.swing_lift > 0.0)) out.emplace_back("swing_lift must be positive");
  if (g.contact_speed < 0.0) out.emplace_back("contact_speed must be non-negative");
  if (g.step_width < 0.0) out.emplace_back("step_width must be non-negative");
  return out;
}

WalkPath WalkPath::straight(Vec2 origin, double heading_rad) {
  WalkPath p;
  p.origin_ = origin;
  p.heading_ = heading_rad;
  return p;
}

WalkPath WalkPath::circle(Vec2 center, double radius, double start_angle_rad, bool counter_clockwise) {
  if (!(radius > 0.0)) throw std::invalid_argument("circular path needs a positive radius");
  WalkPath p;
  p.circular_ = true;
  p.origin_ = center;
  p.radius_ = radius;
  p.start_angle_ = start_angle_rad;
  p.sense_ = counter_clockwise ? 1.0 : -1.0;
  return p;
}

// Angles are measured in the x-z plane from +x toward +z.
Vec2 WalkPath::point(double arc) const {
  if (!circular_) return origin_ + Vec2{std::cos(heading_), std::sin(heading_)} * arc;
  const double a = start_angle_ + sense_ * arc / radius_;
  return origin_ + Vec2{std::cos(a), std::sin(a)} * radius_;
}

Vec2 WalkPath::tangent(double arc) const {
  if (!circular_) return {std::cos(heading_), std::sin(heading_)};
  const double a = start_angle_ + sense_ * arc / radius_;
  return Vec2{-std::sin(a), std::cos(a)} * sense_;
}

Vec2 WalkPath::left(double arc) const {
  const Vec2 t = tangent(arc);
  // up x forward with y up: (t.z, 0, -t.x)
  return {t.z, -t.x};
}

GaitGenerator::GaitGenerator(GaitParams params, WalkPath path, double start_cycle, Vec2 sole_half_extents)
    : params_(params), path_(path), start_cycle_(start_cycle), sole_half_(sole_half_extents) {
  const auto errors = validate(params_);
  if (!errors.empty()) throw std::invalid_argument("gait: " + errors.front());
}

double GaitGenerator::cycle_at(double t) const {
  if (params_.standing()) return start_cycle_;
  return start_cycle_ + t / params_.step_period();
}

double GaitGenerator::root_arc(double cycle) const { return (cycle - start_cycle_) * params_.step_length; }

Vec2 GaitGenerator::landing_point(Foot f, long long cycle_index) const {
  const double c = static_cast<double>(cycle_index) + (f == Foot::kLeft ? 0.0 : 0.5);
  const double arc = root_arc(c) + 0.5 * params_.step_length * params_.duty_factor;
  const double side = f == Foot::kLeft ? 1.0 : -1.0;
  return path_.point(arc) + path_.left(arc) * (side * 0.5 * params_.step_width);
}

double GaitGenerator::swing_height(double s) const {
  const double lift = params_.swing_lift;
  if (s <= 0.5) {
    const double u = 2.0 * s;
    return lift * u * u * (3.0 - 2.0 * u);
  }
  const double u = 2.0 * s - 1.0;
  const double swing_time = (1.0 - params_.duty_factor) * params_.step_period();
  const double end_slope = -0.5 * params_.contact_speed * swing_time;  // d/du at touchdown
  return lift * (2.0 * u * u * u - 3.0 * u * u + 1.0) + end_slope * (u * u * u - u * u);
}

double GaitGenerator::swing_height_rate(double s) const {
  const double lift = params_.swing_lift;
  if (s <= 0.5) {
    const double u = 2.0 * s;
    return 2.0 * lift * 6.0 * u * (1.0 - u);
  }
  const double u = 2.0 * s - 1.0;
  const double swing_time = (1.0 - params_.duty_factor) * params_.step_period();
  const double end_slope = -0.5 * params_.contact_speed * swing_time;
  return 2.0 * (lift * (6.0 * u * u - 6.0 * u) + end_slope * (3.0 * u * u - 2.0 * u));
}

FootTarget GaitGenerator::foot_target(Foot f, double cycle, const Heightfield& terrain) const {
  FootTarget out;
  if (params_.standing()) {
    const double side = f == Foot::kLeft ? 1.0 : -1.0;
    const Vec2 p = path_.point(0.0) + path_.left(0.0) * (side * 0.5 * params_.step_width);
    out.position = lift3(p, support_height(terrain, p, sole_half_));
    out.stance = true;
    return out;
  }
  const double local = f == Foot::kLeft ? cycle : cycle - 0.5;
  const double k = std::floor(local);
  const double phase = local - k;
  const auto index = static_cast<long long>(k);
  const double d = params_.duty_factor;
  if (phase < d) {
    const Vec2 p = landing_point(f, index);
    out.position = lift3(p, support_height(terrain, p, sole_half_));
    out.stance = true;
    return out;
  }
  const double s = (phase - d) / (1.0 - d);
  const double swing_time = (1.0 - d) * params_.step_period();
  const Vec2 from = landing_point(f, index);
  const Vec2 to = landing_point(f, index + 1);
  const double progress = s - std::sin(kTwoPi * s) / kTwoPi;
  const double progress_rate = 1.0 - std::cos(kTwoPi * s);
  const Vec2 h = from + (to - from) * progress;
  const Vec2 vh = (to - from) * (progress_rate / swing_time);
  const Vec2 grad = surface_gradient(terrain, h);
  out.position = lift3(h, support_height(terrain, h, sole_half_) + swing_height(s));
  out.velocity = {vh.x, swing_height_rate(s) / swing_time + dot(grad, vh), vh.z};
  out.stance = false;
  return out;
}

GaitTargets GaitGenerator::targets(double cycle, const Heightfield& terrain) const {
  GaitTargets out;
  for (Foot f : kFeet) out.feet[static_cast<std::size_t>(index(f))] = foot_target(f, cycle, terrain);
  if (params_.standing()) {
    out.root = path_.point(0.0) + path_.left(0.0) * params_.stand_com_offset;
    out.heading = path_.tangent(0.0);
    return out;
  }
  const double arc = root_arc(cycle);
  out.root = path_.point(arc);
  out.heading = path_.tangent(arc);
  out.root_velocity = Vec3{out.heading.x, 0.0, out.heading.z} * params_.forward_speed;
  return out;
}

double support_displacement(const CharacterState& state, const Heightfield& terrain) {
  const Vec2 u_h = normalized(state.heading);
  const Vec2 com = state.com.horizontal();
  const double y_com = terrain.surface_height_at(com.x, com.z);

  std::array<double, 2> s{};
  std::array<double, 2> y{};
  for (Foot f : kFeet) {
    const Vec2 p = state.foot(f).position.horizontal();
    s[static_cast<std::size_t>(index(f))] = dot(p - com, u_h);
    y[static_cast<std::size_t>(index(f))] = terrain.surface_height_at(p.x, p.z);
  }
  const double s_mid = 0.5 * (s[0] + s[1]);
  const double y_mid = 0.5 * (y[0] + y[1]);

  double us = 1.0;
  double uy = 0.0;
  const std::size_t back = s[0] <= s[1] ? 0 : 1;
  const std::size_t front = 1 - back;
  const double ds = s[front] - s[back];
  if (ds > 1e-6) {
    const double dy = y[front] - y[back];
    const double n = std::hypot(ds, dy);
    us = ds / n;
    uy = dy / n;
  } else {
    const double slope = dot(surface_gradient(terrain, com), u_h);
    const double n = std::hypot(1.0, slope);
    us = 1.0 / n;
    uy = slope / n;
  }
  return s_mid * us + (y_mid - y_com) * uy;
}

double controller_torque(const CharacterState& state, const Heightfield& terrain, double gain_kp, double gain_kd) {
  return gain_kp * support_displacement(state, terrain) + gain_kd * state.tilt_rate;
}

void step_rigid_body(CharacterState& state, double torque, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("step_rigid_body: dt must be positive");
  if (!(state.inertia > 0.0)) throw std::invalid_argument("step_rigid_body: inertia must be positive");
  state.torque = torque;
  state.tilt_rate += torque / state.inertia * dt;
  state.tilt += state.tilt_rate * dt;
  state.update_com();
}

std::vector<ContactEvent> place_feet(CharacterState& state, const GaitTargets& targets, const Heightfield& terrain,
                                     double t) {
  std::vector<ContactEvent> events;
  double grounded_y = 0.0;
  int grounded = 0;
  for (Foot f : kFeet) {
    FootState& foot = state.foot(f);
    const FootTarget& target = targets[f];
    const Vec2 half{foot.half_extents.x, foot.half_extents.z};
    if (foot.phase == FootPhase::kSwing) {
      const double support = support_height(terrain, target.position.horizontal(), half);
      if (target.position.y <= support) {
        const Vec3 pin{target.position.x, support, target.position.z};
        events.push_back({f, t, foot.velocity, pin});
        foot.phase = FootPhase::kContact;
        foot.contact_time = t;
        foot.pin_point = pin;
        foot.position = pin;
        foot.velocity = {};
      } else {
        foot.position = target.position;
        foot.velocity = target.velocity;
      }
    } else {
      const Vec3 pin = *foot.pin_point;
      const double support = support_height(terrain, pin.horizontal(), half);
      if (!target.stance && target.position.y > support + kReleaseThreshold) {
        foot.phase = FootPhase::kSwing;
        foot.pin_point.reset();
        foot.position = target.position;
        foot.velocity = target.velocity;
      } else {
        foot.position = {pin.x, support, pin.z};
        foot.velocity = {};
      }
    }
    if (foot.grounded()) {
      grounded_y += foot.position.y;
      ++grounded;
    }
  }
  const double base_y =
      grounded > 0 ? grounded_y / grounded : terrain.surface_height_at(targets.root.x, targets.root.z);
  state.ground_point = {targets.root.x, base_y, targets.root.z};
  state.heading = targets.heading;
  state.velocity = targets.root_velocity;
  state.update_com();
  return events;
}

}  // namespace terradeform
