#include "terradeform/simulation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace terradeform {

double RunReport::median_frame_ms() const {
  if (frame_ms.empty()) return 0.0;
  std::vector<double> v = frame_ms;
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(v.begin(), mid);
  return 0.5 * (lower + upper);
}

Simulation::Simulation(Heightfield terrain, MaterialParams material, SimulationSettings settings)
    : terrain_(std::move(terrain)), material_(material), settings_(settings) {
  if (!(settings_.dt > 0.0)) throw std::invalid_argument("simulation: dt must be positive");
  if (!(settings_.window_side > 0.0)) throw std::invalid_argument("simulation: window_side must be positive");
  const auto errors = validate(material_);
  if (!errors.empty()) throw std::invalid_argument("material: " + errors.front());
}

void Simulation::add_character(CharacterState body, GaitGenerator gait) {
  if (!(body.mass > 0.0)) throw std::invalid_argument("character mass must be positive");
  if (body.inertia == 0.0) body.inertia = capsule_inertia(body.mass, body.height, body.radius);
  characters_.push_back(Walker{body, std::move(gait), {}, {-1, -1}, {}});
}

void Simulation::contacts_and_forces(int k, Walker& w, double t) {
  CharacterState& body = w.body;
  const GaitTargets targets = w.gait.targets_at_time(t, terrain_);
  const std::vector<ContactEvent> events = place_feet(body, targets, terrain_, t);

  ForceBreakdown& fb = w.forces;
  fb = ForceBreakdown{};
  fb.t = t;
  const std::array<bool, 2> grounded{body.foot(Foot::kLeft).grounded(), body.foot(Foot::kRight).grounded()};
  const WeightRatio wr = weight_ratio(body.foot(Foot::kLeft).position.horizontal(),
                                      body.foot(Foot::kRight).position.horizontal(), body.com.horizontal());
  fb.weight_ratio_right = wr.right;
  fb.degenerate_support = grounded[0] && grounded[1] && wr.degenerate;
  const std::array<Vec3, 2> weights = weight_forces(body.mass, wr.right, grounded);

  std::array<double, 2> share{0.0, 0.0};
  if (grounded[0] && grounded[1]) {
    share = {1.0 - wr.right, wr.right};
  } else if (grounded[0]) {
    share[0] = 1.0;
  } else if (grounded[1]) {
    share[1] = 1.0;
  }

  for (const ContactEvent& e : events) {
    const auto f = static_cast<std::size_t>(index(e.foot));
    const ImpulseWindow window{impact_impulse(share[f], body.mass, e.velocity_before), e.t0, material_.char_time,
                               share[f]};
    w.impulse[f] = window;
    const Vec2 at = e.pin_point.horizontal();
    jobs_.emplace_back(name(e.foot), 2 * k + index(e.foot), contact_window(at, settings_.window_side, terrain_),
                       window, material_, terrain_, terrain_.base_normal(at.x, at.z));
    job_ids_.push_back(next_job_id_);
    w.current_job[f] = next_job_id_++;
  }

  for (Foot foot : kFeet) {
    const auto f = static_cast<std::size_t>(index(foot));
    FootForces& ff = fb[foot];
    ff.grounded = grounded[f];
    ff.weight_ratio = share[f];
    ff.weight = weights[f];
    ff.momentum = w.impulse[f] ? momentum_force(*w.impulse[f], t) : Vec3{};
    ff.foot = ff.weight + ff.momentum;
    ff.ground_reaction = -ff.foot;
  }
}

RunStatus Simulation::step() {
  const double t = this->t();
  const double dt = settings_.dt;
  try {
    for (std::size_t k = 0; k < characters_.size(); ++k) contacts_and_forces(static_cast<int>(k), characters_[k], t);

    std::size_t kept = 0;
    for (std::size_t n = 0; n < jobs_.size(); ++n) {
      FootprintJob& job = jobs_[n];
      const long id = job_ids_[n];
      const Walker& w = characters_[static_cast<std::size_t>(job.owner() / 2)];
      const Foot foot = job.owner() % 2 == 0 ? Foot::kLeft : Foot::kRight;
      const Vec3 force = w.current_job[static_cast<std::size_t>(index(foot))] == id ? w.forces[foot].foot : Vec3{};
      const FootprintJob::Status status = job.step(terrain_, w.body.foot(foot).collider(), force, t, dt);
      if (status == FootprintJob::Status::kComplete) {
        completed_.push_back(summarize(job));
        retired_degenerate_frames_ += job.degenerate_contour_frames();
        continue;
      }
      if (kept != n) {
        jobs_[kept] = std::move(jobs_[n]);
        job_ids_[kept] = id;
      }
      ++kept;
    }
    jobs_.erase(jobs_.begin() + static_cast<std::ptrdiff_t>(kept), jobs_.end());
    job_ids_.resize(kept);

    for (std::size_t k = 0; k < characters_.size(); ++k) {
      Walker& w = characters_[k];
      const double torque = controller_torque(w.body, terrain_, settings_.gain_kp, settings_.gain_kd);
      step_rigid_body(w.body, torque, dt);

      FrameLog row;
      row.character = static_cast<int>(k);
      row.forces = w.forces;
      row.trace.t = t;
      row.trace.com = w.body.com;
      row.trace.tilt = w.body.tilt;
      row.trace.tilt_rate = w.body.tilt_rate;
      row.trace.torque = w.body.torque;
      for (Foot f : kFeet) {
        const auto i = static_cast<std::size_t>(index(f));
        row.trace.feet[i] = w.body.foot(f).position;
        row.trace.phases[i] = w.body.foot(f).phase;
      }
      log_.push_back(row);
    }
  } catch (const std::out_of_range& e) {
    boundary_message_ = e.what();
    return RunStatus::kBoundary;
  }
  ++frame_;
  return RunStatus::kOk;
}

RunReport Simulation::run(double duration) {
  if (!(duration > 0.0)) throw std::invalid_argument("run: duration must be positive");
  const long steps = static_cast<long>(std::ceil(duration / settings_.dt - 1e-9));
  RunReport report;
  report.frame_ms.reserve(static_cast<std::size_t>(steps));
  for (long s = 0; s < steps; ++s) {
    const auto start = std::chrono::steady_clock::now();
    const RunStatus status = step();
    const auto stop = std::chrono::steady_clock::now();
    if (status != RunStatus::kOk) {
      report.status = status;
      report.boundary_message = boundary_message_;
      break;
    }
    report.frame_ms.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
    ++report.frames;
  }
  report.footprints = footprint_summaries();
  report.degenerate_contour_frames = degenerate_contour_frames();
  return report;
}

std::vector<FootprintSummary> Simulation::footprint_summaries() const {
  std::vector<FootprintSummary> out = completed_;
  for (const FootprintJob& job : jobs_) out.push_back(summarize(job));
  return out;
}

int Simulation::degenerate_contour_frames() const {
  int n = retired_degenerate_frames_;
  for (const FootprintJob& job : jobs_) n += job.degenerate_contour_frames();
  return n;
}

}  // namespace terradeform
