#include "terradeform/deformation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace terradeform {

namespace {

// Linear ramp toward target at dt/tau of the target per frame. The last step
// lands exactly on the target; increments within rounding noise of the
// remainder count as the last step.
double rationed_step(double target, double done, double dt, double tau) {
  if (!(done < target)) return 0.0;
  const double step = dt / tau * target;
  const double remainder = target - done;
  return step >= remainder * (1.0 - 1e-9) ? remainder : step;
}

}  // namespace

double target_compression(double sigma, double loose_depth, double young_modulus) {
  if (!(young_modulus > 0.0) || !(loose_depth > 0.0))
    throw std::invalid_argument("target_compression: E and L0 must be positive");
  if (!(sigma > 0.0)) return 0.0;
  return std::min(sigma * loose_depth / young_modulus, loose_depth);
}

double frame_compression(double delta_l, double c_acc, double dt, double tau) {
  if (!(dt > 0.0) || !(tau > 0.0)) throw std::invalid_argument("frame_compression: dt and tau must be positive");
  return rationed_step(delta_l, c_acc, dt, tau);
}

double displaced_volume(double poisson_ratio, double contact_area, double delta_l) {
  return 2.0 * poisson_ratio * contact_area * delta_l;
}

double target_accumulation(double delta_v, double cell_area, std::size_t num_neighbors) {
  if (!(cell_area > 0.0)) throw std::invalid_argument("target_accumulation: cell area must be positive");
  if (num_neighbors == 0) return 0.0;
  return delta_v / (cell_area * static_cast<double>(num_neighbors));
}

double frame_accumulation(double delta_l_inc, double deposited, double dt, double tau) {
  if (!(dt > 0.0) || !(tau > 0.0)) throw std::invalid_argument("frame_accumulation: dt and tau must be positive");
  return rationed_step(delta_l_inc, deposited, dt, tau);
}

FootprintJob::FootprintJob(std::string source, int owner, const CellRect& window, const ImpulseWindow& impulse,
                           const MaterialParams& material, const Heightfield& field, Vec3 ground_normal)
    : source_(std::move(source)),
      owner_(owner),
      window_(window),
      impulse_(impulse),
      material_(material),
      normal_(ground_normal),
      cell_area_(field.cell_area()) {
  if (window.empty()) throw std::invalid_argument("footprint job needs a non-empty window");
  const int ri = static_cast<int>(std::ceil(material.contour_radius / field.cell_size_x())) + 1;
  const int rj = static_cast<int>(std::ceil(material.contour_radius / field.cell_size_z())) + 1;
  spread_ = {std::max(window.i0 - ri, 0), std::min(window.i1 + ri, field.nx()), std::max(window.j0 - rj, 0),
             std::min(window.j1 + rj, field.nz())};
  applied_.assign(window_.count(), 0.0);
  deposited_.assign(spread_.count(), 0.0);
  t_end_ = impulse.t0;
}

std::size_t FootprintJob::window_slot(CellIndex c) const {
  return static_cast<std::size_t>(c.j - window_.j0) * static_cast<std::size_t>(window_.i1 - window_.i0) +
         static_cast<std::size_t>(c.i - window_.i0);
}

std::size_t FootprintJob::spread_slot(CellIndex c) const {
  return static_cast<std::size_t>(c.j - spread_.j0) * static_cast<std::size_t>(spread_.i1 - spread_.i0) +
         static_cast<std::size_t>(c.i - spread_.i0);
}

FootprintJob::Status FootprintJob::advance(Heightfield& field, ContactPatch patch, Vec3 foot_force, double t,
                                           double dt) {
  if (!active_) return Status::kComplete;
  ++frames_;
  patch_ = std::move(patch);

  const double sigma = normal_stress(foot_force, normal_, patch_.contact_area);
  targets_.delta_l = target_compression(sigma, material_.loose_depth, material_.young_modulus);
  targets_.delta_v = displaced_volume(material_.poisson_ratio, patch_.contact_area, targets_.delta_l);
  targets_.delta_l_inc = target_accumulation(targets_.delta_v, cell_area_, patch_.contour_cells.size());
  if (targets_.delta_v > 0.0 && patch_.contour_cells.empty()) ++degenerate_frames_;

  const double tau = material_.char_time;
  bool gate_open = false;

  for (CellIndex c : patch_.hit_cells) {
    const double inc = frame_compression(targets_.delta_l, field.compression(c), dt, tau);
    if (inc > 0.0) {
      const double applied = field.apply_compression(c, inc, material_.loose_depth);
      applied_[window_slot(c)] += applied;
      carved_volume_ += applied * cell_area_;
    }
    const double now = field.compression(c);
    if (now < targets_.delta_l && now < material_.loose_depth) gate_open = true;
  }

  for (CellIndex c : patch_.contour_cells) {
    double& done = deposited_[spread_slot(c)];
    const double inc = frame_accumulation(targets_.delta_l_inc, done, dt, tau);
    if (inc > 0.0) {
      field.apply_accumulation(c, inc);
      done += inc;
      bump_volume_ += inc * cell_area_;
    }
    if (done < targets_.delta_l_inc) gate_open = true;
  }

  const bool past_window = t - impulse_.t0 >= tau - kWindowEpsilon;
  const bool unloaded = !(sigma > 0.0);
  if (!gate_open && (past_window || unloaded)) {
    active_ = false;
    t_end_ = t;
    return Status::kComplete;
  }
  t_end_ = t;
  return Status::kActive;
}

std::size_t FootprintJob::compressed_cells() const {
  return static_cast<std::size_t>(std::count_if(applied_.begin(), applied_.end(), [](double v) { return v > 0.0; }));
}

double FootprintJob::mean_depth() const {
  const std::size_t n = compressed_cells();
  return n == 0 ? 0.0 : carved_volume_ / (static_cast<double>(n) * cell_area_);
}

FootprintSummary summarize(const FootprintJob& job) {
  return {job.source(), job.t0(), job.t_end(), job.compressed_cells(), job.mean_depth(), job.carved_volume(),
          job.bump_volume()};
}

}  // namespace terradeform
