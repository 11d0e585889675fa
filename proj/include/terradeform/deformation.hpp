#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "terradeform/contact.hpp"
#include "terradeform/forces.hpp"
#include "terradeform/heightfield.hpp"
#include "terradeform/materials.hpp"

namespace terradeform {

/// Hooke rod target: min(sigma * L0 / E, L0).
double target_compression(double sigma, double loose_depth, double young_modulus);

/// Compression to apply this frame: dt/tau of the target, clamped so that the
/// accumulated value lands exactly on the target. Zero once the gate closes.
double frame_compression(double delta_l, double c_acc, double dt, double tau);

/// Laterally displaced volume 2 * nu * A * dL (zero for nu = 0, the full
/// carved volume for nu = 0.5).
double displaced_volume(double poisson_ratio, double contact_area, double delta_l);

/// Per-contour-cell target height. Returns 0 when the contour is empty.
double target_accumulation(double delta_v, double cell_area, std::size_t num_neighbors);

/// Bump height to deposit this frame given the job's progress on the cell.
double frame_accumulation(double delta_l_inc, double deposited, double dt, double tau);

struct DeformationTargets {
  double delta_l = 0.0;
  double delta_v = 0.0;
  double delta_l_inc = 0.0;
};

/// One active foot-to-ground deformation process. The window is frozen at the
/// contact position; hits and contour are re-cast every frame inside it.
class FootprintJob {
 public:
  FootprintJob(std::string source, int owner, const CellRect& window, const ImpulseWindow& impulse,
               const MaterialParams& material, const Heightfield& field, Vec3 ground_normal);

  enum class Status { kActive, kComplete };

  /// Advances the job by one frame using the current collider pose and foot
  /// force. Applies compression to hit cells and accumulation to contour cells.
  template <typename Collider>
  Status step(Heightfield& field, const Collider& collider, Vec3 foot_force, double t, double dt) {
    return advance(field, detect_hits(collider, window_, field, material_.contour_radius), foot_force, t, dt);
  }

  /// Same as step() with an already cast patch.
  Status advance(Heightfield& field, ContactPatch patch, Vec3 foot_force, double t, double dt);

  bool active() const { return active_; }
  const std::string& source() const { return source_; }
  int owner() const { return owner_; }
  const CellRect& window() const { return window_; }
  const ImpulseWindow& impulse() const { return impulse_; }
  const MaterialParams& material() const { return material_; }
  const ContactPatch& patch() const { return patch_; }
  const DeformationTargets& targets() const { return targets_; }
  double t0() const { return impulse_.t0; }
  double t_end() const { return t_end_; }
  int frames() const { return frames_; }
  double carved_volume() const { return carved_volume_; }
  double bump_volume() const { return bump_volume_; }
  std::size_t compressed_cells() const;
  /// Mean compression over the cells this job compressed.
  double mean_depth() const;
  int degenerate_contour_frames() const { return degenerate_frames_; }

 private:
  std::size_t window_slot(CellIndex c) const;
  std::size_t spread_slot(CellIndex c) const;

  std::string source_;
  int owner_;
  CellRect window_;
  CellRect spread_;
  ImpulseWindow impulse_;
  MaterialParams material_;
  Vec3 normal_;
  double cell_area_;
  ContactPatch patch_;
  DeformationTargets targets_;
  std::vector<double> applied_;    // compression applied by this job, per window cell
  std::vector<double> deposited_;  // bump deposited by this job, per spread cell
  bool active_ = true;
  double t_end_ = 0.0;
  int frames_ = 0;
  double carved_volume_ = 0.0;
  double bump_volume_ = 0.0;
  int degenerate_frames_ = 0;
};

/// Per-job summary row.
struct FootprintSummary {
  std::string source;
  double t0 = 0.0;
  double t_end = 0.0;
  std::size_t num_hits = 0;
  double mean_depth = 0.0;
  double carved_volume = 0.0;
  double bump_volume = 0.0;
};

FootprintSummary summarize(const FootprintJob& job);

}  // namespace terradeform
