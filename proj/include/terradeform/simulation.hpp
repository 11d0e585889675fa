#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "terradeform/character.hpp"
#include "terradeform/deformation.hpp"
#include "terradeform/forces.hpp"
#include "terradeform/heightfield.hpp"
#include "terradeform/materials.hpp"

namespace terradeform {

struct SimulationSettings {
  double dt = 1.0 / 60.0;
  double window_side = 0.40;  // contact window edge, m
  double gain_kp = 30.0;
  double gain_kd = 6.0;
};

/// Per-frame kinematic snapshot of one character, taken after the rigid body step.
struct TraceRow {
  double t = 0.0;
  Vec3 com;
  double tilt = 0.0;
  double tilt_rate = 0.0;
  double torque = 0.0;
  std::array<Vec3, 2> feet{};
  std::array<FootPhase, 2> phases{};
};

struct FrameLog {
  int character = 0;
  ForceBreakdown forces;
  TraceRow trace;
};

enum class RunStatus { kOk, kBoundary };
constexpr const char* name(RunStatus s) { return s == RunStatus::kOk ? "ok" : "boundary"; }

struct RunReport {
  long frames = 0;
  std::vector<double> frame_ms;
  std::vector<FootprintSummary> footprints;
  RunStatus status = RunStatus::kOk;
  std::string boundary_message;
  int degenerate_contour_frames = 0;

  double median_frame_ms() const;
};

/// Fixed-step frame loop. Each step runs, per character in insertion order:
/// gait targets and foot placement, weight split and impulses for new
/// contacts, momentum and foot forces; then every active footprint job in
/// creation order; then the balance controller and the capsule integrator.
class Simulation {
 public:
  Simulation(Heightfield terrain, MaterialParams material, SimulationSettings settings = {});

  /// Adds a walker. The character's inertia is filled in from its capsule
  /// dimensions when left at zero.
  void add_character(CharacterState body, GaitGenerator gait);

  /// Advances one frame. Returns kBoundary when a character leaves the
  /// terrain; that frame is left partially applied and t does not advance.
  RunStatus step();

  /// Steps ceil(duration / dt) frames or until a boundary stop.
  RunReport run(double duration);

  long frame() const { return frame_; }
  double t() const { return static_cast<double>(frame_) * settings_.dt; }
  double dt() const { return settings_.dt; }
  const Heightfield& terrain() const { return terrain_; }
  Heightfield& terrain() { return terrain_; }
  const MaterialParams& material() const { return material_; }
  const SimulationSettings& settings() const { return settings_; }
  std::size_t character_count() const { return characters_.size(); }
  const CharacterState& character(std::size_t k) const { return characters_.at(k).body; }
  const GaitGenerator& gait(std::size_t k) const { return characters_.at(k).gait; }

  const std::vector<FootprintJob>& active_jobs() const { return jobs_; }
  const std::vector<FootprintSummary>& completed_jobs() const { return completed_; }
  /// Completed summaries followed by the still-active jobs.
  std::vector<FootprintSummary> footprint_summaries() const;
  const std::vector<FrameLog>& log() const { return log_; }
  const std::string& boundary_message() const { return boundary_message_; }
  int degenerate_contour_frames() const;

 private:
  struct Walker {
    CharacterState body;
    GaitGenerator gait;
    std::array<std::optional<ImpulseWindow>, 2> impulse{};
    std::array<long, 2> current_job{-1, -1};
    ForceBreakdown forces;
  };

  void contacts_and_forces(int k, Walker& w, double t);

  Heightfield terrain_;
  MaterialParams material_;
  SimulationSettings settings_;
  std::vector<Walker> characters_;
  std::vector<FootprintJob> jobs_;
  std::vector<long> job_ids_;
  std::vector<FootprintSummary> completed_;
  std::vector<FrameLog> log_;
  long next_job_id_ = 0;
  long frame_ = 0;
  int retired_degenerate_frames_ = 0;
  std::string boundary_message_;
};

}  // namespace terradeform
