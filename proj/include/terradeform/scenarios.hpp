#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "terradeform/config.hpp"
#include "terradeform/heightfield.hpp"
#include "terradeform/simulation.hpp"

namespace terradeform {

Heightfield make_terrain(const TerrainSpec& spec);
WalkPath make_path(const PathSpec& spec);

/// Simulation with one walker placed at the start of the configured path.
Simulation make_walk_simulation(const ScenarioConfig& cfg);

/// The ground-reaction validation setup: 1.65 m/s, tau = 0.05 s, E = 2 MPa.
ScenarioConfig walk_grf_config(ScenarioConfig cfg);

struct WalkOutcome {
  Simulation sim;
  RunReport report;
};

/// Runs walk, stand, slope_walk and walk_grf configs in memory.
WalkOutcome simulate_walk(const ScenarioConfig& cfg);

/// Largest per-frame total vertical ground reaction over m*g.
double peak_normalized_grf(const std::vector<FrameLog>& log, double mass);

struct SphereDropOutcome {
  Heightfield field;
  std::vector<CellIndex> hit_cells;
  double impact_speed = 0.0;
  double momentum_force = 0.0;  // |J| / tau
  double total_force = 0.0;     // m*g + |J| / tau
  double contact_area = 0.0;
  double crater_depth = 0.0;    // deepest compression among hit cells
  double carved_volume = 0.0;
  double bump_volume = 0.0;
  int frames = 0;
  FootprintSummary summary{};
};

/// Drops a sphere from rest at drop_height. The sphere comes to rest
/// contact_depth below the surface; its ray-cast patch at that pose is held
/// for the whole footprint job, which runs to completion.
SphereDropOutcome simulate_sphere_drop(const ScenarioConfig& cfg);

struct GalleryRow {
  std::string preset;
  MaterialParams material;
  std::size_t footprints = 0;
  double mean_depth = 0.0;
  double carved_volume = 0.0;
  double bump_volume = 0.0;
  double bump_ratio = 0.0;  // bump / carved
  RunStatus status = RunStatus::kOk;
  std::vector<double> display;  // display heightmap after the walk
};

/// The configured walk repeated on every named preset.
std::vector<GalleryRow> simulate_gallery(const ScenarioConfig& cfg);

std::filesystem::path default_output_dir(const ScenarioConfig& cfg);

struct ScenarioOutcome {
  RunStatus status = RunStatus::kOk;
  std::vector<std::filesystem::path> files;
  std::string summary;  // key=value lines, also written to report.txt
};

/// Runs the scenario and writes its files into out_dir.
ScenarioOutcome run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& out_dir);

struct BenchResult {
  int nx = 0;
  int nz = 0;
  long frames = 0;
  double median_ms = 0.0;
  double p95_ms = 0.0;
  double mean_ms = 0.0;
  double max_ms = 0.0;
  RunStatus status = RunStatus::kOk;
};

/// Times the configured walk frame by frame.
BenchResult bench(const ScenarioConfig& cfg);

}  // namespace terradeform
