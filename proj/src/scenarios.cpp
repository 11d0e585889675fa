#include "terradeform/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "terradeform/contact.hpp"
#include "terradeform/io.hpp"

namespace terradeform {

namespace {

double radians(double deg) { return deg * std::numbers::pi / 180.0; }

std::string key_value(const std::vector<std::pair<std::string, std::string>>& rows) {
  std::string out;
  for (const auto& [k, v] : rows) out += k + "=" + v + "\n";
  return out;
}

std::string pgm_text(std::span<const double> heights, int nx, int nz) {
  std::ostringstream s;
  write_pgm(s, heights, nx, nz);
  return s.str();
}

void emit(ScenarioOutcome& outcome, const std::filesystem::path& path, const std::string& contents) {
  write_text_file(path, contents);
  outcome.files.push_back(path);
}

double percentile(std::vector<double> v, double q) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const auto k = static_cast<std::size_t>(std::ceil(q * static_cast<double>(v.size()))) - 1;
  return v[std::min(k, v.size() - 1)];
}

}  // namespace

Heightfield make_terrain(const TerrainSpec& spec) {
  const double base = spec.base_height;
  if (spec.profile == "flat") {
    return Heightfield(spec.width, spec.depth, spec.nx, spec.nz, [base](double, double) { return base; });
  }
  if (spec.profile == "slope") {
    const double rise = std::tan(radians(spec.slope_deg));
    return Heightfield(spec.width, spec.depth, spec.nx, spec.nz, [base, rise](double x, double) { return base + rise * x; });
  }
  throw std::invalid_argument("unknown terrain profile '" + spec.profile + "'");
}

WalkPath make_path(const PathSpec& spec) {
  if (spec.kind == "straight") return WalkPath::straight({spec.x, spec.z}, radians(spec.heading_deg));
  if (spec.kind == "circle")
    return WalkPath::circle({spec.center_x, spec.center_z}, spec.radius, radians(spec.start_angle_deg),
                            spec.counter_clockwise);
  throw std::invalid_argument("unknown path kind '" + spec.kind + "'");
}

Simulation make_walk_simulation(const ScenarioConfig& cfg) {
  SimulationSettings settings;
  settings.dt = cfg.dt;
  settings.window_side = cfg.window_side;
  settings.gain_kp = cfg.gain_kp;
  settings.gain_kd = cfg.gain_kd;
  Simulation sim(make_terrain(cfg.terrain), cfg.material, settings);

  CharacterState body;
  body.mass = cfg.mass;
  body.height = cfg.height;
  body.radius = cfg.radius;
  body.com_height = cfg.com_height;
  for (FootState& f : body.feet) f.half_extents = cfg.foot_half_extents;
  GaitParams gait = cfg.gait;
  if (cfg.kind == ScenarioKind::kStand) gait.forward_speed = 0.0;
  sim.add_character(body, GaitGenerator(gait, make_path(cfg.path), cfg.start_cycle,
                                       {cfg.foot_half_extents.x, cfg.foot_half_extents.z}));
  return sim;
}

ScenarioConfig walk_grf_config(ScenarioConfig cfg) {
  cfg.gait.forward_speed = 1.65;
  cfg.material.char_time = 0.05;
  cfg.material.young_modulus = 2.0e6;
  return cfg;
}

WalkOutcome simulate_walk(const ScenarioConfig& cfg_in) {
  const ScenarioConfig cfg = cfg_in.kind == ScenarioKind::kWalkGrf ? walk_grf_config(cfg_in) : cfg_in;
  Simulation sim = make_walk_simulation(cfg);
  RunReport report = sim.run(cfg.duration);
  return {std::move(sim), std::move(report)};
}

double peak_normalized_grf(const std::vector<FrameLog>& log, double mass) {
  double peak = 0.0;
  for (const FrameLog& row : log)
    peak = std::max(peak, (row.forces[Foot::kLeft].ground_reaction.y + row.forces[Foot::kRight].ground_reaction.y) /
                              (mass * kGravity));
  return peak;
}

SphereDropOutcome simulate_sphere_drop(const ScenarioConfig& cfg) {
  const SphereSpec& s = cfg.sphere;
  Heightfield field = make_terrain(cfg.terrain);
  const double surface = field.surface_height_at(s.x, s.z);
  const SphereCollider sphere{{s.x, surface + s.radius - s.contact_depth, s.z}, s.radius};
  const double side = std::max(cfg.window_side, 2.0 * s.radius + 2.0 * field.cell_size());
  const CellRect window = contact_window({s.x, s.z}, side, field);
  ContactPatch patch = detect_hits(sphere, window, field, cfg.material.contour_radius);

  SphereDropOutcome out{.field = field, .hit_cells = patch.hit_cells};
  out.impact_speed = std::sqrt(2.0 * kGravity * s.drop_height);
  const ImpulseWindow impulse{impact_impulse(1.0, s.mass, {0.0, -out.impact_speed, 0.0}), 0.0, cfg.material.char_time,
                              1.0};
  out.momentum_force = norm(impulse.impulse) / impulse.tau;
  out.total_force = s.mass * kGravity + out.momentum_force;
  out.contact_area = patch.contact_area;

  FootprintJob job("sphere", 0, window, impulse, cfg.material, out.field, out.field.base_normal(s.x, s.z));
  // Completion is guaranteed once the load window closes; the cap only guards malformed input.
  const long cap = static_cast<long>(std::ceil(cfg.material.char_time / cfg.dt)) + 100000;
  for (long frame = 0; frame < cap; ++frame) {
    const double t = static_cast<double>(frame) * cfg.dt;
    const Vec3 force = kGravityVec * s.mass + momentum_force(impulse, t);
    ++out.frames;
    if (job.advance(out.field, patch, force, t, cfg.dt) == FootprintJob::Status::kComplete) break;
  }
  for (CellIndex c : out.hit_cells) out.crater_depth = std::max(out.crater_depth, out.field.compression(c));
  out.carved_volume = job.carved_volume();
  out.bump_volume = job.bump_volume();
  out.summary = summarize(job);
  return out;
}

std::vector<GalleryRow> simulate_gallery(const ScenarioConfig& cfg) {
  std::vector<GalleryRow> rows;
  for (std::string_view name : kPresetNames) {
    ScenarioConfig run = cfg;
    run.kind = ScenarioKind::kWalk;
    run.material = preset(name);
    run.material_preset = std::string(name);
    WalkOutcome w = simulate_walk(run);

    GalleryRow row;
    row.preset = std::string(name);
    row.material = run.material;
    row.status = w.report.status;
    double depth_sum = 0.0;
    for (const FootprintSummary& f : w.report.footprints) {
      row.carved_volume += f.carved_volume;
      row.bump_volume += f.bump_volume;
      if (f.num_hits == 0) continue;
      depth_sum += f.mean_depth;
      ++row.footprints;
    }
    row.mean_depth = row.footprints > 0 ? depth_sum / static_cast<double>(row.footprints) : 0.0;
    row.bump_ratio = row.carved_volume > 0.0 ? row.bump_volume / row.carved_volume : 0.0;
    row.display = w.sim.terrain().display_height(run.material.blur_sigma_cm);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::filesystem::path default_output_dir(const ScenarioConfig& cfg) {
  if (!cfg.output.dir.empty()) return cfg.output.dir;
  return std::filesystem::path("out") / std::string(name(cfg.kind));
}

ScenarioOutcome run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& out_dir) {
  ScenarioOutcome outcome;
  std::vector<std::pair<std::string, std::string>> summary{{"scenario", std::string(name(cfg.kind))}};

  switch (cfg.kind) {
    case ScenarioKind::kSphereDrop: {
      const SphereDropOutcome r = simulate_sphere_drop(cfg);
      std::ostringstream fp;
      write_footprints_csv(fp, {r.summary});
      emit(outcome, out_dir / "footprints.csv", fp.str());
      if (cfg.output.heightmap) {
        const auto raw = r.field.raw_grid();
        emit(outcome, out_dir / "heightmap_raw.pgm", pgm_text(raw, r.field.nx(), r.field.nz()));
        const auto display = r.field.display_height(cfg.material.blur_sigma_cm);
        emit(outcome, out_dir / "heightmap.pgm", pgm_text(display, r.field.nx(), r.field.nz()));
      }
      summary.insert(summary.end(), {{"status", "ok"},
                                     {"frames", std::to_string(r.frames)},
                                     {"impact_speed", format_number(r.impact_speed)},
                                     {"momentum_force", format_number(r.momentum_force)},
                                     {"total_force", format_number(r.total_force)},
                                     {"num_hits", std::to_string(r.hit_cells.size())},
                                     {"contact_area", format_number(r.contact_area)},
                                     {"crater_depth", format_number(r.crater_depth)},
                                     {"carved_volume", format_number(r.carved_volume)},
                                     {"bump_volume", format_number(r.bump_volume)}});
      break;
    }
    case ScenarioKind::kGallery: {
      const std::vector<GalleryRow> rows = simulate_gallery(cfg);
      std::ostringstream csv;
      csv << "preset,young_modulus,poisson_ratio,char_time,footprints,mean_depth,carved_volume,bump_volume,bump_ratio,"
             "status\n";
      for (const GalleryRow& row : rows) {
        csv << row.preset << ',' << format_number(row.material.young_modulus) << ','
            << format_number(row.material.poisson_ratio) << ',' << format_number(row.material.char_time) << ','
            << row.footprints << ',' << format_number(row.mean_depth) << ',' << format_number(row.carved_volume) << ','
            << format_number(row.bump_volume) << ',' << format_number(row.bump_ratio) << ',' << name(row.status)
            << '\n';
        if (row.status != RunStatus::kOk) outcome.status = row.status;
        if (cfg.output.heightmap)
          emit(outcome, out_dir / ("heightmap_" + row.preset + ".pgm"),
               pgm_text(row.display, cfg.terrain.nx, cfg.terrain.nz));
      }
      emit(outcome, out_dir / "gallery.csv", csv.str());
      summary.emplace_back("status", name(outcome.status));
      break;
    }
    default: {
      const WalkOutcome w = simulate_walk(cfg);
      outcome.status = w.report.status;
      const auto& log = w.sim.log();
      if (cfg.output.forces) {
        std::ostringstream s;
        write_forces_csv(s, log, cfg.mass);
        emit(outcome, out_dir / "forces.csv", s.str());
      }
      if (cfg.output.trace) {
        std::ostringstream s;
        write_trace_csv(s, log);
        emit(outcome, out_dir / "trace.csv", s.str());
      }
      std::ostringstream fp;
      write_footprints_csv(fp, w.report.footprints);
      emit(outcome, out_dir / "footprints.csv", fp.str());
      const Heightfield& field = w.sim.terrain();
      if (cfg.output.heightmap) {
        const auto raw = field.raw_grid();
        emit(outcome, out_dir / "heightmap_raw.pgm", pgm_text(raw, field.nx(), field.nz()));
        const auto display = field.display_height(w.sim.material().blur_sigma_cm);
        emit(outcome, out_dir / "heightmap.pgm", pgm_text(display, field.nx(), field.nz()));
      }
      summary.insert(summary.end(), {{"status", name(w.report.status)},
                                     {"frames", std::to_string(w.report.frames)},
                                     {"footprints", std::to_string(w.report.footprints.size())},
                                     {"carved_volume", format_number(field.carved_volume())},
                                     {"bump_volume", format_number(field.bump_volume())},
                                     {"peak_grf_norm", format_number(peak_normalized_grf(log, cfg.mass))},
                                     {"degenerate_contour_frames", std::to_string(w.report.degenerate_contour_frames)}});
      if (w.report.status != RunStatus::kOk) summary.emplace_back("boundary", w.report.boundary_message);
      break;
    }
  }

  outcome.summary = key_value(summary);
  emit(outcome, out_dir / "report.txt", outcome.summary);
  return outcome;
}

BenchResult bench(const ScenarioConfig& cfg) {
  ScenarioConfig run = cfg;
  if (run.kind != ScenarioKind::kStand && run.kind != ScenarioKind::kSlopeWalk && run.kind != ScenarioKind::kWalkGrf)
    run.kind = ScenarioKind::kWalk;
  const WalkOutcome w = simulate_walk(run);
  BenchResult r;
  r.nx = run.terrain.nx;
  r.nz = run.terrain.nz;
  r.frames = w.report.frames;
  r.status = w.report.status;
  const auto& ms = w.report.frame_ms;
  r.median_ms = w.report.median_frame_ms();
  r.p95_ms = percentile(ms, 0.95);
  r.mean_ms = ms.empty() ? 0.0 : std::accumulate(ms.begin(), ms.end(), 0.0) / static_cast<double>(ms.size());
  r.max_ms = ms.empty() ? 0.0 : *std::max_element(ms.begin(), ms.end());
  return r;
}

}  // namespace terradeform
