#include "terradeform/scenarios.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "terradeform/io.hpp"

namespace terradeform {
namespace {

ScenarioConfig sphere_config(double mass, double e) {
  ScenarioConfig cfg;
  cfg.kind = ScenarioKind::kSphereDrop;
  cfg.sphere.mass = mass;
  cfg.material.young_modulus = e;
  cfg.material.char_time = 0.2;
  return cfg;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(SphereDrop, ImpactArithmetic) {
  const SphereDropOutcome r = simulate_sphere_drop(sphere_config(50.0, 1e6));
  EXPECT_NEAR(r.impact_speed, 7.0036, 5e-5);
  EXPECT_NEAR(r.momentum_force, 1750.9, 0.05);
  EXPECT_NEAR(r.total_force, 2241.4, 0.05);
  EXPECT_GT(r.hit_cells.size(), 0u);
  EXPECT_EQ(r.contact_area, static_cast<double>(r.hit_cells.size()) * r.field.cell_area());
  EXPECT_GT(r.crater_depth, 0.0);
  EXPECT_LE(r.crater_depth, 0.3);
  EXPECT_EQ(r.summary.source, "sphere");
}

TEST(SphereDrop, HeavierDigsDeeperStifferDigsLess) {
  const double base = simulate_sphere_drop(sphere_config(50.0, 1e6)).crater_depth;
  EXPECT_GT(simulate_sphere_drop(sphere_config(100.0, 1e6)).crater_depth, base);
  EXPECT_LT(simulate_sphere_drop(sphere_config(50.0, 2e6)).crater_depth, base);
}

TEST(WalkGrf, RowsObeyForceContracts) {
  ScenarioConfig cfg;
  cfg.kind = ScenarioKind::kWalkGrf;
  cfg.duration = 5.0;
  const WalkOutcome w = simulate_walk(cfg);
  ASSERT_EQ(w.report.status, RunStatus::kOk);
  const double mg = cfg.mass * kGravity;
  int single_support = 0;
  int strikes = 0;
  const auto& log = w.sim.log();
  for (std::size_t k = 0; k < log.size(); ++k) {
    const ForceBreakdown& fb = log[k].forces;
    for (Foot f : kFeet) EXPECT_EQ(fb[f].ground_reaction, -fb[f].foot);
    const bool left = fb[Foot::kLeft].grounded;
    const bool right = fb[Foot::kRight].grounded;
    if (left != right) {
      const FootForces& stance = left ? fb[Foot::kLeft] : fb[Foot::kRight];
      if (stance.momentum == Vec3{}) {
        EXPECT_DOUBLE_EQ(stance.ground_reaction.y / mg, 1.0);
        ++single_support;
      }
    }
    if (k == 0) continue;
    for (Foot f : kFeet) {
      const std::size_t i = static_cast<std::size_t>(index(f));
      const bool strike = log[k].trace.phases[i] == FootPhase::kContact &&
                          log[k - 1].trace.phases[i] == FootPhase::kSwing;
      if (!strike) continue;
      ++strikes;
      const Vec3 step = fb[f].momentum;
      EXPECT_LT(step.y, 0.0);
      EXPECT_EQ(log[k - 1].forces[f].momentum, Vec3{});
      // The step holds its height for the whole window (tau = 3 frames).
      for (std::size_t n = k; n < k + 3 && n < log.size(); ++n) EXPECT_EQ(log[n].forces[f].momentum, step);
    }
  }
  EXPECT_GT(single_support, 50);
  EXPECT_GE(strikes, 8);
}

TEST(WalkOutputs, SixHundredFramesGiveTwelveHundredForceRows) {
  ScenarioConfig cfg;
  cfg.duration = 10.0;
  cfg.path.kind = "circle";
  const WalkOutcome w = simulate_walk(cfg);
  ASSERT_EQ(w.report.status, RunStatus::kOk);
  EXPECT_EQ(w.report.frames, 600);
  std::ostringstream out;
  write_forces_csv(out, w.sim.log(), cfg.mass);
  const std::string text = out.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1201);
}

TEST(WalkOutputs, DryDirtConservesVolumeAtHalfPoisson) {
  ScenarioConfig cfg;
  cfg.material = preset("dry_sand");
  const WalkOutcome w = simulate_walk(cfg);
  const double carved = w.sim.terrain().carved_volume();
  ASSERT_GT(carved, 0.0);
  EXPECT_NEAR(w.sim.terrain().bump_volume(), carved, 0.02 * carved);
}

TEST(RunScenario, ByteIdenticalOutputs) {
  const auto root = std::filesystem::temp_directory_path() / "terradeform_scenario_test";
  std::filesystem::remove_all(root);
  ScenarioConfig cfg;
  cfg.duration = 2.0;
  cfg.terrain.nx = cfg.terrain.nz = 128;
  const ScenarioOutcome a = run_scenario(cfg, root / "a");
  const ScenarioOutcome b = run_scenario(cfg, root / "b");
  ASSERT_EQ(a.files.size(), b.files.size());
  ASSERT_GE(a.files.size(), 6u);
  for (std::size_t k = 0; k < a.files.size(); ++k) {
    EXPECT_EQ(a.files[k].filename(), b.files[k].filename());
    EXPECT_EQ(slurp(a.files[k]), slurp(b.files[k])) << a.files[k];
  }
  EXPECT_NE(a.summary.find("status=ok"), std::string::npos);
  std::filesystem::remove_all(root);
}

TEST(RunScenario, SphereAndGalleryWriteTheirFiles) {
  const auto root = std::filesystem::temp_directory_path() / "terradeform_scenario_files";
  std::filesystem::remove_all(root);
  ScenarioConfig sphere = sphere_config(50.0, 1e6);
  sphere.terrain.nx = sphere.terrain.nz = 128;
  const ScenarioOutcome s = run_scenario(sphere, root / "sphere");
  EXPECT_TRUE(std::filesystem::exists(root / "sphere" / "heightmap.pgm"));
  EXPECT_NE(s.summary.find("impact_speed=7.00357"), std::string::npos);

  ScenarioConfig gallery;
  gallery.kind = ScenarioKind::kGallery;
  gallery.duration = 1.0;
  gallery.terrain.nx = gallery.terrain.nz = 64;
  run_scenario(gallery, root / "gallery");
  const std::string csv = slurp(root / "gallery" / "gallery.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
  for (std::string_view p : kPresetNames)
    EXPECT_TRUE(std::filesystem::exists(root / "gallery" / ("heightmap_" + std::string(p) + ".pgm")));
  std::filesystem::remove_all(root);
}

TEST(DefaultOutputDir, PerScenarioUnlessSet) {
  ScenarioConfig cfg;
  cfg.kind = ScenarioKind::kSphereDrop;
  EXPECT_EQ(default_output_dir(cfg), std::filesystem::path("out") / "sphere_drop");
  cfg.output.dir = "elsewhere";
  EXPECT_EQ(default_output_dir(cfg), std::filesystem::path("elsewhere"));
}

}  // namespace
}  // namespace terradeform
