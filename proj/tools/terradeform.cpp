// Scenario runner for the terrain deformation engine.
//
//   terradeform run <config> [--out DIR] [--set key=value]...
//   terradeform presets
//   terradeform bench <config> [--grid N]... [--set key=value]...
//
// Failures print one line `error kind=<kind> line=<n> message="<text>"` to
// stderr and exit nonzero.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "terradeform/config.hpp"
#include "terradeform/io.hpp"
#include "terradeform/materials.hpp"
#include "terradeform/scenarios.hpp"

namespace {

using namespace terradeform;

std::string quoted(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c == '\n' ? ' ' : c;
  }
  return out;
}

int fail(const char* kind, int line, const std::string& message, int code) {
  std::cerr << "error kind=" << kind << " line=" << line << " message=\"" << quoted(message) << "\"\n";
  return code;
}

void print_presets() {
  std::cout << "preset,young_modulus,poisson_ratio,char_time,loose_depth,blur_sigma_cm,contour_radius\n";
  for (std::string_view name : kPresetNames) {
    const MaterialParams m = preset(name);
    std::cout << name << ',' << format_number(m.young_modulus) << ',' << format_number(m.poisson_ratio) << ','
              << format_number(m.char_time) << ',' << format_number(m.loose_depth) << ','
              << format_number(m.blur_sigma_cm) << ',' << format_number(m.contour_radius) << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deformable ground and walking character simulation"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::vector<std::string> overrides;
  std::vector<int> grids;

  CLI::App* run = app.add_subcommand("run", "Run a scenario config and write its outputs");
  run->add_option("config", config_path, "Scenario config file")->required();
  run->add_option("--out", out_dir, "Output directory (default ./out/<scenario>)");
  run->add_option("--set", overrides, "Override a config key, key=value")->take_all();

  CLI::App* presets = app.add_subcommand("presets", "List the material presets");

  CLI::App* bench_cmd = app.add_subcommand("bench", "Time the configured walk frame by frame");
  bench_cmd->add_option("config", config_path, "Scenario config file")->required();
  bench_cmd->add_option("--grid", grids, "Square grid resolution to time (repeatable)")->take_all();
  bench_cmd->add_option("--set", overrides, "Override a config key, key=value")->take_all();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return fail("usage", 0, e.what(), 2);
  }

  try {
    if (presets->parsed()) {
      print_presets();
      return 0;
    }

    const ScenarioConfig cfg = load_config(config_path, overrides);

    if (run->parsed()) {
      const auto dir = out_dir.empty() ? default_output_dir(cfg) : std::filesystem::path(out_dir);
      const ScenarioOutcome outcome = run_scenario(cfg, dir);
      std::cout << outcome.summary;
      for (const auto& f : outcome.files) std::cout << "wrote " << f.string() << '\n';
      if (outcome.status != RunStatus::kOk) return fail("boundary", 0, "character left the terrain", 3);
      return 0;
    }

    if (grids.empty()) grids.push_back(cfg.terrain.nx);
    std::cout << "grid,cell_cm,frames,median_ms,p95_ms,mean_ms,max_ms,status\n";
    for (int n : grids) {
      ScenarioConfig c = cfg;
      c.terrain.nx = n;
      c.terrain.nz = n;
      const BenchResult r = bench(c);
      std::cout << r.nx << 'x' << r.nz << ',' << format_number(100.0 * c.terrain.width / n) << ',' << r.frames << ','
                << format_number(r.median_ms) << ',' << format_number(r.p95_ms) << ',' << format_number(r.mean_ms)
                << ',' << format_number(r.max_ms) << ',' << name(r.status) << '\n';
    }
    return 0;
  } catch (const ConfigError& e) {
    return fail("config", e.line(), e.what(), 1);
  } catch (const std::exception& e) {
    return fail("runtime", 0, e.what(), 1);
  }
}
