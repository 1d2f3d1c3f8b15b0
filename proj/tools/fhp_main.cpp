// FHP lattice-gas command line: run simulations, benchmark backends,
// generate and validate collision tables.
//
// Exit codes: 0 success, 1 validation failure, 2 usage error, 3 I/O error.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fhp/bench.hpp"
#include "fhp/collision.hpp"
#include "fhp/observables.hpp"
#include "fhp/step.hpp"

namespace {

void add_sim_flags(CLI::App* cmd, fhp::SimConfig& cfg, std::string& backend) {
  cmd->add_option("--width", cfg.width, "Interior columns")->check(CLI::PositiveNumber);
  cmd->add_option("--height", cfg.height, "Rows, including the two wall rows")
      ->check(CLI::Range(3, 1 << 20));
  cmd->add_option("--steps", cfg.steps, "Time steps")->check(CLI::NonNegativeNumber);
  cmd->add_option("--density", cfg.fill_density, "Per-bit fill probability")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--force-p", cfg.force_p, "Forcing probability p")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--seed", cfg.seed, "RNG seed");
  cmd->add_option("--backend", backend, "scalar|lanes|strips|tiles")
      ->check(CLI::IsMember({"scalar", "lanes", "strips", "tiles"}));
  cmd->add_option("--threads", cfg.threads, "Strip/tile worker count")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--lanes", cfg.lanes, "Lane width (16, 32 or 64)")
      ->check(CLI::IsMember({16, 32, 64}));
  cmd->add_option("--tile-x", cfg.tile_x, "Tile write-region width")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tile-y", cfg.tile_y, "Tile write-region height")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--geometry-file", cfg.geometry_file,
                  "ASCII geometry, '.' fluid / '#' obstacle");
  cmd->add_option("--table-file", cfg.table_file, "Custom collision table");
  cmd->add_flag("--sequential-fallback", cfg.sequential_fallback,
                "Run strip/tile plans serially");
}

fhp::Backend parse_backend(const std::string& name) {
  if (name == "lanes") return fhp::Backend::Lanes;
  if (name == "strips") return fhp::Backend::Strips;
  if (name == "tiles") return fhp::Backend::Tiles;
  return fhp::Backend::Scalar;
}

void dump_outputs(const fhp::SimConfig& cfg, int step, const fhp::Lattice& lat) {
  if (cfg.out_prefix.empty()) return;
  const std::string tag = cfg.out_prefix + "_step" + std::to_string(step);
  const auto field = fhp::coarse_grain(lat, 4);
  fhp::write_flow_csv_file(tag + "_flow.csv", field);
  fhp::write_profile_csv_file(tag + "_profile.csv", fhp::velocity_profile(lat));
  fhp::write_density_pgm_file(tag + "_density.pgm", field);
}

int cmd_run(const fhp::SimConfig& cfg) {
  const auto result = fhp::run(cfg, cfg.table_file.empty()
                                        ? fhp::build_table()
                                        : fhp::load_table(fhp::read_table_file(
                                              cfg.table_file)),
                               [&cfg](int step, const fhp::Lattice& lat) {
                                 dump_outputs(cfg, step, lat);
                               });
  const auto& last = result.series.back();
  std::cout << "steps " << cfg.steps << "  mass " << last.mass << "  momentum ("
            << last.momentum.px << "," << last.momentum.py << ")  digest 0x"
            << std::hex << fhp::state_digest(result.lattice) << std::dec
            << "  forcing_swaps " << result.forcing_swaps << '\n';
  return 0;
}

int cmd_bench(const fhp::SimConfig& cfg, bool all_backends, bool table) {
  std::vector<fhp::BenchRecord> medians;
  std::vector<fhp::Backend> backends;
  if (all_backends) {
    backends = {fhp::Backend::Scalar, fhp::Backend::Lanes, fhp::Backend::Strips,
                fhp::Backend::Tiles};
  } else {
    backends = {cfg.backend};
  }
  for (fhp::Backend b : backends) {
    fhp::SimConfig c = cfg;
    c.backend = b;
    const auto result = fhp::run_bench(c, cfg.repeats);
    for (const auto& rec : result.repeats) {
      std::cout << fhp::to_json_line(rec) << '\n';
    }
    medians.push_back(result.median);
  }
  if (all_backends) {
    for (std::size_t i = 1; i < medians.size(); ++i) {
      if (medians[i].state_digest != medians[0].state_digest) {
        std::cerr << "digest mismatch: " << medians[i].backend
                  << " differs from scalar\n";
        return 1;
      }
    }
  }
  if (table) std::cout << fhp::ascii_table(medians);
  if (all_backends) {
    for (std::size_t i = 1; i < medians.size(); ++i) {
      std::cout << "# speedup " << medians[i].backend << "/scalar: "
                << medians[i].mups / medians[0].mups << '\n';
    }
  }
  return 0;
}

int cmd_tablegen(const std::string& path) {
  fhp::write_table_file(path, fhp::build_table());
  return 0;
}

int cmd_validate(const std::string& path) {
  const auto table = fhp::load_table(fhp::read_table_file(path), /*force=*/true);
  const auto report = fhp::validate_table(table);
  std::cout << report.summary() << '\n';
  return report.valid() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FHP lattice-gas simulator"};
  app.require_subcommand(1);

  fhp::SimConfig cfg;
  std::string backend = "scalar";

  auto* run_cmd = app.add_subcommand("run", "Simulate and emit CSV/PGM dumps");
  add_sim_flags(run_cmd, cfg, backend);
  run_cmd->add_option("--dump-every", cfg.dump_every,
                      "Dump cadence in steps; 0 dumps only the final state")
      ->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--out-prefix", cfg.out_prefix, "Output file prefix");

  bool all_backends = false;
  bool show_table = false;
  auto* bench_cmd = app.add_subcommand("bench", "Measure Mups per backend");
  add_sim_flags(bench_cmd, cfg, backend);
  bench_cmd->add_option("--repeats", cfg.repeats, "Timed repeats")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--warmup", cfg.warmup_steps, "Untimed warmup steps")
      ->check(CLI::NonNegativeNumber);
  bench_cmd->add_flag("--all-backends", all_backends,
                      "Bench all four backends and report speedups");
  bench_cmd->add_flag("--table", show_table, "Print an aligned summary table");

  std::string table_path;
  auto* tablegen_cmd = app.add_subcommand("tablegen", "Write the collision table");
  tablegen_cmd->add_option("output", table_path, "Output file")->required();

  std::string validate_path;
  auto* validate_cmd =
      app.add_subcommand("validate", "Validate a collision table file");
  validate_cmd->add_option("file", validate_path, "Table file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  cfg.backend = parse_backend(backend);
  try {
    if (*run_cmd) return cmd_run(cfg);
    if (*bench_cmd) return cmd_bench(cfg, all_backends, show_table);
    if (*tablegen_cmd) return cmd_tablegen(table_path);
    if (*validate_cmd) return cmd_validate(validate_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
