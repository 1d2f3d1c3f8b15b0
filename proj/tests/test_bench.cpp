#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fhp/bench.hpp"

using namespace fhp;

TEST_CASE("mups arithmetic") {
  CHECK(compute_mups(1000, 1000, 100, 0.1) == doctest::Approx(1000.0));
  CHECK(compute_mups(100, 100, 0, 2.0) == 0.0);
  CHECK_THROWS_AS(compute_mups(10, 10, 5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(compute_mups(10, 10, 5, -1.0), std::invalid_argument);
  // Table-1-shaped sanity: the GTX 480 row back-solves to ~1746 Mups.
  CHECK(compute_mups(29970, 27990, 1, 0.48042) == doctest::Approx(1746).epsilon(0.001));
}

TEST_CASE("fake clock drives the reported Mups") {
  SimConfig cfg;
  cfg.width = 24;
  cfg.height = 12;
  cfg.steps = 10;
  cfg.warmup_steps = 2;
  cfg.fill_density = 0.3;

  double t = 0.0;
  auto clock = [&t]() {
    const double now = t;
    t += 0.125;
    return now;
  };
  const auto result = run_bench(cfg, 2, clock);
  REQUIRE(result.repeats.size() == 2);
  for (const auto& rec : result.repeats) {
    CHECK(rec.wall_seconds == doctest::Approx(0.125));
    CHECK(rec.mups == doctest::Approx(24.0 * 12 * 10 / (0.125 * 1e6)));
    CHECK(rec.warmup_steps == 2);
  }
  CHECK(result.median.mups == result.repeats[0].mups);
}

TEST_CASE("repeats are deterministic and digests agree") {
  SimConfig cfg;
  cfg.width = 32;
  cfg.height = 16;
  cfg.steps = 20;
  cfg.warmup_steps = 5;
  cfg.fill_density = 0.3;
  cfg.force_p = 0.01;
  cfg.seed = 4;
  const auto result = run_bench(cfg, 3);
  REQUIRE(result.repeats.size() == 3);
  CHECK(result.repeats[1].state_digest == result.repeats[0].state_digest);
  CHECK(result.repeats[2].state_digest == result.repeats[0].state_digest);
  CHECK(result.median.state_digest == result.repeats[0].state_digest);
}

TEST_CASE("scalar and lanes benchmarks share a digest") {
  SimConfig cfg;
  cfg.width = 40;
  cfg.height = 18;
  cfg.steps = 15;
  cfg.warmup_steps = 3;
  cfg.fill_density = 0.3;
  cfg.seed = 6;
  cfg.backend = Backend::Scalar;
  const auto scalar = run_bench(cfg, 1);
  cfg.backend = Backend::Lanes;
  const auto lanes = run_bench(cfg, 1);
  CHECK(scalar.median.state_digest == lanes.median.state_digest);
}

TEST_CASE("steps=0 is rejected") {
  SimConfig cfg;
  cfg.steps = 0;
  CHECK_THROWS_AS(run_bench(cfg, 1), std::invalid_argument);
}

TEST_CASE("json line carries every record field") {
  BenchRecord rec;
  rec.backend = "lanes";
  rec.threads = 2;
  rec.lanes = 32;
  rec.width = 64;
  rec.height = 32;
  rec.steps = 100;
  rec.warmup_steps = 10;
  rec.wall_seconds = 0.5;
  rec.mups = 0.4096;
  rec.state_digest = 0xABCD;
  const auto line = to_json_line(rec);
  CHECK(line.find("\"backend\":\"lanes\"") != std::string::npos);
  CHECK(line.find("\"mups\":0.4096") != std::string::npos);
  CHECK(line.find("\"state_digest\":43981") != std::string::npos);
  CHECK(line.find('\n') == std::string::npos);
}
