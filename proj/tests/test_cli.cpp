// End-to-end checks of the fhp binary; the path is passed as argv[1].
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

std::string g_cli;

int run_cli(const std::string& args) {
  const int status = std::system((g_cli + " " + args + " > cli_out.txt 2>&1").c_str());
  return WEXITSTATUS(status);
}

std::string last_output() {
  std::ifstream in("cli_out.txt");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("tablegen then validate round trips with exit 0") {
  CHECK(run_cli("tablegen table.bin") == 0);
  CHECK(run_cli("validate table.bin") == 0);
  CHECK(last_output().find("0 violations") != std::string::npos);
}

TEST_CASE("validate rejects a truncated table") {
  {
    std::ofstream out("short.bin", std::ios::binary);
    out << "FHPTAB01";
    for (int i = 0; i < 511; ++i) out.put(0);
  }
  const int code = run_cli("validate short.bin");
  CHECK((code == 1 || code == 3));
  CHECK_FALSE(last_output().empty());
}

TEST_CASE("usage errors exit with status 2") {
  CHECK(run_cli("run --force-p 1.5") == 2);
  CHECK(run_cli("run --no-such-flag") == 2);
  CHECK(run_cli("frobnicate") == 2);
}

TEST_CASE("identical invocations produce byte-identical outputs") {
  const std::string flags =
      "run --width 32 --height 18 --steps 30 --seed 9 --force-p 0.02 "
      "--density 0.3 --dump-every 10 --out-prefix det";
  CHECK(run_cli(flags) == 0);
  const std::string first = last_output();
  std::ifstream a("det_step30_flow.csv");
  const std::string flow_a{std::istreambuf_iterator<char>(a), {}};

  CHECK(run_cli(flags) == 0);
  CHECK(last_output() == first);
  std::ifstream b("det_step30_flow.csv");
  const std::string flow_b{std::istreambuf_iterator<char>(b), {}};
  CHECK_FALSE(flow_a.empty());
  CHECK(flow_a == flow_b);

  // Intermediate dumps exist as well.
  std::ifstream mid("det_step10_profile.csv");
  CHECK(mid.good());
  std::ifstream pgm("det_step30_density.pgm");
  CHECK(pgm.good());
}

TEST_CASE("dump-every 0 dumps only the final state") {
  CHECK(run_cli("run --width 16 --height 10 --steps 7 --seed 2 --out-prefix solo") == 0);
  std::ifstream final_dump("solo_step7_flow.csv");
  CHECK(final_dump.good());
  std::ifstream mid("solo_step1_flow.csv");
  CHECK_FALSE(mid.good());
}

TEST_CASE("custom table file feeds the run") {
  CHECK(run_cli("tablegen custom.bin") == 0);
  CHECK(run_cli("run --width 16 --height 10 --steps 5 --seed 3 "
                "--table-file custom.bin") == 0);
  CHECK(run_cli("run --width 16 --height 10 --steps 5 --seed 3 "
                "--table-file missing.bin") == 3);
}

TEST_CASE("bench emits one json object per line") {
  CHECK(run_cli("bench --width 32 --height 18 --steps 10 --repeats 2 "
                "--warmup 2 --seed 1 --backend lanes --table") == 0);
  const std::string out = last_output();
  CHECK(out.find("\"backend\":\"lanes\"") != std::string::npos);
  CHECK(out.find("\"mups\":") != std::string::npos);
  CHECK(out.find("Mups") != std::string::npos);  // ascii table header
}

int main(int argc, char** argv) {
  if (argc > 1) g_cli = argv[1];
  doctest::Context ctx;
  ctx.applyCommandLine(1, argv);
  return ctx.run();
}
