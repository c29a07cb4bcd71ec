// End-to-end CLI tests: spawn the installed binary, check exit codes,
// outputs, and determinism. The binary path arrives as the first test
// argument (wired through CMake).
#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string g_cli;
fs::path g_work;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = g_cli + " " + args + " 2>&1";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[512];
  while (fgets(buf, sizeof(buf), pipe)) r.output += buf;
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path write_config(const std::string& name, const std::string& body) {
  const fs::path p = g_work / name;
  std::ofstream out(p);
  out << body;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

json load_json(const fs::path& p) { return json::parse(slurp(p)); }

const char* kSimulateConfig = R"(
[grid]
nx = 256
ny = 96
lx = 28.0
ly = 16.8

[packet]
x0 = -8.5
y0 = 0.0
width_x = 1.0
width_y = 2.2
kx = 16.0

[slits]
barrier_x = -5.0
thickness = 0.4
width = 0.66
separation = 2.3
v0 = 640.0

[evolution]
dt = 1.05e-3
steps = 1350
mass = 1.0
absorber_cells = 10
absorber_strength = 0.35
screen_x = 11.0
)";

}  // namespace

TEST_CASE("help and argument validation") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("").exit_code != 0);
  CHECK(run_cli("simulate").exit_code != 0);  // --config is required
}

TEST_CASE("dry run validates and writes nothing") {
  const fs::path cfg = write_config("dry.ini", kSimulateConfig);
  const fs::path out = g_work / "dry_out";
  const RunResult r = run_cli("simulate --config " + cfg.string() +
                              " --out " + out.string() + " --dry-run");
  CHECK(r.exit_code == 0);
  CHECK(!fs::exists(out));
  CHECK(r.output.find("\"experiment\": \"simulate\"") != std::string::npos);
}

TEST_CASE("missing section names the block and exits 2") {
  std::string broken = kSimulateConfig;
  const auto pos = broken.find("[slits]");
  broken = broken.substr(0, pos) + broken.substr(broken.find("[evolution]"));
  const fs::path cfg = write_config("missing_slits.ini", broken);
  const RunResult r = run_cli("simulate --config " + cfg.string() +
                              " --out " + (g_work / "x1").string());
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("slits") != std::string::npos);
}

TEST_CASE("unknown keys are rejected with their line") {
  std::string typo = kSimulateConfig;
  typo.replace(typo.find("width = 0.66"), 12, "wdith = 0.66");
  const fs::path cfg = write_config("typo.ini", typo);
  const RunResult r = run_cli("simulate --config " + cfg.string() +
                              " --out " + (g_work / "x2").string());
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("wdith") != std::string::npos);
  CHECK(r.output.find("typo.ini:") != std::string::npos);  // file:line
}

TEST_CASE("malformed numbers are config errors") {
  std::string broken = kSimulateConfig;
  broken.replace(broken.find("kx = 16.0"), 9, "kx = fast");
  const fs::path cfg = write_config("badnum.ini", broken);
  const RunResult r = run_cli("simulate --config " + cfg.string() +
                              " --out " + (g_work / "x3").string());
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("must be a number") != std::string::npos);
}

TEST_CASE("simulate writes the screen profile and summary") {
  const fs::path cfg = write_config("sim.ini", kSimulateConfig);
  const fs::path out_a = g_work / "sim_a";
  const fs::path out_b = g_work / "sim_b";
  const RunResult ra =
      run_cli("simulate --config " + cfg.string() + " --out " + out_a.string());
  CHECK(ra.exit_code == 0);
  REQUIRE(fs::exists(out_a / "screen.csv"));
  REQUIRE(fs::exists(out_a / "summary.json"));

  const json summary = load_json(out_a / "summary.json");
  CHECK(summary["fit"]["spacing_reliable"].get<bool>());
  CHECK(summary["prediction"]["spacing_deviation_pct"].get<double>() < 5.0);
  CHECK(summary["fit"]["visibility"].get<double>() > 0.6);

  SUBCASE("re-runs are byte identical") {
    const RunResult rb = run_cli("simulate --config " + cfg.string() +
                                 " --out " + out_b.string());
    CHECK(rb.exit_code == 0);
    CHECK(slurp(out_a / "screen.csv") == slurp(out_b / "screen.csv"));
  }
}

TEST_CASE("simulate can dump snapshots in the container format") {
  std::string cfg_text = kSimulateConfig;
  cfg_text.replace(cfg_text.find("steps = 1350"), 12, "steps = 40");
  // Single opening: a 40-step smoke run has no fringes to fit.
  cfg_text.replace(cfg_text.find("separation = 2.3"), 16, "separation = 0.0");
  cfg_text += "snapshot_every = 20\n";
  const fs::path cfg = write_config("snap.ini", cfg_text);
  const fs::path out = g_work / "snap_out";
  const RunResult r =
      run_cli("simulate --config " + cfg.string() + " --out " + out.string());
  CHECK(r.exit_code == 0);
  const fs::path snap = out / "snapshots" / "snapshot_000020.mwf";
  REQUIRE(fs::exists(snap));
  CHECK(slurp(snap).substr(0, 8) == "MWFLD001");
}

TEST_CASE("currents accepts snapshot inputs from simulate dumps") {
  std::string cfg_text = kSimulateConfig;
  cfg_text.replace(cfg_text.find("steps = 1350"), 12, "steps = 40");
  cfg_text.replace(cfg_text.find("separation = 2.3"), 16, "separation = 0.0");
  cfg_text += "snapshot_every = 40\n";
  const fs::path sim_cfg = write_config("snap_src.ini", cfg_text);
  const fs::path sim_out = g_work / "snap_src_out";
  REQUIRE(run_cli("simulate --config " + sim_cfg.string() + " --out " +
                  sim_out.string())
              .exit_code == 0);
  const fs::path snap = sim_out / "snapshots" / "snapshot_000040.mwf";
  REQUIRE(fs::exists(snap));

  const std::string cur_cfg_text = "[field]\nkind = snapshot\npath = " +
                                   snap.string() + "\n\n[currents]\nmass = 1.0\n";
  const fs::path cur_cfg = write_config("snap_currents.ini", cur_cfg_text);
  const fs::path cur_out = g_work / "snap_currents_out";
  const RunResult r = run_cli("currents --config " + cur_cfg.string() +
                              " --out " + cur_out.string());
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(cur_out / "current.csv"));
  const json j = load_json(cur_out / "summary.json");
  // Norm below one: the absorber has started trimming the packet tails.
  CHECK(j["norm"].get<double>() > 0.5);
  CHECK(j["norm"].get<double>() <= 1.0 + 1e-12);
}

TEST_CASE("winding reports quantized loops and the vortex table") {
  const char* cfg_text = R"(
[grid]
nx = 256
ny = 256
lx = 6.0
ly = 6.0

[field]
kind = vortex
vortices = 0.0117 0.0117 2
envelope_width = 0.0

[loop]
center_x = 0.0
center_y = 0.0
radius = 1.0
points = 512

[winding]
scheme = central2
scan = true
)";
  const fs::path cfg = write_config("winding.ini", cfg_text);
  const fs::path out = g_work / "winding_out";
  const RunResult r =
      run_cli("winding --config " + cfg.string() + " --out " + out.string());
  CHECK(r.exit_code == 0);
  const json report = load_json(out / "winding.json");
  CHECK(report["winding"]["k"].get<int>() == 2);
  CHECK(report["winding"]["residual"].get<double>() < 1e-3);
  CHECK(report["winding"]["estimators_agree"].get<bool>());
  CHECK(report["vortex_total_charge"].get<int>() == 2);

  SUBCASE("plane wave winds zero") {
    std::string plane = cfg_text;
    const auto pos = plane.find("kind = vortex");
    plane.replace(pos, plane.find("[loop]") - pos,
                  "kind = plane\nkx = 2.0943951023931953\nky = 0.0\n\n");
    const fs::path cfg2 = write_config("winding_plane.ini", plane);
    const RunResult r2 = run_cli("winding --config " + cfg2.string() +
                                 " --out " + (g_work / "wp").string());
    CHECK(r2.exit_code == 0);
    CHECK(load_json(g_work / "wp" / "winding.json")["winding"]["k"]
              .get<int>() == 0);
  }

  SUBCASE("loop outside the grid is a config error") {
    std::string big = cfg_text;
    big.replace(big.find("radius = 1.0"), 12, "radius = 9.0");
    const fs::path cfg3 = write_config("winding_big.ini", big);
    const RunResult r3 = run_cli("winding --config " + cfg3.string() +
                                 " --out " + (g_work / "wb").string());
    CHECK(r3.exit_code == 2);
  }
}

TEST_CASE("predict writes both predictors and the spin shift") {
  const char* cfg_text = R"(
[conventional]
wavelength = 0.5
separation = 2.0
distance = 40.0

[selfaction]
q_prime = 1.0

[screen]
half_width = 30.0
samples = 4001

[spin]
epsilon = 1e-3
)";
  const fs::path cfg = write_config("predict.ini", cfg_text);
  const fs::path out = g_work / "predict_out";
  const RunResult r =
      run_cli("predict --config " + cfg.string() + " --out " + out.string());
  CHECK(r.exit_code == 0);

  const std::string csv = slurp(out / "pattern.csv");
  CHECK(csv.substr(0, 24) == "y,I_self,I_conventional\n");

  const json summary = load_json(out / "summary.json");
  CHECK(summary["qprime_at_first_maximum"].get<double>() == 1.0);
  CHECK(summary["equivalence_residual_full_coupling"].get<double>() < 1e-12);
  CHECK(summary["fraunhofer_spacing"].get<double>() == doctest::Approx(10.0));
  CHECK(summary["spin_shift"]["relative_shift"].get<double>() ==
        doctest::Approx(1e-3).epsilon(0.1));

  // At unit coupling the two predictors coincide line by line.
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);  // header
  while (std::getline(lines, line)) {
    const auto c1 = line.find(','), c2 = line.rfind(',');
    REQUIRE(c1 != std::string::npos);
    const double self = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
    const double conv = std::stod(line.substr(c2 + 1));
    CHECK(self == doctest::Approx(conv).epsilon(1e-9));
  }
}

TEST_CASE("visibility sweep emits the coupling anchors") {
  const char* cfg_text = R"(
[sweep]
values = 0.0 0.5 16.180339887498949
k_min = 0
k_max = 200
)";
  const fs::path cfg = write_config("sweep.ini", cfg_text);
  const fs::path out = g_work / "sweep_out";
  const RunResult r = run_cli("visibility-sweep --config " + cfg.string() +
                              " --out " + out.string());
  CHECK(r.exit_code == 0);
  std::istringstream csv(slurp(out / "sweep.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "qq_prime,visibility");
  double vis[3] = {-1, -1, -1};
  for (int i = 0; i < 3; ++i) {
    REQUIRE(std::getline(csv, line));
    vis[i] = std::stod(line.substr(line.find(',') + 1));
  }
  CHECK(vis[0] == 0.0);
  CHECK(vis[1] == 1.0);
  CHECK(vis[2] < 0.05);
}

TEST_CASE("sweeps are thread-count independent") {
  const char* cfg_text = R"(
[sweep]
qq_min = 0.0
qq_max = 3.0
steps = 301
k_min = 0
k_max = 150
)";
  const fs::path cfg = write_config("sweep_threads.ini", cfg_text);
  const fs::path out1 = g_work / "sweep_t1";
  const fs::path out4 = g_work / "sweep_t4";
  CHECK(run_cli("visibility-sweep --config " + cfg.string() + " --out " +
                out1.string() + " --threads 1")
            .exit_code == 0);
  CHECK(run_cli("visibility-sweep --config " + cfg.string() + " --out " +
                out4.string() + " --threads 4")
            .exit_code == 0);
  CHECK(slurp(out1 / "sweep.csv") == slurp(out4 / "sweep.csv"));
}

TEST_CASE("estimate-coupling enforces unit suffixes and reports both q'") {
  const char* good = R"(
[coupling]
e0 = -13.6 eV
v_t = 20 V

[demo]
voltage = 50 kV
)";
  const fs::path cfg = write_config("estimate.ini", good);
  const fs::path out = g_work / "estimate_out";
  const RunResult r = run_cli("estimate-coupling --config " + cfg.string() +
                              " --out " + out.string());
  CHECK(r.exit_code == 0);
  const json j = load_json(out / "estimate.json");
  CHECK(j["virial"]["t_ev"].get<double>() == 13.6);
  CHECK(j["virial"]["v_ev"].get<double>() == -27.2);
  CHECK(j["virial"]["lambda_t_angstrom"].get<double>() ==
        doctest::Approx(3.32).epsilon(0.01));
  CHECK(j["virial"]["q_prime_ratio"].get<double>() ==
        doctest::Approx(1.36).epsilon(1e-6));
  CHECK(j["virial"]["q_prime_quoted"].get<double>() == 1.8);
  CHECK(j["demo"]["lambda_angstrom"].get<double>() ==
        doctest::Approx(0.0548).epsilon(0.01));

  const char* no_unit = R"(
[coupling]
e0 = -13.6
v_t = 20 V
)";
  const fs::path bad = write_config("estimate_bad.ini", no_unit);
  const RunResult rb = run_cli("estimate-coupling --config " + bad.string() +
                               " --out " + (g_work / "eb").string());
  CHECK(rb.exit_code == 2);
  CHECK(rb.output.find("unit") != std::string::npos);
}

TEST_CASE("currents writes the field exports") {
  const char* cfg_text = R"(
[grid]
nx = 64
ny = 64
lx = 8.0
ly = 8.0

[field]
kind = gaussian
width = 1.0
kx = 2.0

[currents]
mass = 1.0
scheme = spectral
)";
  const fs::path cfg = write_config("currents.ini", cfg_text);
  const fs::path out = g_work / "currents_out";
  const RunResult r =
      run_cli("currents --config " + cfg.string() + " --out " + out.string());
  CHECK(r.exit_code == 0);
  for (const char* name : {"density.csv", "current.csv",
                           "normalized_current.csv", "n_field.csv",
                           "summary.json"})
    CHECK(fs::exists(out / name));
  const json j = load_json(out / "summary.json");
  CHECK(j["norm"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("verify is green, and perturb-gamma makes it fail") {
  const fs::path out = g_work / "verify_out";
  const RunResult r = run_cli("verify --out " + out.string());
  CHECK(r.exit_code == 0);
  const json j = load_json(out / "verify.json");
  CHECK(j["failures"].get<int>() == 0);
  REQUIRE(j["checks"].size() >= 20);
  for (const auto& check : j["checks"]) {
    CHECK(check.contains("measured"));
    CHECK(check.contains("tolerance"));
  }

  const RunResult rp =
      run_cli("verify --perturb-gamma --out " + (g_work / "verify_p").string());
  CHECK(rp.exit_code == 1);
  const json jp = load_json(g_work / "verify_p" / "verify.json");
  CHECK(jp["failures"].get<int>() > 0);
  for (const auto& check : jp["checks"]) {
    if (!check["passed"].get<bool>())
      CHECK(check["suite"].get<std::string>() == "algebra");
  }
}


int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <mwlab-binary> [doctest args]\n");
    return 1;
  }
  g_cli = argv[1];
  g_work = fs::temp_directory_path() / "mwlab_cli_tests";
  fs::remove_all(g_work);
  fs::create_directories(g_work);
  doctest::Context context;
  context.applyCommandLine(argc - 1, argv + 1);
  const int rc = context.run();
  fs::remove_all(g_work);
  return rc;
}
