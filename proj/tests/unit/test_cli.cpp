#include <doctest.h>

#include <filesystem>
#include <string>

#include "repel/commands.hpp"
#include "repel/config.hpp"
#include "repel/io.hpp"

using namespace repel;

namespace {

const char* kTorusConfig = R"(# two-point circle run
manifold.type = torus
manifold.periods = 1.0
kernel.family = heat
kernel.t = 0.05
n = 2
seed = 42
eps_geo = 1e-10
eps_spec = 1e-10
optimize.max_iters = 5000
optimize.grad_tol = 1e-8
optimize.restarts = 4
verify.samples = 5
)";

std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "repel_cli_tests" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_config(const std::filesystem::path& dir, const std::string& text) {
  static int counter = 0;
  const auto path = dir / ("run" + std::to_string(counter++) + ".cfg");
  write_text_file(path.string(), text);
  return path.string();
}

}  // namespace

TEST_CASE("config parsing and validation") {
  const RunConfig config = parse_run_config(kTorusConfig);
  CHECK(config.manifold_type == "torus");
  CHECK(config.periods == std::vector<double>{1.0});
  CHECK(config.kernel_t == 0.05);
  CHECK(config.n_points == 2);
  CHECK(config.seed == 42);
  CHECK(config.deterministic);
  CHECK(config.optimize.restarts == 4);

  // missing kernel.t names the key
  try {
    parse_run_config("manifold.type = torus\nmanifold.periods = 1\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& error) {
    CHECK(error.key() == "kernel.t");
    CHECK(std::string(error.what()).find("kernel.t") != std::string::npos);
  }

  // unknown keys are rejected by name and line
  try {
    parse_run_config("manifold.type = torus\nmanifold.periods = 1\nkernel.t = 0.05\nbogus.key = 1\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& error) {
    CHECK(error.key() == "bogus.key");
    CHECK(error.line() == 4);
    CHECK(std::string(error.what()).find("bogus.key") != std::string::npos);
  }

  CHECK_THROWS_AS(parse_run_config("manifold.type = klein\nkernel.t = 0.05\n"), ConfigError);
  CHECK_THROWS_AS(parse_run_config("manifold.type = torus\nmanifold.periods = 1\nkernel.t = -1\n"),
                  ConfigError);
  CHECK_THROWS_AS(
      parse_run_config("manifold.type = bolza\nmanifold.periods = 1\nkernel.t = 0.1\n"),
      ConfigError);
  CHECK_THROWS_AS(parse_run_config("manifold.type = torus\nmanifold.periods = 1\nkernel.t 0.05\n"),
                  ConfigError);
}

TEST_CASE("points csv round trip") {
  const auto dir = fresh_dir("roundtrip");
  const Manifold manifold{Torus({1.0, 2.0})};
  Configuration config;
  config.points = {{0.12345678901234567, 1.9}, {0.5, 0.25}};
  const auto path = (dir / "points.csv").string();
  write_points_csv(path, config);
  const Configuration loaded = read_points_csv(path, manifold);
  REQUIRE(loaded.size() == 2);
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) CHECK(loaded.points[i][k] == config.points[i][k]);

  // malformed rows name the row number
  write_text_file(path, "index,coord_1,coord_2\n0,0.1,0.2\n1,not_a_number,0.4\n");
  try {
    read_points_csv(path, manifold);
    FAIL("expected ConfigError");
  } catch (const ConfigError& error) {
    CHECK(std::string(error.what()).find("row 3") != std::string::npos);
  }
  write_text_file(path, "index,coord_1,coord_2\n0,0.1\n");
  CHECK_THROWS_AS(read_points_csv(path, manifold), ConfigError);
}

TEST_CASE("cmd_minimize writes documents and honors exit codes") {
  const auto dir = fresh_dir("minimize");
  CommandOptions options;
  options.config_path = write_config(dir, kTorusConfig);
  options.out_dir = (dir / "out").string();
  CHECK(cmd_minimize(options) == 0);
  CHECK(std::filesystem::exists(dir / "out" / "result.json"));
  CHECK(std::filesystem::exists(dir / "out" / "points.csv"));
  const std::string doc = read_text_file((dir / "out" / "result.json").string());
  CHECK(doc.find("\"certified_below_mean\": true") != std::string::npos);
  CHECK(doc.find("\"status\": \"converged\"") != std::string::npos);

  // the two optimized points sit at separation 1/2
  const Configuration points =
      read_points_csv((dir / "out" / "points.csv").string(), Manifold{Torus({1.0})});
  REQUIRE(points.size() == 2);
  const double separation = Torus({1.0}).distance(points.points[0], points.points[1]);
  CHECK(std::fabs(separation - 0.5) < 1e-6);

  // config errors exit 1
  CommandOptions bad = options;
  bad.config_path = write_config(dir, "manifold.type = torus\nmanifold.periods = 1\n");
  CHECK(cmd_minimize(bad) == 1);
  CommandOptions missing = options;
  missing.config_path = (dir / "nonexistent.cfg").string();
  CHECK(cmd_minimize(missing) == 1);
}

TEST_CASE("byte-identical outputs under a fixed seed") {
  const auto dir = fresh_dir("determinism");
  CommandOptions options;
  options.config_path = write_config(dir, kTorusConfig);

  options.out_dir = (dir / "a").string();
  CHECK(cmd_minimize(options) == 0);
  options.out_dir = (dir / "b").string();
  CHECK(cmd_minimize(options) == 0);
  CHECK(read_text_file((dir / "a" / "result.json").string()) ==
        read_text_file((dir / "b" / "result.json").string()));
  CHECK(read_text_file((dir / "a" / "points.csv").string()) ==
        read_text_file((dir / "b" / "points.csv").string()));

  // a different seed changes the outputs (the echo at least)
  options.seed_override = 43;
  options.out_dir = (dir / "c").string();
  CHECK(cmd_minimize(options) == 0);
  CHECK(read_text_file((dir / "a" / "result.json").string()) !=
        read_text_file((dir / "c" / "result.json").string()));
}

TEST_CASE("cmd_verify_pretrace end to end") {
  const auto dir = fresh_dir("verify");
  CommandOptions options;
  options.config_path = write_config(dir, kTorusConfig);
  options.out_dir = (dir / "out").string();
  CHECK(cmd_verify_pretrace(options) == 0);
  const std::string doc = read_text_file((dir / "out" / "pretrace.json").string());
  CHECK(doc.find("\"pass\": true") != std::string::npos);

  // hyperbolic manifolds are rejected with exit 1
  CommandOptions hyper = options;
  hyper.config_path = write_config(dir, "manifold.type = bolza\nkernel.t = 0.1\nn = 2\n");
  CHECK(cmd_verify_pretrace(hyper) == 1);

  // an enormous eps_spec degenerates to the empty basis; the identity still
  // holds within the (large) budget
  CommandOptions degenerate = options;
  degenerate.config_path = write_config(
      dir, std::string("manifold.type = torus\nmanifold.periods = 1\nkernel.t = 0.05\n") +
               "n = 2\nseed = 1\neps_spec = 1e9\nverify.samples = 3\n");
  degenerate.out_dir = (dir / "degenerate").string();
  CHECK(cmd_verify_pretrace(degenerate) == 0);
  const std::string deg = read_text_file((dir / "degenerate" / "pretrace.json").string());
  CHECK(deg.find("\"basis_modes\": 0") != std::string::npos);
  CHECK(deg.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("cmd_verify_pretrace single-point special case") {
  const auto dir = fresh_dir("verify_n1");
  CommandOptions options;
  options.config_path = write_config(
      dir, std::string("manifold.type = torus\nmanifold.periods = 1\nkernel.t = 0.05\n") +
               "n = 1\nseed = 2\neps_geo = 1e-12\neps_spec = 1e-12\nverify.samples = 4\n");
  options.out_dir = (dir / "out").string();
  CHECK(cmd_verify_pretrace(options) == 0);
  const std::string doc = read_text_file((dir / "out" / "pretrace.json").string());
  CHECK(doc.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("cmd_diagnose on the bolza surface emits the heuristic proxy") {
  const auto dir = fresh_dir("diagnose_bolza");
  CommandOptions options;
  options.config_path = write_config(
      dir, std::string("manifold.type = bolza\nkernel.t = 0.1\nn = 2\nseed = 11\n") +
               "optimize.restarts = 1\noptimize.grad_tol = 1e-4\noptimize.max_iters = 500\n" +
               "diagnose.baseline_samples = 10\n");
  options.out_dir = (dir / "out").string();
  REQUIRE(cmd_minimize(options) == 0);
  CommandOptions diag = options;
  diag.points_path = (dir / "out" / "points.csv").string();
  diag.out_dir = (dir / "diag").string();
  CHECK(cmd_diagnose(diag) == 0);
  const std::string doc = read_text_file((dir / "diag" / "diagnosis.json").string());
  CHECK(doc.find("\"nearest_neighbor\"") != std::string::npos);
  CHECK(doc.find("\"label\": \"heuristic\"") != std::string::npos);
  CHECK(doc.find("\"weyl\"") == std::string::npos);
}

TEST_CASE("cmd_diagnose round trip from cmd_minimize") {
  const auto dir = fresh_dir("diagnose");
  CommandOptions options;
  options.config_path = write_config(dir, std::string(kTorusConfig) + "diagnose.samples = 150\n");
  options.out_dir = (dir / "out").string();
  REQUIRE(cmd_minimize(options) == 0);

  CommandOptions diag = options;
  diag.points_path = (dir / "out" / "points.csv").string();
  diag.out_dir = (dir / "diag").string();
  CHECK(cmd_diagnose(diag) == 0);
  const std::string doc = read_text_file((dir / "diag" / "diagnosis.json").string());
  CHECK(doc.find("\"certified_below_mean\": true") != std::string::npos);
  CHECK(doc.find("\"all_pass\": true") != std::string::npos);
  const std::string weyl = read_text_file((dir / "diag" / "weyl.csv").string());
  CHECK(weyl.rfind("mode_index,w_m,bound,pass\n", 0) == 0);

  // malformed csv names the row
  write_text_file((dir / "bad.csv").string(), "index,coord_1\n0,0.1\n1,xyz\n");
  CommandOptions bad = diag;
  bad.points_path = (dir / "bad.csv").string();
  CHECK(cmd_diagnose(bad) == 1);
}

TEST_CASE("cmd_sweep and cmd_group_audit") {
  const auto dir = fresh_dir("sweep_audit");
  CommandOptions options;
  options.config_path = write_config(
      dir, std::string("manifold.type = torus\nmanifold.periods = 1 1\nkernel.t = 0.1\n") +
               "seed = 9\noptimize.restarts = 2\noptimize.grad_tol = 1e-6\n" +
               "optimize.max_iters = 2000\nsweep.n_list = 2 4\n");
  options.out_dir = (dir / "out").string();
  CHECK(cmd_sweep(options) == 0);
  const std::string csv = read_text_file((dir / "out" / "sweep.csv").string());
  CHECK(csv.rfind("N,best_energy,max_wm_sqrt_n,certified,max_bound_ratio,error\n", 0) == 0);
  CHECK(csv.find("\n2,") != std::string::npos);
  CHECK(csv.find("\n4,") != std::string::npos);

  // empty list: header-only csv
  CommandOptions empty = options;
  empty.config_path = write_config(
      dir, "manifold.type = torus\nmanifold.periods = 1 1\nkernel.t = 0.1\n");
  empty.out_dir = (dir / "empty").string();
  CHECK(cmd_sweep(empty) == 0);
  CHECK(read_text_file((dir / "empty" / "sweep.csv").string()) ==
        "N,best_energy,max_wm_sqrt_n,certified,max_bound_ratio,error\n");

  // duplicate N entries are allowed and repeat identically
  CommandOptions dup = options;
  dup.config_path = write_config(
      dir, std::string("manifold.type = torus\nmanifold.periods = 1 1\nkernel.t = 0.1\n") +
               "seed = 9\noptimize.restarts = 1\noptimize.grad_tol = 1e-6\n" +
               "optimize.max_iters = 2000\nsweep.n_list = 2 2\n");
  dup.out_dir = (dir / "dup").string();
  CHECK(cmd_sweep(dup) == 0);
  const auto dup_csv = read_text_file((dir / "dup" / "sweep.csv").string());
  const auto first_break = dup_csv.find('\n');
  const auto second_break = dup_csv.find('\n', first_break + 1);
  const std::string row1 = dup_csv.substr(first_break + 1, second_break - first_break - 1);
  CHECK(dup_csv.find(row1 + "\n", second_break) != std::string::npos);

  // group audit needs the bolza surface
  CommandOptions audit = options;
  audit.config_path = write_config(dir, "manifold.type = bolza\nkernel.t = 0.1\naudit.radius = 5\n");
  audit.out_dir = (dir / "audit").string();
  CHECK(cmd_group_audit(audit) == 0);
  const std::string doc = read_text_file((dir / "audit" / "group_audit.json").string());
  CHECK(doc.find("\"pass\": true") != std::string::npos);
  CHECK(doc.find("\"shell_counts_even\": true") != std::string::npos);

  CommandOptions wrong = audit;
  wrong.config_path = options.config_path;
  CHECK(cmd_group_audit(wrong) == 1);
}

TEST_CASE("resource-limit errors exit 2") {
  const auto dir = fresh_dir("resource_limit");
  CommandOptions options;
  options.config_path = write_config(
      dir, "manifold.type = bolza\nkernel.t = 0.1\naudit.radius = 8\ngroup.element_cap = 50\n");
  options.out_dir = (dir / "out").string();
  CHECK(cmd_group_audit(options) == 2);
}

TEST_CASE("honest stagnation still exits 0") {
  const auto dir = fresh_dir("stagnation");
  CommandOptions options;
  options.config_path = write_config(
      dir, std::string("manifold.type = torus\nmanifold.periods = 1\nkernel.t = 0.05\n") +
               "n = 2\nseed = 3\noptimize.grad_tol = 0\noptimize.max_iters = 100000\n" +
               "optimize.restarts = 1\n");
  options.out_dir = (dir / "out").string();
  CHECK(cmd_minimize(options) == 0);
  const std::string doc = read_text_file((dir / "out" / "result.json").string());
  CHECK(doc.find("\"status\": \"stagnated\"") != std::string::npos);
}
