#include <catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rwrs/cli.hpp"
#include "rwrs/errors.hpp"

using namespace rwrs;
using namespace rwrs::cli;

namespace {

namespace fs = std::filesystem;

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / ("rwrs_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Runs the installed binary; returns its exit status.
int run_binary(const std::string& args, const fs::path& out, const std::string& env = "") {
  const std::string cmd = env + " '" + std::string(RWRS_CLI_PATH) + "' " + args + " > '" + out.string() + "' 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("defaults", "[cli]") {
  const auto cfg = parse_config({"walk"});
  CHECK(cfg.command == "walk");
  CHECK(cfg.H == 0.5);
  CHECK(cfg.beta == 2.0);
  CHECK(cfg.sigma == 1.0);
  CHECK(cfg.n == 2048);
  CHECK(cfg.cn == 32);
  CHECK(cfg.m == 4096);
  CHECK(cfg.bins == 512);
  CHECK(cfg.replicates == 500);
  CHECK(cfg.times == std::vector<double>{0.5, 1.0});
  CHECK(cfg.u == std::vector<double>{0.5, 1.0, 2.0});
  CHECK(cfg.seed == 0);
  CHECK(cfg.scenery == SceneryKind::ExactStable);
  CHECK(commands().size() == 8);
}

TEST_CASE("flags are parsed and validated", "[cli]") {
  const auto cfg = parse_config({"schema", "-H", "0.7", "--beta", "1.5", "--times", "0.25,0.5,1", "--thetas",
                                 "1,-1,2", "--scenery", "pareto", "--convention", "floor", "-M", "12", "-j", "3"});
  CHECK(cfg.H == 0.7);
  CHECK(cfg.beta == 1.5);
  CHECK(cfg.times == std::vector<double>{0.25, 0.5, 1.0});
  CHECK(cfg.thetas == std::vector<double>{1.0, -1.0, 2.0});
  CHECK(cfg.scenery == SceneryKind::SymmetricPareto);
  CHECK(cfg.convention == SiteConvention::Floor);
  CHECK(cfg.replicates == 12);
  CHECK(cfg.jobs == 3);

  CHECK_THROWS_AS(parse_config({"walk", "--hurst", "1.2"}), UsageError);
  CHECK_THROWS_AS(parse_config({"walk", "--beta", "0"}), UsageError);
  CHECK_THROWS_AS(parse_config({"walk", "--sigma", "-1"}), UsageError);
  CHECK_THROWS_AS(parse_config({"fly"}), UsageError);
  CHECK_THROWS_AS(parse_config({}), UsageError);
  CHECK_THROWS_AS(parse_config({"walk", "--times", "1,0.5"}), UsageError);
  CHECK_THROWS_AS(parse_config({"walk", "--times", "0.5,1", "--thetas", "1"}), UsageError);
  CHECK_THROWS_AS(parse_config({"walk", "--times", "a,b"}), UsageError);
  CHECK_THROWS_AS(parse_config({"walk", "--unknown", "3"}), UsageError);
  CHECK_THROWS_AS(parse_config({"ecf-check", "-M", "1"}), UsageError);
  CHECK_THROWS_AS(parse_config({"walk", "--help"}), HelpRequested);
}

TEST_CASE("precedence: defaults < env seed < config file < flags", "[cli]") {
  const auto dir = scratch_dir();
  const auto file = dir / "run.cfg";
  {
    std::ofstream out(file);
    out << "# comment line\n"
        << "hurst = 0.8   # trailing comment\n"
        << "seed = 11\n"
        << "times = 0.2, 0.4\n"
        << "\n";
  }
  CHECK(parse_config({"walk"}, std::string("5")).seed == 5);
  CHECK(parse_config({"walk", "--seed", "9"}, std::string("5")).seed == 9);

  const auto from_file = parse_config({"walk", "--config", file.string()}, std::string("5"));
  CHECK(from_file.seed == 11);
  CHECK(from_file.H == 0.8);
  CHECK(from_file.times == std::vector<double>{0.2, 0.4});

  const auto flag_wins = parse_config({"walk", "--hurst", "0.3", "--config", file.string()});
  CHECK(flag_wins.H == 0.3);
  CHECK(flag_wins.seed == 11);

  {
    std::ofstream out(dir / "bad.cfg");
    out << "colour = blue\n";
  }
  CHECK_THROWS_AS(parse_config({"walk", "--config", (dir / "bad.cfg").string()}), UsageError);
  CHECK_THROWS_AS(parse_config({"walk", "--config", (dir / "missing.cfg").string()}), UsageError);
  CHECK_THROWS_AS(parse_config({"walk"}, std::string("-3")), UsageError);
  fs::remove_all(dir);
}

TEST_CASE("run writes a header, columns and rows", "[cli]") {
  auto cfg = parse_config({"walk", "--n", "16", "-M", "4"});
  std::ostringstream out, log;
  CHECK(run(cfg, out, log) == kSuccess);
  const std::string csv = out.str();
  CHECK(csv.starts_with("# rwrs "));
  CHECK(csv.find("# hurst = 0.5\n") != std::string::npos);
  CHECK(csv.find("# seed = 0\n") != std::string::npos);
  CHECK(csv.find("jobs") == std::string::npos);
  CHECK(csv.find("k,increment,position,site\n0,0,0,0\n") != std::string::npos);
  std::size_t rows = 0;
  std::istringstream lines(csv);
  for (std::string line; std::getline(lines, line);) rows += !line.starts_with("#");
  CHECK(rows == 1 + 17);
  CHECK(log.str().starts_with("walk n=16"));
}

TEST_CASE("every command runs on a small configuration", "[cli]") {
  for (const auto& c : commands()) {
    INFO(c);
    auto cfg = parse_config({c, "--n", "64", "--cn", "2", "--m", "64", "--bins", "16", "-M", "8",
                             "--oracle-replicates", "8"});
    std::ostringstream out, log;
    const int code = run(cfg, out, log);
    CHECK((code == kSuccess || code == kCheckFailed));
    CHECK_FALSE(out.str().empty());
    CHECK_FALSE(log.str().empty());
  }
}

TEST_CASE("binary exit codes", "[cli][process]") {
  const auto dir = scratch_dir();
  const auto out = dir / "out.csv";
  CHECK(run_binary("walk --n 32 -M 4", out) == kSuccess);
  CHECK(run_binary("walk --hurst 1.2", out) == kUsage);
  CHECK(run_binary("ecf-check -M 1", out) == kUsage);
  CHECK(run_binary("--help", out) == kSuccess);
  CHECK(slurp(out).find("ecf-check") != std::string::npos);
  CHECK(run_binary("scaling -M 200 --assert", out) == kSuccess);
  // A two-point fBm grid gives a badly biased E[X], so the comparison must fail.
  CHECK(run_binary("ecf-check -M 400 --n 512 --cn 4 --m 2 --bins 2 --oracle-replicates 400", out) ==
        kCheckFailed);
  fs::remove_all(dir);
}

TEST_CASE("CSV output is byte-identical across runs and job counts", "[cli][process]") {
  const auto dir = scratch_dir();
  const std::string common = " --n 128 --cn 3 --m 128 --bins 32 -M 24 --oracle-replicates 24 --seed 42";
  for (const auto& c : commands()) {
    INFO(c);
    const auto a = dir / (c + "_a.csv");
    const auto b = dir / (c + "_b.csv");
    const auto e = dir / (c + "_env.csv");
    const int ca = run_binary(c + common + " --jobs 1", a);
    const int cb = run_binary(c + common + " --jobs 4", b);
    CHECK(ca == cb);
    CHECK(slurp(a) == slurp(b));
    CHECK_FALSE(slurp(a).empty());
    // RWRS_SEED supplies the same seed when --seed is absent.
    std::string no_seed = common.substr(0, common.find(" --seed"));
    run_binary(c + no_seed + " --jobs 2", e, "RWRS_SEED=42");
    CHECK(slurp(a) == slurp(e));
  }
  const auto o = dir / "named.csv";
  CHECK(run_binary("walk --n 16 -M 2 --output '" + o.string() + "'", dir / "stdout.csv") == kSuccess);
  CHECK(slurp(dir / "stdout.csv").empty());
  CHECK(slurp(o).starts_with("# rwrs"));
  fs::remove_all(dir);
}
