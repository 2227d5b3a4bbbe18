#pragma once

// Command-line front end: configuration, seeding, experiment orchestration and
// CSV emission.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rwrs/local_time.hpp"
#include "rwrs/stable.hpp"

namespace rwrs::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kNumerical = 2,
  kCheckFailed = 3,
};

struct RunConfig {
  std::string command;
  double H = 0.5;
  double beta = 2.0;
  double sigma = 1.0;
  std::int64_t n = 2048;
  std::int64_t cn = 32;
  std::int64_t m = 4096;
  std::int64_t bins = 512;
  std::int64_t replicates = 500;
  std::int64_t oracle_replicates = 2000;
  std::vector<double> times{0.5, 1.0};
  std::vector<double> thetas;  // empty: one per time, all equal to 1
  std::vector<double> u{0.5, 1.0, 2.0};
  std::uint64_t seed = 0;
  SceneryKind scenery = SceneryKind::ExactStable;
  SiteConvention convention = SiteConvention::Ceiling;
  std::string source = "schema";  // ecf-check: schema or gamma
  std::string output;             // empty: stdout
  unsigned jobs = 0;              // 0: available parallelism
  bool assert_mode = false;
};

/// Thrown by parse_config when --help was requested; what() is the help text.
class HelpRequested : public std::runtime_error {
 public:
  explicit HelpRequested(const std::string& text) : std::runtime_error(text) {}
};

const std::vector<std::string>& commands();

/// Throws UsageError unless every parameter is in range for cfg.command.
void validate(const RunConfig& cfg);

/// Applies one `key = value` setting as found in a config file.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Reads a flat `key = value` file, one pair per line, `#` starts a comment.
void load_config_file(RunConfig& cfg, const std::string& path);

/// Precedence, lowest first: built-in defaults, RWRS_SEED (`env_seed`), the file
/// named by --config, command-line flags. `args` excludes the program name.
RunConfig parse_config(const std::vector<std::string>& args, const std::optional<std::string>& env_seed = {});

/// Runs the configured experiment, writing CSV to cfg.output (or `out` when
/// empty) and a one-line summary to `log`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& log);

/// Full entry point; maps exceptions to exit codes.
int main(int argc, char** argv);

}  // namespace rwrs::cli
