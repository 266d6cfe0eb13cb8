#ifndef HAMLOOP_CLI_HPP
#define HAMLOOP_CLI_HPP

#include <json.hpp>

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hamloop::cli {

/// Malformed or incomplete configuration (exit status 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Command-line overrides of the config's "numeric" block.
struct Overrides {
  std::optional<int> steps;       // RK4 steps per unit time
  std::optional<int> resolution;  // multiplier of the default quadrature resolution
  std::optional<int> jet_order;
};

/// Name and one-line description of every task.
const std::vector<std::pair<std::string, std::string>>& task_catalog();

/// Runs every task of a parsed config and returns the report. The report's "status"
/// is "pass" iff every asserted check passed. Throws ConfigError.
nlohmann::json run_config(const nlohmann::json& config, const Overrides& overrides = {});

/// File front ends returning the process exit status (0 pass, 1 failed check, 2 bad input).
int run(const std::string& config_path, const std::string& out_path, const Overrides& overrides,
        std::ostream& out, std::ostream& err);
int explain(const std::string& path, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

}  // namespace hamloop::cli

#endif  // HAMLOOP_CLI_HPP
