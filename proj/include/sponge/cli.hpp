#ifndef SPONGE_CLI_HPP_
#define SPONGE_CLI_HPP_

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace sponge {

enum ExitCode : int {
  kExitOk = 0,
  kExitParse = 1,
  kExitValidation = 2,
  kExitBudget = 3,
  kExitInternal = 4,
};

struct RunConfig {
  std::string command;
  std::string input;
  std::string output;
  std::uint64_t seed = 0;
  long trials = 10000;
  std::vector<int> depths;
  std::vector<std::string> scales;
  std::size_t budget = 10'000'000;
  std::string format = "text";
  bool permutations = false;
};

// Runs one command line (args excludes the program name). Reports go to `out`
// unless --output names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Executes an already parsed configuration.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// %.10g
std::string format_number(double value);

}  // namespace sponge

#endif  // SPONGE_CLI_HPP_
