#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace slag::cli {

enum class Command { Classify, Sweep, Verify, Gen, Integrate, Ruled };
enum class Format { Json, Csv };

struct RunConfig {
  Command command = Command::Classify;
  std::string input = "-";  // cubic JSON file for classify, "-" for stdin
  std::string example;
  std::map<std::string, double> params;
  std::optional<std::array<int, 3>> grid;  // defaults to the example's grid
  double tol = 1e-6;
  std::string out;  // empty means stdout
  Format format = Format::Csv;
  bool format_given = false;
  unsigned seed = 1;
  double step = 1e-2;
  std::array<double, 6> init{1.0, 2.0, 0.1, 0.1, -0.2, 0.3};
  std::array<double, 3> extent{0.2, 0.2, 0.2};
  double arclen = 0.1;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

/// Throws ValidationError on an invalid configuration.
void validate(const RunConfig& cfg);

/// Executes one command. Data goes to cfg.out (or `out`), diagnostics to `err`
/// as JSON lines. Returns the exit status.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err, std::istream& in);

/// Parses argv into a config; on --help or a parse error writes to out/err and
/// returns the exit status in `exit_code`.
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
                                    int& exit_code);

}  // namespace slag::cli
