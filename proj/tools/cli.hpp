#pragma once

#include <filesystem>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace caputolab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Bad invocation: unknown flag, malformed number, invalid combination.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Subcommand plus every parameter resolved to its textual value
/// (flags > config file > defaults).
struct ResolvedCommand {
  std::string subcommand;
  std::map<std::string, std::string> params;
  std::string config_path;
  bool help_requested = false;
  std::string help_text;

  [[nodiscard]] const std::string& get(const std::string& name) const;
  [[nodiscard]] double number(const std::string& name) const;
  [[nodiscard]] long integer(const std::string& name) const;
  [[nodiscard]] std::vector<double> list(const std::string& name) const;
};

[[nodiscard]] const std::vector<std::string>& subcommands();

/// Throws UsageError for anything that should exit with status 2.
[[nodiscard]] ResolvedCommand parse_invocation(const std::vector<std::string>& argv);

struct ExecutionResult {
  int exit_code = kExitOk;
  std::vector<std::filesystem::path> outputs;
  std::filesystem::path manifest;
};

/// Runs the command, writes its data files and JSON manifest under `out`.
/// Numerical and I/O failures are reported on `err` with exit code 1.
[[nodiscard]] ExecutionResult execute(const ResolvedCommand& command, std::ostream& out,
                                      std::ostream& err);

/// parse_invocation + execute with exit-code mapping; argv excludes the program name.
[[nodiscard]] int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

/// "lo:hi:count"
struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;
  [[nodiscard]] std::vector<double> values() const;
};

[[nodiscard]] GridSpec parse_grid(const std::string& text);
[[nodiscard]] double parse_number(const std::string& name, const std::string& text);
[[nodiscard]] std::vector<double> parse_list(const std::string& name, const std::string& text);

}  // namespace caputolab::cli
