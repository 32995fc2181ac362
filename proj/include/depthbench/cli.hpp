#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace depthbench::cli {

inline constexpr const char* kVersion = "1.0.0";

enum class Command { corrupt, evaluate, report, histogram, verify };

/// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitPartial = 2;

/// Everything the command line says, validated but not yet resolved against
/// the config document or the file system.
struct Plan {
  Command command = Command::corrupt;

  std::optional<std::string> config;
  std::optional<std::string> profile;
  std::optional<int> jobs;
  /// Output directory or file; "-" means standard output.
  std::optional<std::string> out;

  // corrupt
  std::string in;
  std::vector<std::string> kinds;
  std::vector<int> severities;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> table;
  std::optional<std::string> frost_dir;
  std::string name;
  bool dry_run = false;

  // evaluate
  std::string pred;
  std::string gt;
  std::optional<std::string> manifest;
  std::optional<std::string> images;
  std::string model;
  std::optional<std::string> protocol;
  std::optional<std::string> gt_format;
  std::optional<double> gt_scale;
  std::optional<std::string> pred_format;
  std::optional<double> pred_scale;
  std::vector<std::string> styles;
  bool no_clean = false;

  // report
  std::string cells;
  std::optional<std::string> baseline;
  std::optional<double> clean;

  // histogram
  int bins = 256;

  // verify
  std::size_t sample = 50;

  bool operator==(const Plan&) const = default;
};

/// Bad flags, unknown commands or conflicting options. what() is the message;
/// usage() the help text of the offending (sub)command.
class UsageError : public std::runtime_error {
 public:
  UsageError(const std::string& message, std::string usage)
      : std::runtime_error(message), usage_(std::move(usage)) {}
  const std::string& usage() const noexcept { return usage_; }

 private:
  std::string usage_;
};

/// --help or --version; text goes to standard output with exit 0.
struct InfoRequest {
  std::string text;
};

/// Pure: no file system or environment access. args excludes the program name.
/// Throws UsageError or InfoRequest.
Plan parse_plan(const std::vector<std::string>& args);

/// Runs a parsed plan. Data goes to out, logs and errors to err.
int execute(const Plan& plan, std::ostream& out, std::ostream& err);

/// parse_plan + execute with the exit-code contract applied.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace depthbench::cli
