#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hsvprep/error.hpp"
#include "hsvprep/preprocess.hpp"

namespace hsvprep::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPartialFailure = 1;
inline constexpr int kExitUsage = 2;

inline constexpr std::size_t kMinK = 5;
inline constexpr std::size_t kMaxK = 40;

class UsageError : public Error {
 public:
  using Error::Error;
};

class ManifestError : public Error {
 public:
  using Error::Error;
};

struct Options {
  PipelineConfig config;  // test_max is set only in single-image mode
  std::optional<std::filesystem::path> input;
  std::optional<std::filesystem::path> manifest;
  std::filesystem::path out_dir = ".";
  std::size_t jobs = 1;
  bool quiet = false;
  std::optional<std::string> help;  // set when --help was requested
};

/// Throws UsageError for unknown flags, missing or conflicting modes, and out-of-range values.
Options parse_args(int argc, const char* const* argv);

struct ManifestEntry {
  std::filesystem::path input_path;
  double test_max = 0.0;
};

/// CSV with header `path,test_max`. Relative paths resolve against the manifest's directory.
std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path, double ref_max);

struct EntryReport {
  std::filesystem::path input;
  bool ok = false;
  std::string message;
  std::size_t dark_pixels = 0;
  std::size_t letter_pixels = 0;
  double seconds = 0.0;
  std::vector<std::filesystem::path> outputs;
};

struct RunReport {
  std::vector<EntryReport> entries;
  double seconds = 0.0;

  std::size_t failures() const;
  int exit_code() const { return failures() == 0 ? kExitOk : kExitPartialFailure; }
};

std::filesystem::path noletters_path(const std::filesystem::path& out_dir, const std::filesystem::path& input);
std::filesystem::path adapted_path(const std::filesystem::path& out_dir, const std::filesystem::path& input);

/// Runs every entry; a failing entry is recorded and does not stop the others.
/// Entries are processed by up to `jobs` workers; the report stays in manifest order.
RunReport run_batch(const std::vector<ManifestEntry>& entries, const PipelineConfig& config,
                    const std::filesystem::path& out_dir, std::size_t jobs = 1);

/// One JSON object per line.
std::string format_entry(const EntryReport& entry, std::size_t index);
std::string format_summary(const RunReport& report);

/// Whole command line front end; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hsvprep::cli
