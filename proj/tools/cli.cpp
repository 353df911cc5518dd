#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "hsvprep/imageio.hpp"

namespace hsvprep::cli {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_double(std::string_view s) {
  double value = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

std::string format_velocity(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

EntryReport process_entry(const ManifestEntry& entry, PipelineConfig config, const fs::path& out_dir) {
  const auto start = Clock::now();
  EntryReport report;
  report.input = entry.input_path;
  try {
    config.test_max = entry.test_max;
    const RgbImage img = load_image(entry.input_path);
    const PipelineResult result = run_pipeline(img, config);
    const fs::path noletters = noletters_path(out_dir, entry.input_path);
    const fs::path adapted = adapted_path(out_dir, entry.input_path);
    save_image(result.letters_removed, noletters);
    save_image(result.adapted, adapted);
    report.ok = true;
    report.dark_pixels = result.dark_pixels;
    report.letter_pixels = result.letter_pixels;
    report.outputs = {noletters, adapted};
  } catch (const std::exception& e) {
    report.ok = false;
    report.message = e.what();
  }
  report.seconds = seconds_since(start);
  return report;
}

}  // namespace

Options parse_args(int argc, const char* const* argv) {
  Options opts;
  PipelineConfig& cfg = opts.config;

  CLI::App app{"Removes burned-in annotations from HSV-colormapped images and remaps their hue scale",
               "hsvprep"};
  std::string input;
  std::string manifest;
  std::string out_dir = ".";
  std::optional<double> test_max;

  auto* input_opt = app.add_option("--input", input, "Single PNG image to process");
  auto* manifest_opt = app.add_option("--manifest", manifest, "CSV manifest with header `path,test_max`");
  input_opt->excludes(manifest_opt);
  app.add_option("--out-dir", out_dir, "Directory for output images")->capture_default_str();
  app.add_option("--test-max", test_max, "Scale maximum (m/s) of the --input image");
  app.add_option("--ref-max", cfg.ref_max, "Reference scale maximum (m/s)")->capture_default_str();
  app.add_option("--k", cfg.k, "Neighbor count for imputation, 5-40")->capture_default_str();
  app.add_option("--dark-threshold", cfg.dark_threshold, "V below this is treated as a dark artifact")
      ->capture_default_str();
  app.add_option("--sat-min", cfg.sat_min, "S below this marks an annotation pixel")->capture_default_str();
  app.add_option("--radius", cfg.dilation_radius, "Dilation radius of the annotation mask")
      ->capture_default_str();
  app.add_option("--noise-cutoff", cfg.noise_cutoff, "Hues above this are treated as red noise")
      ->capture_default_str();
  app.add_option("--jobs", opts.jobs, "Images processed in parallel")->capture_default_str();
  app.add_flag("--quiet", opts.quiet, "Only print the summary line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    opts.help = app.help();
    return opts;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (input.empty() == manifest.empty()) throw UsageError("exactly one of --input or --manifest is required");
  if (cfg.k < kMinK || cfg.k > kMaxK) throw UsageError("k must be in [5, 40]");
  if (opts.jobs < 1) throw UsageError("--jobs must be at least 1");

  if (!input.empty()) {
    if (!test_max) throw UsageError("--test-max is required with --input");
    opts.input = input;
    cfg.test_max = test_max;
  } else {
    if (test_max) throw UsageError("--test-max applies to --input only; manifests carry test_max per row");
    opts.manifest = manifest;
  }
  opts.out_dir = out_dir;

  try {
    cfg.validate();
  } catch (const PreconditionError& e) {
    throw UsageError(e.what());
  }
  return opts;
}

std::vector<ManifestEntry> load_manifest(const fs::path& path, double ref_max) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest '" + path.string() + "'");

  const fs::path base = path.parent_path();
  std::vector<ManifestEntry> entries;
  bool seen_header = false;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    std::string_view text = line;
    if (line_no == 1 && text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
    text = trim(text);
    if (text.empty()) continue;

    if (!seen_header) {
      if (text != "path,test_max") {
        throw ManifestError("manifest line " + std::to_string(line_no) + ": expected header `path,test_max`");
      }
      seen_header = true;
      continue;
    }

    const auto comma = text.rfind(',');
    const std::string_view file = comma == std::string_view::npos ? std::string_view{} : trim(text.substr(0, comma));
    const std::optional<double> t =
        comma == std::string_view::npos ? std::nullopt : parse_double(trim(text.substr(comma + 1)));
    if (file.empty() || !t) {
      throw ManifestError("manifest line " + std::to_string(line_no) + ": malformed row, expected `path,test_max`");
    }
    if (!(*t > PipelineConfig::kMinVelocity) || *t > ref_max) {
      throw ManifestError("manifest line " + std::to_string(line_no) + " (" + std::string(file) +
                          "): test_max " + format_velocity(*t) + " is outside (0.5, " +
                          format_velocity(ref_max) + "]");
    }

    fs::path input{std::string(file)};
    if (input.is_relative()) input = base / input;
    entries.push_back({input.lexically_normal(), *t});
  }
  if (entries.empty()) throw ManifestError("manifest has no rows");
  return entries;
}

std::size_t RunReport::failures() const {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const EntryReport& e) { return !e.ok; }));
}

fs::path noletters_path(const fs::path& out_dir, const fs::path& input) {
  return out_dir / (input.stem().string() + "_noletters.png");
}

fs::path adapted_path(const fs::path& out_dir, const fs::path& input) {
  return out_dir / (input.stem().string() + "_adapted.png");
}

RunReport run_batch(const std::vector<ManifestEntry>& entries, const PipelineConfig& config, const fs::path& out_dir,
                    std::size_t jobs) {
  const auto start = Clock::now();
  RunReport report;
  report.entries.resize(entries.size());

  std::error_code ec;
  fs::create_directories(out_dir, ec);

  // Two inputs with the same stem would race for the same output files; the later one loses.
  std::vector<bool> runnable(entries.size(), true);
  std::map<std::string, std::size_t> owner;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto [it, inserted] = owner.emplace(entries[i].input_path.stem().string(), i);
    if (!inserted) {
      runnable[i] = false;
      report.entries[i].input = entries[i].input_path;
      report.entries[i].message = "output names collide with entry " + std::to_string(it->second);
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) {
      if (runnable[i]) report.entries[i] = process_entry(entries[i], config, out_dir);
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(entries.size(), 1));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  report.seconds = seconds_since(start);
  return report;
}

std::string format_entry(const EntryReport& entry, std::size_t index) {
  nlohmann::ordered_json j;
  j["index"] = index;
  j["input"] = entry.input.string();
  j["status"] = entry.ok ? "ok" : "error";
  if (!entry.ok) j["message"] = entry.message;
  j["dark_pixels"] = entry.dark_pixels;
  j["letter_pixels"] = entry.letter_pixels;
  auto outputs = nlohmann::json::array();
  for (const auto& p : entry.outputs) outputs.push_back(p.string());
  j["outputs"] = outputs;
  j["seconds"] = entry.seconds;
  return j.dump();
}

std::string format_summary(const RunReport& report) {
  nlohmann::ordered_json j;
  j["summary"] = {{"images", report.entries.size()},
                  {"ok", report.entries.size() - report.failures()},
                  {"failed", report.failures()},
                  {"seconds", report.seconds}};
  return j.dump();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options opts;
  std::vector<ManifestEntry> entries;
  try {
    opts = parse_args(argc, argv);
    if (opts.help) {
      out << *opts.help;
      return kExitOk;
    }
    if (opts.manifest) {
      entries = load_manifest(*opts.manifest, opts.config.ref_max);
    } else {
      entries.push_back({*opts.input, *opts.config.test_max});
    }
  } catch (const Error& e) {
    err << "hsvprep: " << e.what() << "\n";
    err << "Run with --help for usage.\n";
    return kExitUsage;
  }

  PipelineConfig config = opts.config;
  config.test_max.reset();
  const RunReport report = run_batch(entries, config, opts.out_dir, opts.jobs);

  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    const auto& entry = report.entries[i];
    if (!opts.quiet) out << format_entry(entry, i) << "\n";
    if (!entry.ok) err << "hsvprep: " << entry.input.string() << ": " << entry.message << "\n";
  }
  out << format_summary(report) << "\n";
  return report.exit_code();
}

}  // namespace hsvprep::cli
