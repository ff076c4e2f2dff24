#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace kripkelab {

/// git-describe style build version.
const char* version() noexcept;

struct JobFailure {
  std::size_t index;
  std::string message;
};

struct ExperimentOutcome {
  std::vector<std::filesystem::path> written;  // CSV files of successful jobs
  std::vector<JobFailure> failures;
  std::filesystem::path manifest;
};

/// Runs the jobs of a JSON experiment config:
///
///   {"jobs": [{"kind": "estimate" | "sweep" | "uniformity",
///              "class": "kd5", "scope": "all" | "connected",
///              "formula": "...",          (estimate)
///              "stat": "tree_height",     (sweep)
///              "threshold": 10,           (sweep, optional, default 0)
///              "ns": [4, 8], "trials": 1000, "seed": 7,
///              "out": "result.csv"}],
///    "manifest": "manifest.json"}        (optional)
///
/// Relative paths are resolved against the config's directory; the manifest
/// defaults to manifest.json there. Malformed JSON raises ParseError, schema
/// problems InvalidInput naming the offending path (e.g. jobs[1].ns). A job
/// that fails is recorded in the manifest and does not stop the others.
ExperimentOutcome run_experiment(const std::filesystem::path& config, std::size_t threads = 1);

}  // namespace kripkelab
