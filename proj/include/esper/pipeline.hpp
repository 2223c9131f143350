#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "esper/config.hpp"

namespace esper::pipeline {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kArtifactVersion = "0.1.0";

using json = nlohmann::ordered_json;

struct RunResult {
    json record;  // {schema_version, artifact_version, body, run}; body is the
                  // deterministic part, run holds timings and cache counters
    int failed_members = 0;
};

/// Sweep the configured family. Per-member failures are recorded in the
/// member entry and do not abort the sweep; config problems throw.
RunResult run_experiment(const ExperimentConfig& cfg);

enum class ReportFormat { tabular, structured, plotdata };
ReportFormat parse_format(const std::string& name);

std::string render_report(const json& record, ReportFormat fmt);
void write_report(const json& record, ReportFormat fmt, const std::filesystem::path& out);

/// Cache directory after applying the ESPER_CACHE_DIR override.
std::filesystem::path resolve_cache_dir(const ExperimentConfig& cfg);

struct CacheGcStats {
    int scanned = 0;
    int removed = 0;
};

/// Remove cache entries whose schema version is stale (or everything, with all).
CacheGcStats cache_gc(const std::filesystem::path& dir, bool all);

}  // namespace esper::pipeline
