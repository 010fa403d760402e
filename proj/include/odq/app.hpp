#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "odq/dimensions.hpp"
#include "odq/standard.hpp"
#include "odq/value.hpp"

namespace odq {

/// One dataset to assess: a local path or http(s) URL plus per-entry
/// ingestion overrides.
struct ManifestEntry {
    std::string id;
    std::string source;
    std::optional<FileFormat> format_hint;
    std::optional<std::string> record_root;
    std::optional<std::string> alias_file;
};

struct Manifest {
    std::vector<ManifestEntry> entries;
};

/// Parses `{ "entries": [ { "id", "source", "format_hint"?, "record_root"?,
/// "alias_file"? } ] }`, validating unique ids and non-empty sources.
Manifest load_manifest(std::string_view document);

enum class ReportFormat { Json, Csv, Radar };

std::optional<ReportFormat> report_format_from_string(std::string_view tag);
std::string_view to_string(ReportFormat format);

struct RunOptions {
    AliasMap default_alias;               // used by entries without their own alias file
    std::optional<std::string> cache_dir; // per-URL response cache
    std::optional<std::string> base_dir;  // resolves relative sources/alias files
    char csv_delimiter = ',';
    int jobs = 1;                         // concurrent manifest entries
    int http_timeout_seconds = 30;
    int http_retries = 2;
};

/// Outcome for one manifest entry. `error` is empty on success; entry-level
/// failures (fetch, parse, alias collisions) never abort the batch.
struct EntryOutcome {
    std::string id;
    std::string source;
    std::string error;
    FileFormat format = FileFormat::Unknown;
    std::size_t record_count = 0;
    std::size_t feature_count = 0;
    std::optional<QualityReport> report;

    bool ok() const noexcept { return error.empty(); }
};

struct BatchReport {
    std::string tool;
    std::string version;
    std::string generated_at; // ISO 8601 UTC
    std::string standard_iri;
    std::vector<EntryOutcome> entries;

    bool all_ok() const noexcept {
        for (const auto& entry : entries)
            if (!entry.ok())
                return false;
        return true;
    }
};

/// Assesses every manifest entry against the standard, preserving entry
/// order. Entries run concurrently up to `options.jobs`.
BatchReport run_batch(const Manifest& manifest, const StandardSpec& spec,
                      const RunOptions& options);

/// Serializes a batch report. json carries full per-feature diagnostics and
/// error records; csv is one row per entry with the five dimension scores
/// (2 decimals, half-up; empty cells for errors and not-computed
/// dimensions); radar is the csv score grid restricted to successfully
/// assessed datasets, for external plotting.
std::string emit_report(const BatchReport& batch, ReportFormat format);

/// Inverse of the json emission; parse(emit(batch)) reproduces the report.
BatchReport batch_report_from_json(std::string_view document);

/// "100.00" style fixed-point rendering used by the csv/radar reports.
std::string format_points(double points);

/// Retrieves a source (local file or http(s) URL, with caching and retries).
/// Throws FetchError.
std::string fetch_source(const std::string& source, const RunOptions& options);

/// Full command-line front end; returns the process exit status
/// (0 = all entries assessed, 1 = usage or standard/alias/manifest errors,
/// 2 = at least one entry failed).
int run_cli(int argc, const char* const* argv);

} // namespace odq
