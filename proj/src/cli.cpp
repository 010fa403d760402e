#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>
#include "CLI11.hpp"

#include "odq/app.hpp"
#include "odq/errors.hpp"
#include "odq/version.hpp"

namespace odq {

namespace {

namespace fs = std::filesystem;

std::string read_file_or_throw(const fs::path& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw FetchError(std::string(what) + " '" + path.string() + "' cannot be opened");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return std::move(buffer).str();
}

std::string stem_of(const std::string& source) {
    std::string tail = source;
    const auto query = tail.find_first_of("?#");
    if (query != std::string::npos)
        tail.resize(query);
    const auto slash = tail.find_last_of('/');
    if (slash != std::string::npos)
        tail = tail.substr(slash + 1);
    const auto dot = tail.find_last_of('.');
    if (dot != std::string::npos && dot > 0)
        tail.resize(dot);
    return tail.empty() ? "dataset" : tail;
}

void print_summary(const BatchReport& batch) {
    std::size_t width = 7;
    for (const auto& entry : batch.entries)
        width = std::max(width, entry.id.size());
    fmt::print("{:<{}}  {:>11}  {:>15}  {:>19}  {:>21}  {:>17}\n", "dataset", width,
               "file_format", "schema_accuracy", "schema_completeness",
               "data_type_consistency", "data_completeness");
    for (const auto& entry : batch.entries) {
        if (!entry.ok()) {
            fmt::print("{:<{}}  error: {}\n", entry.id, width, entry.error);
            continue;
        }
        std::vector<std::string> cells;
        for (const Dimension dimension : kAllDimensions) {
            const auto& score = entry.report->result(dimension).score;
            cells.push_back(score ? format_points(*score) : "-");
        }
        fmt::print("{:<{}}  {:>11}  {:>15}  {:>19}  {:>21}  {:>17}\n", entry.id, width, cells[0],
                   cells[1], cells[2], cells[3], cells[4]);
    }
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Scores open datasets against a machine-readable feature standard"};
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
    app.require_subcommand(1);

    CLI::App* cmd = app.add_subcommand("assess", "Assess one dataset or a manifest of datasets");
    std::string standard_file;
    std::string dataset_source;
    std::string manifest_file;
    std::string alias_file;
    std::string format_hint;
    std::string record_root;
    std::vector<std::string> report_tags;
    std::string out_dir = ".";
    std::string cache_dir;
    std::string csv_delimiter = ",";
    int jobs = 1;

    cmd->add_option("--standard", standard_file, "Standard spec file (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    auto* dataset_opt =
        cmd->add_option("--dataset", dataset_source, "Dataset file or http(s) URL");
    cmd->add_option("--manifest", manifest_file, "Manifest file (JSON)")
        ->check(CLI::ExistingFile)
        ->excludes(dataset_opt);
    cmd->add_option("--alias", alias_file,
                    "Alias map file applied to entries without their own alias_file")
        ->check(CLI::ExistingFile);
    cmd->add_option("--format-hint", format_hint,
                    "Skip detection and parse --dataset as this format");
    cmd->add_option("--record-root", record_root,
                    "Record container for --dataset, e.g. features or data/items");
    cmd->add_option("--report", report_tags, "Report formats: json, csv, radar")
        ->default_val(std::vector<std::string>{"json"});
    cmd->add_option("--out", out_dir, "Directory for report files");
    cmd->add_option("--cache-dir", cache_dir,
                    "Cache directory for fetched URLs (default $ODQ_CACHE_DIR)");
    cmd->add_option("--csv-delimiter", csv_delimiter, "CSV field delimiter (one character)");
    cmd->add_option("--jobs", jobs, "Assess up to N manifest entries concurrently")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (dataset_source.empty() && manifest_file.empty()) {
            std::cerr << "error: one of --dataset or --manifest is required\n";
            return 1;
        }
        if (csv_delimiter.size() != 1) {
            std::cerr << "error: --csv-delimiter must be a single character\n";
            return 1;
        }

        RunOptions options;
        options.csv_delimiter = csv_delimiter[0];
        options.jobs = jobs;
        if (!cache_dir.empty())
            options.cache_dir = cache_dir;
        else if (const char* env = std::getenv("ODQ_CACHE_DIR"); env && *env)
            options.cache_dir = env;

        const StandardSpec spec = load_standard(read_file_or_throw(standard_file, "standard"));
        if (!alias_file.empty())
            options.default_alias = load_alias_map(read_file_or_throw(alias_file, "alias map"));

        Manifest manifest;
        if (!manifest_file.empty()) {
            manifest = load_manifest(read_file_or_throw(manifest_file, "manifest"));
            options.base_dir = fs::path(manifest_file).parent_path().string();
        } else {
            ManifestEntry entry;
            entry.id = stem_of(dataset_source);
            entry.source = dataset_source;
            if (!format_hint.empty()) {
                const auto format = file_format_from_string(format_hint);
                if (!format) {
                    std::cerr << "error: unknown --format-hint '" << format_hint << "'\n";
                    return 1;
                }
                entry.format_hint = *format;
            }
            if (!record_root.empty())
                entry.record_root = record_root;
            manifest.entries.push_back(std::move(entry));
        }

        std::set<ReportFormat> formats;
        for (const auto& tag : report_tags) {
            const auto format = report_format_from_string(tag);
            if (!format) {
                std::cerr << "error: unknown --report format '" << tag << "'\n";
                return 1;
            }
            formats.insert(*format);
        }

        const BatchReport batch = run_batch(manifest, spec, options);
        print_summary(batch);

        fs::create_directories(out_dir);
        for (const ReportFormat format : formats) {
            const char* name = format == ReportFormat::Json    ? "report.json"
                               : format == ReportFormat::Csv   ? "report.csv"
                                                               : "report-radar.csv";
            const fs::path path = fs::path(out_dir) / name;
            std::ofstream out(path, std::ios::binary);
            const std::string payload = emit_report(batch, format);
            out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
            if (!out) {
                std::cerr << "error: cannot write " << path.string() << "\n";
                return 1;
            }
            fmt::print("wrote {}\n", path.string());
        }
        return batch.all_ok() ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace odq
