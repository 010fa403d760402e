#include "odq/app.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <set>

#include <fmt/core.h>
#include "json.hpp"

#include "odq/errors.hpp"
#include "odq/ingest.hpp"
#include "odq/parallel.hpp"
#include "odq/version.hpp"

namespace odq {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string now_iso_utc() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

Manifest load_manifest(std::string_view document) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::exception& e) {
        throw ParseError(std::string("manifest: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array())
        throw ParseError("manifest: expected object with an 'entries' array");

    Manifest manifest;
    std::set<std::string> ids;
    for (const auto& item : doc["entries"]) {
        if (!item.is_object() || !item.contains("id") || !item.contains("source") ||
            !item["id"].is_string() || !item["source"].is_string())
            throw ParseError("manifest: each entry needs string 'id' and 'source'");
        ManifestEntry entry;
        entry.id = item["id"].get<std::string>();
        entry.source = item["source"].get<std::string>();
        if (entry.source.empty())
            throw ParseError("manifest: entry '" + entry.id + "' has an empty source");
        if (!ids.insert(entry.id).second)
            throw ParseError("manifest: duplicate entry id '" + entry.id + "'");
        if (item.contains("format_hint")) {
            const auto tag = item["format_hint"].get<std::string>();
            const auto format = file_format_from_string(tag);
            if (!format)
                throw ParseError("manifest: unknown format_hint '" + tag + "'");
            entry.format_hint = *format;
        }
        if (item.contains("record_root"))
            entry.record_root = item["record_root"].get<std::string>();
        if (item.contains("alias_file"))
            entry.alias_file = item["alias_file"].get<std::string>();
        manifest.entries.push_back(std::move(entry));
    }
    return manifest;
}

std::optional<ReportFormat> report_format_from_string(std::string_view tag) {
    if (tag == "json")
        return ReportFormat::Json;
    if (tag == "csv")
        return ReportFormat::Csv;
    if (tag == "radar")
        return ReportFormat::Radar;
    return std::nullopt;
}

std::string_view to_string(ReportFormat format) {
    switch (format) {
    case ReportFormat::Json: return "json";
    case ReportFormat::Csv: return "csv";
    case ReportFormat::Radar: return "radar";
    }
    return "json";
}

namespace {

std::string filename_of(const std::string& source) {
    std::string tail = source;
    const auto query = tail.find_first_of("?#");
    if (query != std::string::npos)
        tail.resize(query);
    const auto slash = tail.find_last_of('/');
    return slash == std::string::npos ? tail : tail.substr(slash + 1);
}

EntryOutcome run_entry(const ManifestEntry& entry, const StandardSpec& spec,
                       const RunOptions& options) {
    EntryOutcome outcome;
    outcome.id = entry.id;
    outcome.source = entry.source;
    try {
        AliasMap alias = options.default_alias;
        if (entry.alias_file)
            alias = load_alias_map(fetch_source(*entry.alias_file, options));

        const std::string content = fetch_source(entry.source, options);
        const FileFormat format =
            entry.format_hint
                ? *entry.format_hint
                : detect_format(filename_of(entry.source), std::nullopt, content.substr(0, 4096));
        outcome.format = format;

        ParseOptions parse_options;
        parse_options.record_root = entry.record_root;
        parse_options.csv_delimiter = options.csv_delimiter;
        const Dataset dataset = parse_dataset(format, content, parse_options);

        outcome.record_count = dataset.record_count;
        outcome.feature_count = dataset.columns.size();
        outcome.report = assess(dataset, spec, alias, entry.id);
    } catch (const Error& e) {
        outcome.error = e.what();
    }
    return outcome;
}

} // namespace

BatchReport run_batch(const Manifest& manifest, const StandardSpec& spec,
                      const RunOptions& options) {
    BatchReport batch;
    batch.tool = kToolName;
    batch.version = kToolVersion;
    batch.generated_at = now_iso_utc();
    batch.standard_iri = spec.standard_iri();
    batch.entries.resize(manifest.entries.size());
    parallel_for(manifest.entries.size(), options.jobs, [&](std::size_t i) {
        batch.entries[i] = run_entry(manifest.entries[i], spec, options);
    });
    return batch;
}

std::string format_points(double points) {
    return fmt::format("{:.2f}", round_half_up(points, 2));
}

namespace {

ordered_json dimension_to_json(const DimensionResult& result) {
    ordered_json out = ordered_json::object();
    if (result.score)
        out["score"] = round_half_up(*result.score, 2);
    else
        out["score"] = nullptr;
    if (!result.note.empty())
        out["note"] = result.note;
    if (!result.per_feature.empty()) {
        ordered_json features = ordered_json::array();
        for (const auto& contribution : result.per_feature) {
            ordered_json f = ordered_json::object();
            f["path"] = contribution.path.str();
            f["weight"] = contribution.weight;
            f["ratio"] = contribution.ratio;
            f["detail"] = contribution.detail;
            features.push_back(std::move(f));
        }
        out["features"] = std::move(features);
    }
    return out;
}

std::string csv_cell(const std::string& raw) {
    if (raw.find_first_of(",\"\r\n") == std::string::npos)
        return raw;
    std::string quoted = "\"";
    for (const char c : raw) {
        if (c == '"')
            quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string emit_score_grid(const BatchReport& batch, bool include_failed) {
    std::string out =
        "dataset,file_format,schema_accuracy,schema_completeness,data_type_consistency,"
        "data_completeness\n";
    for (const auto& entry : batch.entries) {
        if (!entry.ok() && !include_failed)
            continue;
        out += csv_cell(entry.id);
        for (const Dimension dimension : kAllDimensions) {
            out += ',';
            if (entry.ok()) {
                const auto& score = entry.report->result(dimension).score;
                if (score)
                    out += format_points(*score);
            }
        }
        out += '\n';
    }
    return out;
}

} // namespace

std::string emit_report(const BatchReport& batch, ReportFormat format) {
    if (batch.entries.empty())
        throw ValidationError("cannot emit a report for an empty batch");
    if (format == ReportFormat::Csv)
        return emit_score_grid(batch, true);
    if (format == ReportFormat::Radar)
        return emit_score_grid(batch, false);

    ordered_json doc = ordered_json::object();
    doc["tool"] = batch.tool;
    doc["version"] = batch.version;
    doc["generated_at"] = batch.generated_at;
    doc["standard"] = batch.standard_iri;
    ordered_json datasets = ordered_json::array();
    for (const auto& entry : batch.entries) {
        ordered_json e = ordered_json::object();
        e["id"] = entry.id;
        e["source"] = entry.source;
        e["status"] = entry.ok() ? "ok" : "error";
        if (!entry.ok())
            e["error"] = entry.error;
        e["format"] = std::string(to_string(entry.format));
        if (entry.ok()) {
            e["records"] = entry.record_count;
            e["features"] = entry.feature_count;
            ordered_json dimensions = ordered_json::object();
            for (const Dimension dimension : kAllDimensions)
                dimensions[std::string(to_string(dimension))] =
                    dimension_to_json(entry.report->result(dimension));
            e["dimensions"] = std::move(dimensions);
        }
        datasets.push_back(std::move(e));
    }
    doc["datasets"] = std::move(datasets);
    return doc.dump(2) + "\n";
}

BatchReport batch_report_from_json(std::string_view document) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::exception& e) {
        throw ParseError(std::string("report: ") + e.what());
    }
    BatchReport batch;
    batch.tool = doc.value("tool", "");
    batch.version = doc.value("version", "");
    batch.generated_at = doc.value("generated_at", "");
    batch.standard_iri = doc.value("standard", "");
    for (const auto& e : doc.value("datasets", json::array())) {
        EntryOutcome entry;
        entry.id = e.value("id", "");
        entry.source = e.value("source", "");
        entry.error = e.value("error", "");
        if (const auto format = file_format_from_string(e.value("format", "Unknown")))
            entry.format = *format;
        if (e.value("status", "") == "ok") {
            entry.record_count = e.value("records", std::size_t{0});
            entry.feature_count = e.value("features", std::size_t{0});
            QualityReport report;
            report.dataset_id = entry.id;
            for (const Dimension dimension : kAllDimensions) {
                DimensionResult result;
                result.dimension = dimension;
                const auto& d = e["dimensions"][std::string(to_string(dimension))];
                if (d.contains("score") && !d["score"].is_null())
                    result.score = d["score"].get<double>();
                result.note = d.value("note", "");
                for (const auto& f : d.value("features", json::array())) {
                    FeatureContribution contribution;
                    contribution.path = FeaturePath::parse(f.value("path", ""));
                    contribution.weight = f.value("weight", 0.0);
                    contribution.ratio = f.value("ratio", 0.0);
                    contribution.detail = f.value("detail", "");
                    result.per_feature.push_back(std::move(contribution));
                }
                report.results[static_cast<std::size_t>(dimension)] = std::move(result);
            }
            entry.report = std::move(report);
        }
        batch.entries.push_back(std::move(entry));
    }
    return batch;
}

} // namespace odq
