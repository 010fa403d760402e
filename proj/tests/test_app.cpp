#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <thread>
#include <vector>

#ifdef ODQ_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include "httplib.h"

#include "odq/app.hpp"
#include "odq/errors.hpp"
#include "odq/version.hpp"
#include "support/fixtures.hpp"

using namespace odq;
namespace fs = std::filesystem;

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        lines.push_back(line);
    return lines;
}

int run(std::vector<std::string> args) {
    std::vector<const char*> argv;
    argv.push_back("odq");
    for (const auto& arg : args)
        argv.push_back(arg.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

struct BatchFixture {
    fs::path dir = testfix::temp_dir("app");
    StandardSpec spec = testfix::toy_standard();

    BatchFixture() {
        testfix::write_file(dir / "std.json", testfix::toy_standard_json());
        testfix::write_file(dir / "perfect.geojson", testfix::perfect_geojson());
        testfix::write_file(dir / "tabulka.csv", "name,place\nHrad,Brno\nZámek,Lednice\n");
        testfix::write_file(dir / "broken.json", "{not json");
        testfix::write_file(
            dir / "manifest.json", R"({"entries": [
            {"id": "perfect", "source": "perfect.geojson"},
            {"id": "tabulka", "source": "tabulka.csv"},
            {"id": "rozbité", "source": "broken.json", "format_hint": "json"}
        ]})");
    }
    ~BatchFixture() {
        std::error_code ec;
        fs::remove_all(dir, ec);
    }

    Manifest manifest() const {
        return load_manifest(testfix::read_file(dir / "manifest.json"));
    }
    RunOptions options() const {
        RunOptions opts;
        opts.base_dir = dir.string();
        return opts;
    }
};

} // namespace

TEST_CASE("load_manifest validates entries") {
    const auto manifest = load_manifest(
        R"({"entries": [{"id": "a", "source": "x.json", "format_hint": "geojson",
                         "record_root": "features", "alias_file": "alias.json"}]})");
    REQUIRE(manifest.entries.size() == 1);
    CHECK(manifest.entries[0].format_hint == FileFormat::GeoJson);
    CHECK(manifest.entries[0].record_root == "features");

    CHECK_THROWS_AS(load_manifest(R"({"entries": [{"id": "a"}]})"), ParseError);
    CHECK_THROWS_AS(load_manifest(R"({"entries": [{"id": "a", "source": ""}]})"), ParseError);
    CHECK_THROWS_AS(load_manifest(R"({"entries": [
        {"id": "a", "source": "x"}, {"id": "a", "source": "y"}]})"),
                    ParseError);
    CHECK_THROWS_AS(load_manifest(R"({"entries": [
        {"id": "a", "source": "x", "format_hint": "wat"}]})"),
                    ParseError);
}

TEST_CASE("run_batch preserves order and isolates entry failures") {
    BatchFixture fx;
    const auto batch = run_batch(fx.manifest(), fx.spec, fx.options());

    REQUIRE(batch.entries.size() == 3);
    CHECK(batch.entries[0].id == "perfect");
    CHECK(batch.entries[1].id == "tabulka");
    CHECK(batch.entries[2].id == "rozbité");

    CHECK(batch.entries[0].ok());
    CHECK(batch.entries[0].format == FileFormat::GeoJson);
    CHECK(batch.entries[0].record_count == 3);
    CHECK(batch.entries[0].feature_count == 7);

    CHECK(batch.entries[1].ok());
    CHECK(*batch.entries[1].report->result(Dimension::FileFormat).score == 50.0);

    CHECK_FALSE(batch.entries[2].ok());
    CHECK_FALSE(batch.entries[2].error.empty());
    CHECK_FALSE(batch.all_ok());

    CHECK(batch.standard_iri == fx.spec.standard_iri());
    CHECK(batch.version == kToolVersion);

    SUBCASE("entry order does not change outcomes") {
        Manifest reversed = fx.manifest();
        std::reverse(reversed.entries.begin(), reversed.entries.end());
        const auto rbatch = run_batch(reversed, fx.spec, fx.options());
        CHECK(rbatch.entries[2].id == "perfect");
        CHECK(*rbatch.entries[2].report->result(Dimension::DataCompleteness).score ==
              *batch.entries[0].report->result(Dimension::DataCompleteness).score);
    }
    SUBCASE("parallel jobs produce the same report rows") {
        auto opts = fx.options();
        opts.jobs = 4;
        const auto parallel = run_batch(fx.manifest(), fx.spec, opts);
        CHECK(emit_report(parallel, ReportFormat::Csv) ==
              emit_report(batch, ReportFormat::Csv));
    }
}

TEST_CASE("csv report has one row per entry with empty cells for failures") {
    BatchFixture fx;
    const auto batch = run_batch(fx.manifest(), fx.spec, fx.options());
    const auto lines = split_lines(emit_report(batch, ReportFormat::Csv));

    REQUIRE(lines.size() == 4);
    CHECK(lines[0] ==
          "dataset,file_format,schema_accuracy,schema_completeness,data_type_consistency,"
          "data_completeness");
    CHECK(lines[1] == "perfect,100.00,100.00,100.00,100.00,100.00");
    CHECK(lines[3] == "rozbité,,,,,");

    SUBCASE("radar keeps only assessed datasets") {
        const auto radar = split_lines(emit_report(batch, ReportFormat::Radar));
        REQUIRE(radar.size() == 3);
        CHECK(radar[1] == lines[1]);
        CHECK(radar[2] == lines[2]);
    }
    SUBCASE("ids with delimiters are quoted") {
        BatchReport copy = batch;
        copy.entries[0].id = "a,b\"c";
        const auto quoted = split_lines(emit_report(copy, ReportFormat::Csv));
        CHECK(quoted[1].rfind("\"a,b\"\"c\"", 0) == 0);
    }
    SUBCASE("not-computed dimensions serialize as empty cells") {
        testfix::write_file(fx.dir / "empty.geojson",
                            R"({"type":"FeatureCollection","features":[]})");
        Manifest manifest;
        manifest.entries.push_back({"empty", "empty.geojson", {}, {}, {}});
        const auto b = run_batch(manifest, fx.spec, fx.options());
        const auto rows = split_lines(emit_report(b, ReportFormat::Csv));
        CHECK(rows[1] == "empty,100.00,0.00,0.00,,");
    }
}

TEST_CASE("json report round-trips through its parser") {
    BatchFixture fx;
    const auto batch = run_batch(fx.manifest(), fx.spec, fx.options());
    const std::string emitted = emit_report(batch, ReportFormat::Json);
    const BatchReport parsed = batch_report_from_json(emitted);

    CHECK(emit_report(parsed, ReportFormat::Json) == emitted);
    CHECK(emit_report(parsed, ReportFormat::Csv) == emit_report(batch, ReportFormat::Csv));
    REQUIRE(parsed.entries.size() == batch.entries.size());
    CHECK(parsed.entries[2].error == batch.entries[2].error);

    SUBCASE("json carries the not-computed marker as null") {
        testfix::write_file(fx.dir / "empty.geojson",
                            R"({"type":"FeatureCollection","features":[]})");
        Manifest manifest;
        manifest.entries.push_back({"empty", "empty.geojson", {}, {}, {}});
        const auto b = run_batch(manifest, fx.spec, fx.options());
        const auto json_text = emit_report(b, ReportFormat::Json);
        CHECK(json_text.find("\"score\": null") != std::string::npos);
        CHECK(json_text.find("not computed: empty dataset") != std::string::npos);
    }
}

TEST_CASE("reports are byte-identical across reruns except the timestamp") {
    BatchFixture fx;
    auto first = run_batch(fx.manifest(), fx.spec, fx.options());
    auto second = run_batch(fx.manifest(), fx.spec, fx.options());
    CHECK(emit_report(first, ReportFormat::Csv) == emit_report(second, ReportFormat::Csv));
    second.generated_at = first.generated_at;
    CHECK(emit_report(first, ReportFormat::Json) == emit_report(second, ReportFormat::Json));
}

TEST_CASE("per-entry alias files and the default alias map") {
    BatchFixture fx;
    testfix::write_file(fx.dir / "renamed.json",
                        R"([{"kontext": "ctx", "jméno": "Hrad", "souřadnice": "16.6;49.2",
                             "properties.vstupné": "120 Kč"}])");
    testfix::write_file(fx.dir / "alias.json", R"({"aliases": {
        "kontext": "@context", "jméno": "properties.název",
        "souřadnice": "geometry.coordinates"}})");
    Manifest manifest;
    manifest.entries.push_back(
        {"renamed", "renamed.json", {}, {}, std::string("alias.json")});
    const auto batch = run_batch(manifest, fx.spec, fx.options());

    REQUIRE(batch.entries[0].ok());
    CHECK(*batch.entries[0].report->result(Dimension::SchemaAccuracy).score == 25.0);
    CHECK(*batch.entries[0].report->result(Dimension::SchemaCompleteness).score == 100.0);
}

TEST_CASE("http sources are fetched, cached, and errors recorded per entry") {
    BatchFixture fx;
    httplib::Server server;
    int hits = 0;
    server.Get("/poi.geojson", [&](const httplib::Request&, httplib::Response& res) {
        ++hits;
        res.set_content(testfix::perfect_geojson(), "application/geo+json");
    });
    const int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread server_thread([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    const std::string base = "http://127.0.0.1:" + std::to_string(port);
    const fs::path cache = fx.dir / "cache";

    RunOptions opts = fx.options();
    opts.cache_dir = cache.string();
    opts.http_timeout_seconds = 5;
    opts.http_retries = 0;

    Manifest manifest;
    manifest.entries.push_back({"vzdálené", base + "/poi.geojson", {}, {}, {}});
    manifest.entries.push_back({"mrtvé", "http://127.0.0.1:1/x.json", {}, {}, {}});

    const auto batch = run_batch(manifest, fx.spec, opts);
    CHECK(batch.entries[0].ok());
    CHECK(*batch.entries[0].report->result(Dimension::FileFormat).score == 100.0);
    CHECK_FALSE(batch.entries[1].ok());
    CHECK(batch.entries[1].error.find("http://127.0.0.1:1/x.json") != std::string::npos);
    CHECK(hits == 1);
    CHECK_FALSE(fs::is_empty(cache));

    // Second run is served from the cache even with the server gone.
    server.stop();
    server_thread.join();
    Manifest cached_only;
    cached_only.entries.push_back({"vzdálené", base + "/poi.geojson", {}, {}, {}});
    const auto again = run_batch(cached_only, fx.spec, opts);
    CHECK(again.entries[0].ok());
    CHECK(hits == 1);
}

TEST_CASE("cli: single dataset run writes reports and exits 0") {
    BatchFixture fx;
    const auto out = fx.dir / "out";
    CHECK(run({"assess", "--standard", (fx.dir / "std.json").string(), "--dataset",
               (fx.dir / "perfect.geojson").string(), "--report", "json", "--report", "csv",
               "--out", out.string()}) == 0);
    REQUIRE(fs::exists(out / "report.json"));
    REQUIRE(fs::exists(out / "report.csv"));
    const auto lines = split_lines(testfix::read_file(out / "report.csv"));
    CHECK(lines[1] == "perfect,100.00,100.00,100.00,100.00,100.00");
}

TEST_CASE("cli: manifest with a broken entry exits 2 but reports the rest") {
    BatchFixture fx;
    const auto out = fx.dir / "out2";
    CHECK(run({"assess", "--standard", (fx.dir / "std.json").string(), "--manifest",
               (fx.dir / "manifest.json").string(), "--report", "radar", "--out",
               out.string(), "--jobs", "2"}) == 2);
    const auto lines = split_lines(testfix::read_file(out / "report-radar.csv"));
    CHECK(lines.size() == 3); // header + two assessed datasets
}

TEST_CASE("cli: usage and spec errors exit 1") {
    BatchFixture fx;
    CHECK(run({"assess", "--standard", (fx.dir / "std.json").string()}) == 1);
    CHECK(run({"assess", "--standard", (fx.dir / "std.json").string(), "--dataset",
               (fx.dir / "perfect.geojson").string(), "--report", "yaml"}) == 1);
    CHECK(run({"assess", "--standard", (fx.dir / "std.json").string(), "--dataset",
               (fx.dir / "perfect.geojson").string(), "--csv-delimiter", "ab"}) == 1);

    testfix::write_file(fx.dir / "bad-std.json", R"({"standard_iri": "x", "features": []})");
    CHECK(run({"assess", "--standard", (fx.dir / "bad-std.json").string(), "--dataset",
               (fx.dir / "perfect.geojson").string()}) == 1);
}

TEST_CASE("cli: ODQ_CACHE_DIR provides the default cache location") {
    BatchFixture fx;
    const auto cache = fx.dir / "envcache";
    setenv("ODQ_CACHE_DIR", cache.string().c_str(), 1);

    httplib::Server server;
    server.Get("/d.geojson", [&](const httplib::Request&, httplib::Response& res) {
        res.set_content(testfix::perfect_geojson(), "application/geo+json");
    });
    const int port = server.bind_to_any_port("127.0.0.1");
    std::thread server_thread([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    const int rc = run({"assess", "--standard", (fx.dir / "std.json").string(), "--dataset",
                        "http://127.0.0.1:" + std::to_string(port) + "/d.geojson", "--out",
                        (fx.dir / "out3").string()});
    server.stop();
    server_thread.join();
    unsetenv("ODQ_CACHE_DIR");

    CHECK(rc == 0);
    CHECK(fs::exists(cache));
    CHECK_FALSE(fs::is_empty(cache));
}
