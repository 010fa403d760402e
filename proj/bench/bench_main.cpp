// Compares the OpenMP-parallel assessment engine against the serial
// reference implementation on a synthetic dataset and reports throughput.
//
//   odq_bench [records] [features] [max_threads]

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "odq/dimensions.hpp"
#include "odq/parallel.hpp"
#include "odq/reference.hpp"
#include "odq/standard.hpp"
#include "odq/typesys.hpp"

using namespace odq;

namespace {

std::vector<std::string> value_pool() {
    return {
        "https://example.org/objekt/123", "info@example.org",
        "Hlavní 12",                      "Náměstí Svobody 8/10",
        "POINT (16.6068 49.1951)",        "+420 123 456 789",
        "42",                             "3.141592",
        "true",                           "Hrad Špilberk",
        "celodenní prohlídka s průvodcem", "",
    };
}

Dataset synthetic_dataset(std::size_t records, std::size_t features) {
    const auto pool = value_pool();
    Dataset dataset;
    dataset.source_format = FileFormat::GeoJson;
    dataset.record_count = records;
    for (std::size_t f = 0; f < features; ++f) {
        const FeaturePath path = FeaturePath::parse("pole" + std::to_string(f));
        FeatureColumn column{path, {}};
        column.values.reserve(records);
        for (std::size_t r = 0; r < records; ++r)
            column.values.push_back(Value::text(pool[(r * 31 + f * 7) % pool.size()]));
        dataset.columns.emplace(path, std::move(column));
    }
    return dataset;
}

StandardSpec synthetic_spec(std::size_t features) {
    std::vector<FeatureSpec> specs;
    for (std::size_t f = 0; f < features; f += 2)
        specs.push_back({FeaturePath::parse("pole" + std::to_string(f)),
                         f % 4 == 0 ? Obligation::Mandatory : Obligation::Optional});
    return StandardSpec::make("https://example.org/standard/bench", std::move(specs));
}

template <class F>
double time_seconds(F&& body) {
    const auto start = std::chrono::steady_clock::now();
    body();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

int main(int argc, char** argv) {
    const std::size_t records = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20000;
    const std::size_t features = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 16;
    const int thread_cap = argc > 3 ? std::atoi(argv[3]) : odq::max_threads();

    const Dataset dataset = synthetic_dataset(records, features);
    const StandardSpec spec = synthetic_spec(features);
    fmt::print("dataset: {} records x {} features ({} values)\n\n", records, features,
               records * features);

    reference::ReferenceScores oracle;
    const double serial_seconds =
        time_seconds([&] { oracle = reference::assess_reference(dataset, spec); });
    fmt::print("{:<26}{:>10.3f} s   (baseline)\n", "serial reference", serial_seconds);

    bool all_match = true;
    for (int threads = 1; threads <= thread_cap; threads *= 2) {
        QualityReport report;
        const double seconds =
            time_seconds([&] { report = assess(dataset, spec, {}, "bench", threads); });
        const bool match =
            std::abs(*report.result(Dimension::TypeConsistency).score -
                     *oracle.type_consistency) <= 1e-9 &&
            std::abs(*report.result(Dimension::DataCompleteness).score -
                     *oracle.data_completeness) <= 1e-9;
        all_match = all_match && match;
        fmt::print("{:<26}{:>10.3f} s   speedup {:>5.2f}x   scores {}\n",
                   fmt::format("engine, {} thread(s)", threads), seconds,
                   serial_seconds / seconds, match ? "match" : "DIVERGE");
    }
    return all_match ? 0 : 1;
}
