#pragma once

// Seeded random model generators shared by the property tests and the
// acceptance suite.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "odq/standard.hpp"
#include "odq/value.hpp"

namespace odq::testgen {

struct Rng {
    std::mt19937 eng;
    explicit Rng(std::uint32_t seed) : eng(seed) {}

    int below(int n) { return std::uniform_int_distribution<int>(0, n - 1)(eng); }
    std::size_t index(std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(eng);
    }
    double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(eng); }
    bool chance(double p) { return unit() < p; }

    template <class T>
    const T& pick(const std::vector<T>& pool) {
        return pool[index(pool.size())];
    }
};

inline const std::vector<std::string>& name_pool() {
    static const std::vector<std::string> pool = {
        "@context",    "název",          "popis",     "typ",       "web",
        "e-mail",      "telefon",        "adresa",    "umístění",  "umístění.adresa",
        "umístění.psč", "vstupné",       "kapacita",  "otevřeno",  "geometry.coordinates",
        "geometry.typ", "properties.id", "location",  "name",      "description",
        "category",    "opening_hours",  "price",     "contact",   "souřadnice",
        "poznámka",    "bezbariérovost", "jazyky",    "fotografie", "odkaz",
    };
    return pool;
}

/// `count` distinct paths: pool names first, synthetic `pole<N>` beyond.
inline std::vector<FeaturePath> sample_paths(Rng& rng, std::size_t count) {
    std::vector<std::string> names = name_pool();
    std::shuffle(names.begin(), names.end(), rng.eng);
    std::vector<FeaturePath> paths;
    for (std::size_t i = 0; i < count; ++i) {
        if (i < names.size())
            paths.push_back(FeaturePath::parse(names[i]));
        else
            paths.push_back(FeaturePath::parse("pole" + std::to_string(i)));
    }
    return paths;
}

inline StandardSpec random_spec(Rng& rng, int max_mandatory = 4, int max_optional = 6) {
    const int n_mandatory = 1 + rng.below(max_mandatory);
    const int n_optional = rng.below(max_optional + 1);
    const auto paths = sample_paths(rng, static_cast<std::size_t>(n_mandatory + n_optional));
    std::vector<FeatureSpec> features;
    for (int i = 0; i < n_mandatory + n_optional; ++i)
        features.push_back({paths[static_cast<std::size_t>(i)],
                            i < n_mandatory ? Obligation::Mandatory : Obligation::Optional});
    return StandardSpec::make("https://example.org/standard/random", std::move(features));
}

/// Text pools covering all ten inferred types.
inline Value random_text_value(Rng& rng) {
    static const std::vector<std::string> texts = {
        "https://example.org/a", "ftp://files.example.org/x.csv",
        "info@example.org",      "jan.novak@mesto.cz",
        "Hlavní 12",             "Náměstí Svobody 8",
        "POINT (16.6068 49.1951)", "POINT(14 50)",
        "+420 123 456 789",      "777123456",
        "42",                    "-7",
        "3.14",                  "1e5",
        "true",                  "FALSE",
        "Hrad Špilberk",         "zámek",
        "text s mezerami",       "120 Kč",
        "",                      "   ",
    };
    return Value::text(rng.pick(texts));
}

inline Value random_value(Rng& rng) {
    switch (rng.below(8)) {
    case 0: return Value::null();
    case 1: return Value::boolean(rng.chance(0.5));
    case 2: return Value::integer(rng.below(100000));
    case 3: return Value::real(rng.unit() * 1000.0);
    default: return random_text_value(rng);
    }
}

/// Column whose values are drawn from one narrow generator (usually one
/// type) or, with some probability, a deliberately mixed one.
inline std::vector<Value> random_column_values(Rng& rng, std::size_t records) {
    std::vector<Value> values;
    values.reserve(records);
    const bool mixed = rng.chance(0.35);
    const double null_share = rng.chance(0.5) ? rng.unit() * 0.5 : 0.0;
    const Value base = random_value(rng);
    for (std::size_t r = 0; r < records; ++r) {
        if (rng.chance(null_share)) {
            values.push_back(Value::null());
            continue;
        }
        values.push_back(mixed ? random_value(rng) : base);
    }
    return values;
}

inline const std::vector<FileFormat>& all_formats() {
    static const std::vector<FileFormat> formats = {
        FileFormat::Json, FileFormat::JsonLd, FileFormat::GeoJson, FileFormat::Xml,
        FileFormat::Gml,  FileFormat::Kml,    FileFormat::Rdf,     FileFormat::Csv,
        FileFormat::Xls,  FileFormat::Xlsx,   FileFormat::Pdf,     FileFormat::Txt,
        FileFormat::Unknown,
    };
    return formats;
}

/// Dataset sharing a random subset of the standard's feature names plus
/// extra names of its own. May have zero records.
inline Dataset random_dataset(Rng& rng, const StandardSpec& spec, int max_features = 10,
                              int max_records = 20, int min_records = 1) {
    Dataset dataset;
    dataset.source_format = rng.pick(all_formats());
    dataset.record_count = static_cast<std::size_t>(
        min_records + rng.below(max_records - min_records + 1));

    std::vector<FeaturePath> candidates;
    for (const auto& feature : spec.features())
        if (rng.chance(0.5))
            candidates.push_back(feature.path);
    const auto extras = sample_paths(rng, static_cast<std::size_t>(2 + rng.below(6)));
    for (const auto& path : extras)
        if (!spec.contains(path) && rng.chance(0.6))
            candidates.push_back(path);

    std::shuffle(candidates.begin(), candidates.end(), rng.eng);
    if (candidates.size() > static_cast<std::size_t>(max_features))
        candidates.resize(static_cast<std::size_t>(max_features));

    for (const auto& path : candidates)
        dataset.columns.emplace(
            path, FeatureColumn{path, random_column_values(rng, dataset.record_count)});
    return dataset;
}

/// Alias map from non-standard dataset paths onto distinct standard paths.
inline AliasMap random_alias(Rng& rng, const StandardSpec& spec, const Dataset& dataset) {
    AliasMap alias;
    std::vector<FeaturePath> targets;
    for (const auto& feature : spec.features())
        targets.push_back(feature.path);
    std::shuffle(targets.begin(), targets.end(), rng.eng);
    std::size_t next_target = 0;
    for (const auto& [path, column] : dataset.columns) {
        if (spec.contains(path) || next_target >= targets.size() || !rng.chance(0.4))
            continue;
        alias.entries.emplace(path, targets[next_target++]);
    }
    return alias;
}

inline Dataset permute_records(const Dataset& dataset, Rng& rng) {
    std::vector<std::size_t> order(dataset.record_count);
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::shuffle(order.begin(), order.end(), rng.eng);

    Dataset permuted;
    permuted.record_count = dataset.record_count;
    permuted.source_format = dataset.source_format;
    for (const auto& [path, column] : dataset.columns) {
        FeatureColumn shuffled{path, {}};
        shuffled.values.reserve(column.values.size());
        for (const std::size_t i : order)
            shuffled.values.push_back(column.values[i]);
        permuted.columns.emplace(path, std::move(shuffled));
    }
    return permuted;
}

inline Dataset rename_column(const Dataset& dataset, const FeaturePath& from,
                             const FeaturePath& to) {
    Dataset renamed;
    renamed.record_count = dataset.record_count;
    renamed.source_format = dataset.source_format;
    for (const auto& [path, column] : dataset.columns) {
        const FeaturePath& key = (path == from) ? to : path;
        renamed.columns.emplace(key, FeatureColumn{key, column.values});
    }
    return renamed;
}

} // namespace odq::testgen
