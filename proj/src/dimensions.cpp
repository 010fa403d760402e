#include "odq/dimensions.hpp"

#include <cmath>

#include "odq/errors.hpp"
#include "odq/ingest.hpp"

namespace odq {

std::string_view to_string(Dimension dimension) {
    switch (dimension) {
    case Dimension::FileFormat: return "file_format";
    case Dimension::SchemaAccuracy: return "schema_accuracy";
    case Dimension::SchemaCompleteness: return "schema_completeness";
    case Dimension::TypeConsistency: return "data_type_consistency";
    case Dimension::DataCompleteness: return "data_completeness";
    }
    return "file_format";
}

double score_file_format(FileFormat format) {
    switch (format) {
    case FileFormat::Json:
    case FileFormat::JsonLd:
    case FileFormat::GeoJson:
        return 100.0;
    case FileFormat::Xml:
    case FileFormat::Gml:
    case FileFormat::Kml:
    case FileFormat::Rdf:
        return 75.0;
    case FileFormat::Csv:
        return 50.0;
    case FileFormat::Xls:
    case FileFormat::Xlsx:
        return 25.0;
    case FileFormat::Pdf:
    case FileFormat::Txt:
    case FileFormat::Unknown:
        return 0.0;
    }
    return 0.0;
}

namespace {

// Shared by the two schema dimensions: award each standard feature its
// weight when its name appears in the (possibly alias-translated) set.
DimensionResult score_name_presence(Dimension dimension, const StandardSpec& spec,
                                    const std::set<FeaturePath>& names) {
    const WeightTable weights = spec_weights(spec);
    DimensionResult result;
    result.dimension = dimension;
    double total = 0.0;
    for (const auto& feature : spec.features()) {
        FeatureContribution contribution;
        contribution.path = feature.path;
        contribution.weight = weights.at(feature.path);
        const bool present = names.count(feature.path) > 0;
        contribution.ratio = present ? 1.0 : 0.0;
        contribution.detail = present ? "present" : "missing";
        total += contribution.points();
        result.per_feature.push_back(std::move(contribution));
    }
    result.score = total;
    return result;
}

} // namespace

DimensionResult score_schema_accuracy(const Dataset& dataset, const StandardSpec& spec) {
    return score_name_presence(Dimension::SchemaAccuracy, spec, present_paths(dataset));
}

DimensionResult score_schema_completeness(const Dataset& dataset, const AliasMap& alias,
                                          const StandardSpec& spec) {
    return score_name_presence(Dimension::SchemaCompleteness, spec,
                               apply_alias(alias, present_paths(dataset)));
}

namespace {

std::vector<TypeProfile> profiles_or_throw(const Dataset& dataset, int threads) {
    if (dataset.record_count == 0)
        throw EmptyDatasetError("value-level dimensions need at least one record");
    if (dataset.columns.empty())
        throw EmptyDatasetError("value-level dimensions need at least one feature");
    return profile_columns(dataset, threads);
}

DimensionResult type_consistency_from_profiles(const std::vector<TypeProfile>& profiles,
                                               const StandardSpec& spec) {
    std::set<FeaturePath> present;
    for (const auto& profile : profiles)
        present.insert(profile.path);
    const WeightTable weights = local_weights(present, spec);

    DimensionResult result;
    result.dimension = Dimension::TypeConsistency;
    double total = 0.0;
    for (const auto& profile : profiles) {
        FeatureContribution contribution;
        contribution.path = profile.path;
        contribution.weight = weights.at(profile.path);
        contribution.ratio = 1.0 / static_cast<double>(profile.type_count());
        std::string types;
        for (const DataType type : profile.distinct_types) {
            if (!types.empty())
                types += ", ";
            types += to_string(type);
        }
        contribution.detail = std::to_string(profile.type_count()) + " type(s): " + types;
        total += contribution.points();
        result.per_feature.push_back(std::move(contribution));
    }
    result.score = total;
    return result;
}

DimensionResult data_completeness_from_profiles(const std::vector<TypeProfile>& profiles,
                                                const StandardSpec& spec) {
    std::set<FeaturePath> present;
    for (const auto& profile : profiles)
        present.insert(profile.path);
    const WeightTable weights = local_weights(present, spec);

    DimensionResult result;
    result.dimension = Dimension::DataCompleteness;
    double total = 0.0;
    for (const auto& profile : profiles) {
        FeatureContribution contribution;
        contribution.path = profile.path;
        contribution.weight = weights.at(profile.path);
        const std::size_t non_null = profile.value_count - profile.null_count;
        contribution.ratio =
            static_cast<double>(non_null) / static_cast<double>(profile.value_count);
        contribution.detail = std::to_string(non_null) + "/" +
                              std::to_string(profile.value_count) + " non-null";
        total += contribution.points();
        result.per_feature.push_back(std::move(contribution));
    }
    result.score = total;
    return result;
}

} // namespace

DimensionResult score_type_consistency(const Dataset& dataset, const StandardSpec& spec) {
    return type_consistency_from_profiles(profiles_or_throw(dataset, 1), spec);
}

DimensionResult score_data_completeness(const Dataset& dataset, const StandardSpec& spec) {
    return data_completeness_from_profiles(profiles_or_throw(dataset, 1), spec);
}

QualityReport assess(const Dataset& dataset, const StandardSpec& spec, const AliasMap& alias,
                     const std::string& dataset_id, int threads) {
    QualityReport report;
    report.dataset_id = dataset_id;

    DimensionResult format_result;
    format_result.dimension = Dimension::FileFormat;
    format_result.score = score_file_format(dataset.source_format);
    format_result.note = std::string(to_string(dataset.source_format));
    report.results[0] = std::move(format_result);

    report.results[1] = score_schema_accuracy(dataset, spec);
    report.results[2] = score_schema_completeness(dataset, alias, spec);

    if (dataset.record_count == 0 || dataset.columns.empty()) {
        for (const Dimension dimension :
             {Dimension::TypeConsistency, Dimension::DataCompleteness}) {
            DimensionResult skipped;
            skipped.dimension = dimension;
            skipped.note = "not computed: empty dataset";
            report.results[static_cast<std::size_t>(dimension)] = std::move(skipped);
        }
        return report;
    }

    const std::vector<TypeProfile> profiles = profile_columns(dataset, threads);
    report.results[3] = type_consistency_from_profiles(profiles, spec);
    report.results[4] = data_completeness_from_profiles(profiles, spec);
    return report;
}

double round_half_up(double value, int decimals) {
    double scale = 1.0;
    for (int i = 0; i < decimals; ++i)
        scale *= 10.0;
    return std::floor(value * scale + 0.5) / scale;
}

} // namespace odq
