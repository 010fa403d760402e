#include "odq/reference.hpp"

#include <map>
#include <set>
#include <vector>

#include "odq/typesys.hpp"

namespace odq::reference {

namespace {

// Weight of one feature, recomputed directly from the counts each time.
double weight_of(bool mandatory, std::size_t n_mandatory, std::size_t n_optional) {
    if (mandatory) {
        if (n_optional == 0)
            return 100.0 / static_cast<double>(n_mandatory);
        return 100.0 / (static_cast<double>(n_mandatory) + 1.0);
    }
    if (n_mandatory == 0)
        return 100.0 / static_cast<double>(n_optional);
    return (100.0 / (static_cast<double>(n_mandatory) + 1.0)) /
           static_cast<double>(n_optional);
}

std::set<FeaturePath> dataset_names(const Dataset& dataset) {
    std::set<FeaturePath> names;
    for (const auto& [path, column] : dataset.columns)
        names.insert(path);
    return names;
}

double name_presence_score(const StandardSpec& spec, const std::set<FeaturePath>& names) {
    std::size_t n_mandatory = 0;
    std::size_t n_optional = 0;
    for (const auto& feature : spec.features()) {
        if (feature.obligation == Obligation::Mandatory)
            ++n_mandatory;
        else
            ++n_optional;
    }
    double score = 0.0;
    for (const auto& feature : spec.features()) {
        if (names.count(feature.path) == 0)
            continue;
        score += weight_of(feature.obligation == Obligation::Mandatory, n_mandatory, n_optional);
    }
    return score;
}

} // namespace

ReferenceScores assess_reference(const Dataset& dataset, const StandardSpec& spec,
                                 const AliasMap& alias) {
    ReferenceScores scores;

    switch (dataset.source_format) {
    case FileFormat::Json:
    case FileFormat::JsonLd:
    case FileFormat::GeoJson: scores.file_format = 100.0; break;
    case FileFormat::Xml:
    case FileFormat::Gml:
    case FileFormat::Kml:
    case FileFormat::Rdf: scores.file_format = 75.0; break;
    case FileFormat::Csv: scores.file_format = 50.0; break;
    case FileFormat::Xls:
    case FileFormat::Xlsx: scores.file_format = 25.0; break;
    default: scores.file_format = 0.0; break;
    }

    const std::set<FeaturePath> names = dataset_names(dataset);
    scores.schema_accuracy = name_presence_score(spec, names);
    scores.schema_completeness = name_presence_score(spec, apply_alias(alias, names));

    if (dataset.record_count == 0 || dataset.columns.empty())
        return scores;

    // Dataset-local obligation split.
    std::size_t local_mandatory = 0;
    for (const auto& path : names)
        if (spec.is_mandatory(path))
            ++local_mandatory;
    const std::size_t local_optional = names.size() - local_mandatory;

    double consistency = 0.0;
    double completeness = 0.0;
    for (const auto& [path, column] : dataset.columns) {
        std::set<DataType> types;
        std::size_t nulls = 0;
        for (const auto& value : column.values) {
            const DataType type = infer_type(value);
            types.insert(type);
            if (type == DataType::Null)
                ++nulls;
        }
        const double weight =
            weight_of(spec.is_mandatory(path), local_mandatory, local_optional);
        consistency += weight / static_cast<double>(types.size());
        completeness += weight *
                        (static_cast<double>(column.values.size() - nulls) /
                         static_cast<double>(column.values.size()));
    }
    scores.type_consistency = consistency;
    scores.data_completeness = completeness;
    return scores;
}

} // namespace odq::reference
