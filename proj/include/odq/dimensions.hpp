#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "odq/standard.hpp"
#include "odq/typesys.hpp"
#include "odq/value.hpp"

namespace odq {

/// The five assessed quality dimensions. Scores stay separate; they are
/// never combined into one number.
enum class Dimension {
    FileFormat,
    SchemaAccuracy,
    SchemaCompleteness,
    TypeConsistency,
    DataCompleteness,
};

inline constexpr std::array<Dimension, 5> kAllDimensions = {
    Dimension::FileFormat,     Dimension::SchemaAccuracy, Dimension::SchemaCompleteness,
    Dimension::TypeConsistency, Dimension::DataCompleteness,
};

std::string_view to_string(Dimension dimension);

/// One feature's contribution to a dimension score: `weight * ratio` points.
/// The ratio is the match indicator for the schema dimensions, 1/t for type
/// consistency, and the non-null share for data completeness.
struct FeatureContribution {
    FeaturePath path;
    double weight = 0.0;
    double ratio = 0.0;
    std::string detail;

    double points() const noexcept { return weight * ratio; }
};

struct DimensionResult {
    Dimension dimension = Dimension::FileFormat;
    std::optional<double> score; // 0..100; empty when not computed
    std::string note;            // e.g. "not computed: empty dataset"
    std::vector<FeatureContribution> per_feature;

    bool computed() const noexcept { return score.has_value(); }
};

/// Five dimension results for one dataset, in kAllDimensions order.
struct QualityReport {
    std::string dataset_id;
    std::array<DimensionResult, 5> results;

    const DimensionResult& result(Dimension dimension) const {
        return results[static_cast<std::size_t>(dimension)];
    }
};

/// Points awarded for the distribution format alone.
double score_file_format(FileFormat format);

/// Share of the standard's features present under their exact names (Eq. over
/// standard weights; byte-wise name comparison).
DimensionResult score_schema_accuracy(const Dataset& dataset, const StandardSpec& spec);

/// Like schema accuracy, but dataset names are first translated through the
/// alias map, crediting features that carry the expected information under a
/// different name.
DimensionResult score_schema_completeness(const Dataset& dataset, const AliasMap& alias,
                                          const StandardSpec& spec);

/// Weighted sum of 1/t over the provided features, t being the number of
/// distinct value types within a feature. Uses dataset-local weights.
/// Throws EmptyDatasetError when the dataset has no records (or no features).
DimensionResult score_type_consistency(const Dataset& dataset, const StandardSpec& spec);

/// Weighted ratio of non-null values per provided feature, with dataset-local
/// weights. Throws EmptyDatasetError when the dataset has no records (or no
/// features).
DimensionResult score_data_completeness(const Dataset& dataset, const StandardSpec& spec);

/// Runs all five scorers. On a dataset without records (or without features)
/// the two value-level dimensions are reported as not computed instead of
/// failing the report. `threads` parallelizes column profiling.
QualityReport assess(const Dataset& dataset, const StandardSpec& spec,
                     const AliasMap& alias = {}, const std::string& dataset_id = "",
                     int threads = 1);

/// Report rounding: half-up at the given number of decimals (scores are
/// non-negative).
double round_half_up(double value, int decimals = 2);

} // namespace odq
