#pragma once

#include <cstddef>
#include <set>
#include <string_view>
#include <vector>

#include "odq/value.hpp"

namespace odq {

/// The ten recognized data types: the five primitives plus five semantic
/// types inferred from text content.
enum class DataType {
    Integer,
    Float,
    Bool,
    String,
    Null,
    Url,
    Email,
    Address,
    Point,
    PhoneNumber,
};

std::string_view to_string(DataType type);

/// Per-feature value statistics feeding the consistency and completeness
/// dimensions.
struct TypeProfile {
    FeaturePath path;
    std::set<DataType> distinct_types;
    std::size_t null_count = 0;
    std::size_t value_count = 0;

    std::size_t type_count() const noexcept { return distinct_types.size(); }
};

/// Deterministic, total type inference. Null and empty/whitespace-only text
/// infer Null; native bool/integer/float kinds pass through; any other text
/// is matched against the recognizers in fixed precedence order
///   Url > Email > Point > PhoneNumber > Address > integer > float > bool
/// over the whitespace-trimmed value, and falls back to String.
DataType infer_type(const Value& value);

/// Profiles one column. Throws EmptyColumnError for a column with zero slots
/// (only possible in a dataset without records).
TypeProfile profile_column(const FeatureColumn& column);

/// Profiles every column of a dataset, in column (path) order. This is the
/// hot loop of an assessment: with threads > 1 columns are profiled on an
/// OpenMP team.
std::vector<TypeProfile> profile_columns(const Dataset& dataset, int threads = 1);

} // namespace odq
