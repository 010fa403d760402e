#pragma once

#include <optional>

#include "odq/standard.hpp"
#include "odq/value.hpp"

namespace odq::reference {

struct ReferenceScores {
    std::optional<double> file_format;
    std::optional<double> schema_accuracy;
    std::optional<double> schema_completeness;
    std::optional<double> type_consistency;
    std::optional<double> data_completeness;
};

/// Serial reference implementation of the five dimension scores, written as
/// straight-line loops that recompute weights, type sets and null counts
/// from scratch. It shares only the value types and single-value type
/// inference with the engine, and exists so tests and the benchmark can
/// check the engine against an independent computation path.
ReferenceScores assess_reference(const Dataset& dataset, const StandardSpec& spec,
                                 const AliasMap& alias = {});

} // namespace odq::reference
