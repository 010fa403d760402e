#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "odq/feature_path.hpp"

namespace odq {

enum class Obligation { Mandatory, Optional };

struct FeatureSpec {
    FeaturePath path;
    Obligation obligation = Obligation::Mandatory;
};

/// Machine-readable feature standard: an identifier plus the mandatory and
/// optional feature paths a conforming dataset is expected to carry.
class StandardSpec {
public:
    /// Validates uniqueness of paths and the presence of at least one
    /// mandatory feature; throws ValidationError otherwise.
    static StandardSpec make(std::string standard_iri, std::vector<FeatureSpec> features);

    const std::string& standard_iri() const noexcept { return iri_; }
    const std::vector<FeatureSpec>& features() const noexcept { return features_; }

    std::size_t mandatory_count() const noexcept { return mandatory_count_; }
    std::size_t optional_count() const noexcept { return features_.size() - mandatory_count_; }

    bool is_mandatory(const FeaturePath& path) const { return mandatory_.count(path) > 0; }
    bool contains(const FeaturePath& path) const { return all_.count(path) > 0; }

private:
    StandardSpec() = default;

    std::string iri_;
    std::vector<FeatureSpec> features_;
    std::set<FeaturePath> mandatory_;
    std::set<FeaturePath> all_;
    std::size_t mandatory_count_ = 0;
};

/// Per-feature weights in points. For any valid derivation the weights sum
/// to 100 and no optional feature outweighs a mandatory one.
struct WeightTable {
    std::map<FeaturePath, double> weights;

    double at(const FeaturePath& path) const;
    double sum() const;
};

/// Dataset-side to standard-side renaming, mechanizing the manual step of
/// matching semantically equivalent features. Collisions between two
/// co-occurring keys are detected when the map is applied.
struct AliasMap {
    std::map<FeaturePath, FeaturePath> entries;
};

/// Loads a standard from its JSON document form:
///   { "standard_iri": "...", "features": [ { "path": "...",
///     "obligation": "mandatory"|"optional" }, ... ] }
StandardSpec load_standard(std::string_view document);

/// Loads an alias map from `{ "aliases": { "<dataset path>": "<standard path>" } }`.
AliasMap load_alias_map(std::string_view document);

/// Weights over the standard's own feature set. Each mandatory feature gets
/// 100/(N_mf+1); the mandatory share is then split evenly across the optional
/// features. A standard without optional features splits 100 evenly across
/// the mandatory ones.
WeightTable spec_weights(const StandardSpec& spec);

/// Weights over the features a dataset actually provides: standard-mandatory
/// paths that are present keep mandatory weighting, every other present path
/// is weighted as optional, and absent standard features get no entry.
/// Throws EmptyFeatureSetError when `present` is empty.
WeightTable local_weights(const std::set<FeaturePath>& present, const StandardSpec& spec);

/// Replaces each path by its alias target when one exists. Throws
/// AliasCollisionError if two distinct present paths are mapped onto the
/// same target.
std::set<FeaturePath> apply_alias(const AliasMap& alias, const std::set<FeaturePath>& paths);

} // namespace odq
