#include "odq/standard.hpp"

#include <numeric>
#include <utility>

#include "json.hpp"

namespace odq {

StandardSpec StandardSpec::make(std::string standard_iri, std::vector<FeatureSpec> features) {
    StandardSpec spec;
    spec.iri_ = std::move(standard_iri);
    spec.features_ = std::move(features);
    for (const auto& feature : spec.features_) {
        if (!spec.all_.insert(feature.path).second)
            throw ValidationError("duplicate feature path '" + feature.path.str() +
                                  "' in standard");
        if (feature.obligation == Obligation::Mandatory) {
            spec.mandatory_.insert(feature.path);
            ++spec.mandatory_count_;
        }
    }
    if (spec.mandatory_count_ == 0)
        throw ValidationError("standard defines no mandatory feature");
    return spec;
}

double WeightTable::at(const FeaturePath& path) const {
    auto it = weights.find(path);
    return it == weights.end() ? 0.0 : it->second;
}

double WeightTable::sum() const {
    return std::accumulate(weights.begin(), weights.end(), 0.0,
                           [](double acc, const auto& entry) { return acc + entry.second; });
}

namespace {

nlohmann::json parse_json_document(std::string_view document, const char* what) {
    try {
        return nlohmann::json::parse(document);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string(what) + ": " + e.what());
    }
}

} // namespace

StandardSpec load_standard(std::string_view document) {
    const auto doc = parse_json_document(document, "standard spec");
    if (!doc.is_object() || !doc.contains("standard_iri") || !doc.contains("features"))
        throw ParseError("standard spec: expected object with 'standard_iri' and 'features'");
    if (!doc["standard_iri"].is_string())
        throw ParseError("standard spec: 'standard_iri' must be a string");
    if (!doc["features"].is_array())
        throw ParseError("standard spec: 'features' must be an array");

    std::vector<FeatureSpec> features;
    for (const auto& item : doc["features"]) {
        if (!item.is_object() || !item.contains("path") || !item.contains("obligation") ||
            !item["path"].is_string() || !item["obligation"].is_string())
            throw ParseError("standard spec: each feature needs string 'path' and 'obligation'");
        const std::string obligation = item["obligation"].get<std::string>();
        Obligation parsed;
        if (obligation == "mandatory")
            parsed = Obligation::Mandatory;
        else if (obligation == "optional")
            parsed = Obligation::Optional;
        else
            throw ParseError("standard spec: obligation must be 'mandatory' or 'optional', got '" +
                             obligation + "'");
        features.push_back({FeaturePath::parse(item["path"].get<std::string>()), parsed});
    }
    return StandardSpec::make(doc["standard_iri"].get<std::string>(), std::move(features));
}

AliasMap load_alias_map(std::string_view document) {
    const auto doc = parse_json_document(document, "alias map");
    if (!doc.is_object() || !doc.contains("aliases") || !doc["aliases"].is_object())
        throw ParseError("alias map: expected object with an 'aliases' object");
    AliasMap alias;
    for (const auto& [key, value] : doc["aliases"].items()) {
        if (!value.is_string())
            throw ParseError("alias map: target for '" + key + "' must be a string");
        alias.entries.emplace(FeaturePath::parse(key),
                              FeaturePath::parse(value.get<std::string>()));
    }
    return alias;
}

namespace {

// Shared by the standard-level and dataset-local derivations: both reduce to
// point masses per obligation class over the counted features.
WeightTable weights_for(const std::vector<FeaturePath>& mandatory,
                        const std::vector<FeaturePath>& optional) {
    const auto n_mf = static_cast<double>(mandatory.size());
    const auto n_of = static_cast<double>(optional.size());

    double mandatory_weight = 0.0;
    double optional_weight = 0.0;
    if (!mandatory.empty() && !optional.empty()) {
        mandatory_weight = 100.0 / (n_mf + 1.0);
        optional_weight = mandatory_weight / n_of;
    } else if (!mandatory.empty()) {
        mandatory_weight = 100.0 / n_mf;
    } else {
        optional_weight = 100.0 / n_of;
    }

    WeightTable table;
    for (const auto& path : mandatory)
        table.weights.emplace(path, mandatory_weight);
    for (const auto& path : optional)
        table.weights.emplace(path, optional_weight);
    return table;
}

} // namespace

WeightTable spec_weights(const StandardSpec& spec) {
    std::vector<FeaturePath> mandatory;
    std::vector<FeaturePath> optional;
    for (const auto& feature : spec.features()) {
        if (feature.obligation == Obligation::Mandatory)
            mandatory.push_back(feature.path);
        else
            optional.push_back(feature.path);
    }
    return weights_for(mandatory, optional);
}

WeightTable local_weights(const std::set<FeaturePath>& present, const StandardSpec& spec) {
    if (present.empty())
        throw EmptyFeatureSetError("cannot derive weights for an empty feature set");
    std::vector<FeaturePath> mandatory;
    std::vector<FeaturePath> optional;
    for (const auto& path : present) {
        if (spec.is_mandatory(path))
            mandatory.push_back(path);
        else
            optional.push_back(path);
    }
    return weights_for(mandatory, optional);
}

std::set<FeaturePath> apply_alias(const AliasMap& alias, const std::set<FeaturePath>& paths) {
    std::map<FeaturePath, FeaturePath> mapped_from; // target -> first aliased source
    std::set<FeaturePath> out;
    for (const auto& path : paths) {
        auto it = alias.entries.find(path);
        if (it == alias.entries.end()) {
            out.insert(path);
            continue;
        }
        auto [pos, inserted] = mapped_from.emplace(it->second, path);
        if (!inserted)
            throw AliasCollisionError("aliases '" + pos->second.str() + "' and '" + path.str() +
                                      "' both map to '" + it->second.str() + "'");
        out.insert(it->second);
    }
    return out;
}

} // namespace odq
