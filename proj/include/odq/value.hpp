#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "odq/feature_path.hpp"

namespace odq {

/// Distribution file formats the engine can score (not all of them parse).
enum class FileFormat {
    Json,
    JsonLd,
    GeoJson,
    Xml,
    Gml,
    Kml,
    Rdf,
    Csv,
    Xls,
    Xlsx,
    Pdf,
    Txt,
    Unknown,
};

std::string_view to_string(FileFormat format);

/// Lenient tag parser for CLI hints and manifest entries: case-insensitive,
/// `-` and `_` interchangeable (`json-ld` == `JSON_LD`).
std::optional<FileFormat> file_format_from_string(std::string_view tag);

/// Raw scalar as produced by ingestion. Empty text is allowed here; whether
/// it counts as null is decided by the type system.
class Value {
public:
    enum class Kind { Null, Bool, Integer, Float, Text };

    Value() : v_(std::monostate{}) {}

    static Value null() { return Value(); }
    static Value boolean(bool b) { return Value(Repr(b)); }
    static Value integer(std::int64_t i) { return Value(Repr(i)); }
    static Value real(double d) { return Value(Repr(d)); }
    static Value text(std::string s) { return Value(Repr(std::move(s))); }

    Kind kind() const noexcept { return static_cast<Kind>(v_.index()); }

    bool as_bool() const { return std::get<bool>(v_); }
    std::int64_t as_integer() const { return std::get<std::int64_t>(v_); }
    double as_real() const { return std::get<double>(v_); }
    const std::string& as_text() const { return std::get<std::string>(v_); }

    /// Textual form used when array elements are joined into one value.
    std::string render() const;

    friend bool operator==(const Value& a, const Value& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }

private:
    using Repr = std::variant<std::monostate, bool, std::int64_t, double, std::string>;
    explicit Value(Repr repr) : v_(std::move(repr)) {}

    Repr v_;
};

/// One value slot per record; slots for records that lack the feature hold Null.
struct FeatureColumn {
    FeaturePath path;
    std::vector<Value> values;

    friend bool operator==(const FeatureColumn& a, const FeatureColumn& b) {
        return a.path == b.path && a.values == b.values;
    }
};

/// Column-oriented view of a parsed distribution.
struct Dataset {
    std::size_t record_count = 0;
    std::map<FeaturePath, FeatureColumn> columns;
    FileFormat source_format = FileFormat::Unknown;

    friend bool operator==(const Dataset& a, const Dataset& b) {
        return a.record_count == b.record_count && a.source_format == b.source_format &&
               a.columns == b.columns;
    }

    /// Equality that ignores the source format (used when comparing a dataset
    /// against its canonical JSON re-parse).
    bool content_equals(const Dataset& other) const {
        return record_count == other.record_count && columns == other.columns;
    }
};

} // namespace odq
