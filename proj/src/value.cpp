#include "odq/value.hpp"

#include <array>
#include <charconv>
#include <cstdio>

namespace odq {

std::string_view to_string(FileFormat format) {
    switch (format) {
    case FileFormat::Json: return "JSON";
    case FileFormat::JsonLd: return "JSON-LD";
    case FileFormat::GeoJson: return "GEOJSON";
    case FileFormat::Xml: return "XML";
    case FileFormat::Gml: return "GML";
    case FileFormat::Kml: return "KML";
    case FileFormat::Rdf: return "RDF";
    case FileFormat::Csv: return "CSV";
    case FileFormat::Xls: return "XLS";
    case FileFormat::Xlsx: return "XLSX";
    case FileFormat::Pdf: return "PDF";
    case FileFormat::Txt: return "TXT";
    case FileFormat::Unknown: return "Unknown";
    }
    return "Unknown";
}

std::optional<FileFormat> file_format_from_string(std::string_view tag) {
    std::string normalized;
    normalized.reserve(tag.size());
    for (char c : tag) {
        if (c == '-')
            c = '_';
        if (c >= 'a' && c <= 'z')
            c = static_cast<char>(c - 'a' + 'A');
        normalized.push_back(c);
    }
    if (normalized == "JSON") return FileFormat::Json;
    if (normalized == "JSON_LD" || normalized == "JSONLD") return FileFormat::JsonLd;
    if (normalized == "GEOJSON") return FileFormat::GeoJson;
    if (normalized == "XML") return FileFormat::Xml;
    if (normalized == "GML") return FileFormat::Gml;
    if (normalized == "KML") return FileFormat::Kml;
    if (normalized == "RDF") return FileFormat::Rdf;
    if (normalized == "CSV") return FileFormat::Csv;
    if (normalized == "XLS") return FileFormat::Xls;
    if (normalized == "XLSX") return FileFormat::Xlsx;
    if (normalized == "PDF") return FileFormat::Pdf;
    if (normalized == "TXT") return FileFormat::Txt;
    if (normalized == "UNKNOWN") return FileFormat::Unknown;
    return std::nullopt;
}

std::string Value::render() const {
    switch (kind()) {
    case Kind::Null:
        return "";
    case Kind::Bool:
        return as_bool() ? "true" : "false";
    case Kind::Integer:
        return std::to_string(as_integer());
    case Kind::Float: {
        std::array<char, 32> buf{};
        auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), as_real());
        if (ec != std::errc{})
            return "0";
        return std::string(buf.data(), end);
    }
    case Kind::Text:
        return as_text();
    }
    return "";
}

} // namespace odq
