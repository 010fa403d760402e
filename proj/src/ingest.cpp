#include "odq/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <regex>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "odq/errors.hpp"
#include "ingest_internal.hpp"
#include "xml_parser.hpp"

namespace odq {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;
using detail::DatasetBuilder;
using detail::XmlElement;

std::string lowercase(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string_view strip_bom(std::string_view s) {
    if (s.substr(0, 3) == "\xEF\xBB\xBF")
        s.remove_prefix(3);
    return s;
}

const std::unordered_map<std::string, FileFormat>& media_type_map() {
    static const std::unordered_map<std::string, FileFormat> map = {
        {"application/json", FileFormat::Json},
        {"application/ld+json", FileFormat::JsonLd},
        {"application/geo+json", FileFormat::GeoJson},
        {"application/vnd.geo+json", FileFormat::GeoJson},
        {"application/xml", FileFormat::Xml},
        {"text/xml", FileFormat::Xml},
        {"application/gml+xml", FileFormat::Gml},
        {"application/vnd.google-earth.kml+xml", FileFormat::Kml},
        {"application/rdf+xml", FileFormat::Rdf},
        {"text/turtle", FileFormat::Rdf},
        {"application/n-triples", FileFormat::Rdf},
        {"text/csv", FileFormat::Csv},
        {"application/csv", FileFormat::Csv},
        {"application/vnd.ms-excel", FileFormat::Xls},
        {"application/vnd.openxmlformats-officedocument.spreadsheetml.sheet", FileFormat::Xlsx},
        {"application/pdf", FileFormat::Pdf},
        {"text/plain", FileFormat::Txt},
    };
    return map;
}

const std::unordered_map<std::string, FileFormat>& extension_map() {
    static const std::unordered_map<std::string, FileFormat> map = {
        {"json", FileFormat::Json},   {"jsonld", FileFormat::JsonLd},
        {"geojson", FileFormat::GeoJson}, {"xml", FileFormat::Xml},
        {"gml", FileFormat::Gml},     {"kml", FileFormat::Kml},
        {"rdf", FileFormat::Rdf},     {"ttl", FileFormat::Rdf},
        {"nt", FileFormat::Rdf},      {"csv", FileFormat::Csv},
        {"xls", FileFormat::Xls},     {"xlsx", FileFormat::Xlsx},
        {"pdf", FileFormat::Pdf},     {"txt", FileFormat::Txt},
    };
    return map;
}

} // namespace

FileFormat detect_format(std::string_view filename,
                         std::optional<std::string_view> declared_media_type,
                         std::string_view content_head) {
    // Content sniff: only the JSON-family refinements are recognizable from
    // leading bytes without a full parse.
    std::string_view head = strip_bom(content_head);
    std::size_t first = head.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && (head[first] == '{' || head[first] == '[')) {
        static const std::regex feature_collection(R"("type"\s*:\s*"FeatureCollection")");
        if (std::regex_search(head.begin(), head.end(), feature_collection))
            return FileFormat::GeoJson;
        if (head.find("\"@context\"") != std::string_view::npos)
            return FileFormat::JsonLd;
    }

    if (declared_media_type && !declared_media_type->empty()) {
        std::string media = lowercase(*declared_media_type);
        const auto semi = media.find(';');
        if (semi != std::string::npos)
            media.resize(semi);
        while (!media.empty() && (media.back() == ' ' || media.back() == '\t'))
            media.pop_back();
        const auto it = media_type_map().find(media);
        if (it != media_type_map().end())
            return it->second;
    }

    const auto dot = filename.find_last_of('.');
    if (dot != std::string_view::npos) {
        const auto it = extension_map().find(lowercase(filename.substr(dot + 1)));
        if (it != extension_map().end())
            return it->second;
    }
    return FileFormat::Unknown;
}

namespace {

Value scalar_to_value(const json& v) {
    switch (v.type()) {
    case json::value_t::null: return Value::null();
    case json::value_t::boolean: return Value::boolean(v.get<bool>());
    case json::value_t::number_integer: return Value::integer(v.get<std::int64_t>());
    case json::value_t::number_unsigned: {
        const auto u = v.get<std::uint64_t>();
        if (u <= static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
            return Value::integer(static_cast<std::int64_t>(u));
        return Value::real(static_cast<double>(u));
    }
    case json::value_t::number_float: return Value::real(v.get<double>());
    case json::value_t::string: return Value::text(v.get<std::string>());
    default: return Value::null();
    }
}

void flatten_json(const json& v, const FeaturePath& path, DatasetBuilder& builder);

void add_array_element(const json& element, const FeaturePath& path, DatasetBuilder& builder) {
    if (element.is_object()) {
        flatten_json(element, path, builder);
    } else if (element.is_array()) {
        for (const auto& inner : element)
            add_array_element(inner, path, builder);
    } else {
        builder.add(path, scalar_to_value(element));
    }
}

FeaturePath child_path(const FeaturePath* prefix, const std::string& key) {
    try {
        if (prefix == nullptr)
            return FeaturePath::parse(key);
        return FeaturePath::parse(prefix->str() + "." + key);
    } catch (const ValidationError& e) {
        throw ParseError(std::string("record member name is not a valid feature path: ") +
                         e.what());
    }
}

void flatten_members(const json& object, const FeaturePath* prefix, DatasetBuilder& builder) {
    for (const auto& [key, value] : object.items()) {
        const FeaturePath path = child_path(prefix, key);
        if (value.is_object()) {
            if (value.empty())
                builder.add(path, Value::null()); // empty composite counts as null
            else
                flatten_members(value, &path, builder);
        } else if (value.is_array()) {
            if (value.empty())
                builder.add(path, Value::null());
            else
                for (const auto& element : value)
                    add_array_element(element, path, builder);
        } else {
            builder.add(path, scalar_to_value(value));
        }
    }
}

void flatten_json(const json& v, const FeaturePath& path, DatasetBuilder& builder) {
    if (v.empty()) {
        builder.add(path, Value::null());
        return;
    }
    flatten_members(v, &path, builder);
}

const json* navigate_record_root(const json& doc, const std::string& selector) {
    const json* node = &doc;
    std::size_t start = 0;
    while (start <= selector.size()) {
        const auto end = selector.find('/', start);
        const std::string member =
            selector.substr(start, end == std::string::npos ? std::string::npos : end - start);
        if (!member.empty()) {
            if (!node->is_object() || !node->contains(member))
                throw ParseError("record root '" + selector + "': member '" + member +
                                 "' not found");
            node = &(*node)[member];
        }
        if (end == std::string::npos)
            break;
        start = end + 1;
    }
    return node;
}

Dataset parse_json_family(FileFormat format, std::string_view content,
                          const ParseOptions& options) {
    json doc;
    try {
        doc = json::parse(strip_bom(content));
    } catch (const json::exception& e) {
        throw ParseError(std::string("json: ") + e.what());
    }

    const json* records = nullptr;
    if (options.record_root) {
        records = navigate_record_root(doc, *options.record_root);
    } else if (doc.is_array()) {
        records = &doc;
    } else if (format == FileFormat::GeoJson && doc.is_object() && doc.contains("features")) {
        records = &doc["features"];
    } else if (format == FileFormat::JsonLd && doc.is_object() && doc.contains("@graph")) {
        records = &doc["@graph"];
    } else {
        throw ParseError("json: no record array at the document root; pass --record-root");
    }
    if (!records->is_array())
        throw ParseError("json: selected record root is not an array");

    DatasetBuilder builder;
    std::size_t index = 0;
    for (const auto& record : *records) {
        if (!record.is_object())
            throw ParseError("json: record " + std::to_string(index) + " is not an object");
        builder.begin_record();
        flatten_members(record, nullptr, builder);
        ++index;
    }
    return builder.finish(format);
}

// RFC 4180 style state machine over the whole content: quoted fields may
// contain delimiters, quotes ("" escape) and line breaks.
std::vector<std::vector<std::string>> split_csv(std::string_view content, char delimiter) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    bool field_was_quoted = false;

    const auto end_field = [&]() {
        row.push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
    };
    const auto end_row = [&]() {
        const bool last_field_quoted = field_was_quoted;
        end_field();
        // Blank lines produce a single empty unquoted field; skip them.
        if (row.size() == 1 && row[0].empty() && !last_field_quoted)
            row.clear();
        else
            rows.push_back(std::move(row));
        row.clear();
    };

    for (std::size_t i = 0; i < content.size(); ++i) {
        const char c = content[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < content.size() && content[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"' && field.empty()) {
            quoted = true;
            field_was_quoted = true;
        } else if (c == delimiter) {
            end_field();
        } else if (c == '\n') {
            if (!field.empty() && field.back() == '\r')
                field.pop_back();
            end_row();
        } else {
            field.push_back(c);
        }
    }
    if (quoted)
        throw ParseError("csv: unterminated quoted field");
    if (!field.empty() || !row.empty())
        end_row();
    return rows;
}

Dataset parse_csv(std::string_view content, const ParseOptions& options) {
    const auto rows = split_csv(strip_bom(content), options.csv_delimiter);
    if (rows.empty())
        throw ParseError("csv: missing header row");

    const auto& header = rows.front();
    std::vector<FeaturePath> paths;
    std::map<FeaturePath, std::size_t> seen;
    for (std::size_t i = 0; i < header.size(); ++i) {
        std::string name = header[i];
        if (name.empty())
            name = "column" + std::to_string(i + 1);
        FeaturePath path = [&] {
            try {
                return FeaturePath::parse(name);
            } catch (const ValidationError& e) {
                throw ParseError(std::string("csv: invalid header name: ") + e.what());
            }
        }();
        if (!seen.emplace(path, i).second)
            throw ParseError("csv: duplicate header name '" + path.str() + "'");
        paths.push_back(std::move(path));
    }

    DatasetBuilder builder;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() > paths.size())
            throw ParseError("csv: row " + std::to_string(r + 1) + " has " +
                             std::to_string(row.size()) + " fields, header has " +
                             std::to_string(paths.size()));
        builder.begin_record();
        for (std::size_t c = 0; c < row.size(); ++c)
            builder.add(paths[c], Value::text(row[c]));
    }
    Dataset dataset = builder.finish(FileFormat::Csv);
    // Header-only files still expose their feature names.
    for (const auto& path : paths)
        if (!dataset.columns.count(path))
            dataset.columns.emplace(path, FeatureColumn{path, std::vector<Value>(dataset.record_count)});
    return dataset;
}

std::string_view trimmed_view(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' ||
                          s.front() == '\n'))
        s.remove_prefix(1);
    while (!s.empty() &&
           (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n'))
        s.remove_suffix(1);
    return s;
}

FeaturePath xml_child_path(const FeaturePath* prefix, const std::string& name) {
    try {
        if (prefix == nullptr)
            return FeaturePath::parse(name);
        return FeaturePath::parse(prefix->str() + "." + name);
    } catch (const ValidationError& e) {
        throw ParseError(std::string("xml: element name is not a valid feature path: ") +
                         e.what());
    }
}

void flatten_xml(const XmlElement& element, const FeaturePath* prefix, DatasetBuilder& builder) {
    for (const auto& [attr, value] : element.attributes)
        builder.add(xml_child_path(prefix, "@" + attr), Value::text(value));

    const std::string_view text = trimmed_view(element.text);
    if (prefix != nullptr) {
        if (!text.empty())
            builder.add(*prefix, Value::text(std::string(text)));
        else if (element.children.empty() && element.attributes.empty())
            builder.add(*prefix, Value::null()); // empty element materializes as null
    }
    for (const auto& child : element.children) {
        const FeaturePath path = xml_child_path(prefix, child.name);
        flatten_xml(child, &path, builder);
    }
}

const XmlElement* navigate_xml_root(const XmlElement& root, const std::string& selector) {
    const XmlElement* node = &root;
    std::size_t start = 0;
    while (start <= selector.size()) {
        const auto end = selector.find('/', start);
        const std::string name =
            selector.substr(start, end == std::string::npos ? std::string::npos : end - start);
        if (!name.empty()) {
            const XmlElement* next = nullptr;
            for (const auto& child : node->children) {
                if (child.name == name) {
                    next = &child;
                    break;
                }
            }
            if (next == nullptr)
                throw ParseError("record root '" + selector + "': element '" + name +
                                 "' not found");
            node = next;
        }
        if (end == std::string::npos)
            break;
        start = end + 1;
    }
    return node;
}

Dataset parse_xml_family(FileFormat format, std::string_view content,
                         const ParseOptions& options) {
    const XmlElement document = detail::parse_xml(content);
    const XmlElement* parent = &document;
    if (options.record_root)
        parent = navigate_xml_root(document, *options.record_root);

    // Records are the repeated children of the container element: the child
    // name that occurs most often (earliest first occurrence wins ties).
    std::map<std::string, std::size_t> counts;
    for (const auto& child : parent->children)
        ++counts[child.name];
    std::string record_name;
    std::size_t best = 0;
    for (const auto& child : parent->children) {
        const std::size_t count = counts[child.name];
        if (count > best) {
            best = count;
            record_name = child.name;
        }
    }

    DatasetBuilder builder;
    for (const auto& child : parent->children) {
        if (child.name != record_name)
            continue;
        builder.begin_record();
        flatten_xml(child, nullptr, builder);
    }
    return builder.finish(format);
}

} // namespace

Dataset parse_dataset(FileFormat format, std::string_view content, const ParseOptions& options) {
    switch (format) {
    case FileFormat::Json:
    case FileFormat::JsonLd:
    case FileFormat::GeoJson:
        return parse_json_family(format, content, options);
    case FileFormat::Xml:
    case FileFormat::Gml:
    case FileFormat::Kml:
        return parse_xml_family(format, content, options);
    case FileFormat::Csv:
        return parse_csv(content, options);
    case FileFormat::Xlsx:
        return detail::parse_xlsx(content);
    default:
        throw UnsupportedFormatError("format " + std::string(to_string(format)) +
                                     " is scored but cannot be parsed");
    }
}

std::set<FeaturePath> present_paths(const Dataset& dataset) {
    std::set<FeaturePath> paths;
    for (const auto& [path, column] : dataset.columns)
        paths.insert(path);
    return paths;
}

std::string to_canonical_json(const Dataset& dataset) {
    ordered_json records = ordered_json::array();
    for (std::size_t r = 0; r < dataset.record_count; ++r) {
        ordered_json record = ordered_json::object();
        for (const auto& [path, column] : dataset.columns) {
            const Value& value = column.values[r];
            switch (value.kind()) {
            case Value::Kind::Null: record[path.str()] = nullptr; break;
            case Value::Kind::Bool: record[path.str()] = value.as_bool(); break;
            case Value::Kind::Integer: record[path.str()] = value.as_integer(); break;
            case Value::Kind::Float: record[path.str()] = value.as_real(); break;
            case Value::Kind::Text: record[path.str()] = value.as_text(); break;
            }
        }
        records.push_back(std::move(record));
    }
    return records.dump();
}

} // namespace odq
