#include <cmath>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "odq/errors.hpp"
#include "ingest_internal.hpp"
#include "xml_parser.hpp"
#include "zip_reader.hpp"

namespace odq::detail {

namespace {

// OOXML producers vary in namespace prefixing; match on local names.
std::string_view local_name(std::string_view qualified) {
    const auto colon = qualified.find(':');
    return colon == std::string_view::npos ? qualified : qualified.substr(colon + 1);
}

const XmlElement* first_descendant(const XmlElement& element, std::string_view name) {
    for (const auto& child : element.children) {
        if (local_name(child.name) == name)
            return &child;
        if (const XmlElement* found = first_descendant(child, name))
            return found;
    }
    return nullptr;
}

std::string attribute(const XmlElement& element, std::string_view name) {
    for (const auto& [attr, value] : element.attributes)
        if (local_name(attr) == name)
            return value;
    return {};
}

void collect_text_runs(const XmlElement& element, std::string& out) {
    if (local_name(element.name) == "t")
        out += element.text;
    for (const auto& child : element.children)
        collect_text_runs(child, out);
}

std::vector<std::string> load_shared_strings(const ZipArchive& zip) {
    std::vector<std::string> strings;
    if (!zip.contains("xl/sharedStrings.xml"))
        return strings;
    const XmlElement root = parse_xml(zip.read("xl/sharedStrings.xml"));
    for (const auto& item : root.children) {
        if (local_name(item.name) != "si")
            continue;
        std::string text;
        collect_text_runs(item, text);
        strings.push_back(std::move(text));
    }
    return strings;
}

std::string first_sheet_path(const ZipArchive& zip) {
    if (zip.contains("xl/workbook.xml") && zip.contains("xl/_rels/workbook.xml.rels")) {
        const XmlElement workbook = parse_xml(zip.read("xl/workbook.xml"));
        if (const XmlElement* sheets = first_descendant(workbook, "sheets")) {
            for (const auto& sheet : sheets->children) {
                if (local_name(sheet.name) != "sheet")
                    continue;
                const std::string rid = attribute(sheet, "id");
                const XmlElement rels = parse_xml(zip.read("xl/_rels/workbook.xml.rels"));
                for (const auto& rel : rels.children) {
                    if (local_name(rel.name) != "Relationship" || attribute(rel, "Id") != rid)
                        continue;
                    std::string target = attribute(rel, "Target");
                    if (!target.empty() && target.front() == '/')
                        return target.substr(1);
                    return "xl/" + target;
                }
            }
        }
    }
    for (const auto& entry : zip.entries())
        if (entry.name.rfind("xl/worksheets/", 0) == 0)
            return entry.name;
    throw ParseError("xlsx: no worksheet found");
}

// "B3" -> zero-based column 1.
std::size_t column_index(const std::string& cell_ref) {
    std::size_t col = 0;
    bool any = false;
    for (char c : cell_ref) {
        if (c >= 'A' && c <= 'Z') {
            col = col * 26 + static_cast<std::size_t>(c - 'A' + 1);
            any = true;
        } else {
            break;
        }
    }
    return any ? col - 1 : 0;
}

Value numeric_cell_value(const std::string& raw) {
    bool integral = !raw.empty();
    std::size_t i = (raw[0] == '+' || raw[0] == '-') ? 1 : 0;
    if (i >= raw.size())
        integral = false;
    for (; i < raw.size() && integral; ++i)
        if (raw[i] < '0' || raw[i] > '9')
            integral = false;
    if (integral) {
        errno = 0;
        const long long v = std::strtoll(raw.c_str(), nullptr, 10);
        if (errno == 0)
            return Value::integer(v);
    }
    char* end = nullptr;
    const double d = std::strtod(raw.c_str(), &end);
    if (end == raw.c_str() || !std::isfinite(d))
        return Value::text(raw);
    return Value::real(d);
}

Value cell_value(const XmlElement& cell, const std::vector<std::string>& shared) {
    const std::string type = attribute(cell, "t");
    std::string raw;
    if (const XmlElement* v = first_descendant(cell, "v"))
        raw = v->text;

    if (type == "inlineStr") {
        std::string text;
        if (const XmlElement* is = first_descendant(cell, "is"))
            collect_text_runs(*is, text);
        return Value::text(std::move(text));
    }
    if (type == "s") {
        const std::size_t index = static_cast<std::size_t>(std::strtoull(raw.c_str(), nullptr, 10));
        if (index >= shared.size())
            throw ParseError("xlsx: shared string index out of range");
        return Value::text(shared[index]);
    }
    if (type == "str" || type == "e")
        return Value::text(raw);
    if (type == "b")
        return Value::boolean(raw == "1" || raw == "true");
    if (raw.empty())
        return Value::null();
    return numeric_cell_value(raw);
}

} // namespace

Dataset parse_xlsx(std::string_view content) {
    const ZipArchive zip(content);
    const std::vector<std::string> shared = load_shared_strings(zip);
    const XmlElement worksheet = parse_xml(zip.read(first_sheet_path(zip)));

    const XmlElement* sheet_data = first_descendant(worksheet, "sheetData");
    if (sheet_data == nullptr)
        throw ParseError("xlsx: worksheet has no sheetData");

    // Sparse row representation: cells carry their own column references.
    std::vector<std::map<std::size_t, Value>> rows;
    for (const auto& row : sheet_data->children) {
        if (local_name(row.name) != "row")
            continue;
        std::map<std::size_t, Value> cells;
        std::size_t next_col = 0;
        for (const auto& cell : row.children) {
            if (local_name(cell.name) != "c")
                continue;
            const std::string ref = attribute(cell, "r");
            const std::size_t col = ref.empty() ? next_col : column_index(ref);
            next_col = col + 1;
            cells[col] = cell_value(cell, shared);
        }
        rows.push_back(std::move(cells));
    }
    if (rows.empty())
        throw ParseError("xlsx: worksheet has no header row");

    std::size_t width = 0;
    for (const auto& cells : rows)
        if (!cells.empty())
            width = std::max(width, cells.rbegin()->first + 1);

    std::vector<FeaturePath> paths;
    std::map<FeaturePath, std::size_t> seen;
    for (std::size_t c = 0; c < width; ++c) {
        std::string name;
        const auto it = rows.front().find(c);
        if (it != rows.front().end() && it->second.kind() != Value::Kind::Null)
            name = it->second.render();
        if (name.empty())
            name = "column" + std::to_string(c + 1);
        FeaturePath path = [&] {
            try {
                return FeaturePath::parse(name);
            } catch (const ValidationError& e) {
                throw ParseError(std::string("xlsx: invalid header name: ") + e.what());
            }
        }();
        if (!seen.emplace(path, c).second)
            throw ParseError("xlsx: duplicate header name '" + path.str() + "'");
        paths.push_back(std::move(path));
    }

    DatasetBuilder builder;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        builder.begin_record();
        for (const auto& [col, value] : rows[r]) {
            if (col < paths.size())
                builder.add(paths[col], value);
        }
    }
    Dataset dataset = builder.finish(FileFormat::Xlsx);
    for (const auto& path : paths)
        if (!dataset.columns.count(path))
            dataset.columns.emplace(path,
                                    FeatureColumn{path, std::vector<Value>(dataset.record_count)});
    return dataset;
}

} // namespace odq::detail
