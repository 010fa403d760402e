#pragma once

// Reusable fixtures: the toy standard, synthetic datasets, temp dirs and a
// minimal ZIP writer for building in-memory XLSX workbooks.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <zlib.h>

#include "odq/standard.hpp"
#include "odq/value.hpp"

namespace odq::testfix {

inline std::string toy_standard_json() {
    return R"({
  "standard_iri": "https://example.org/standard/tourist-poi",
  "features": [
    { "path": "@context", "obligation": "mandatory" },
    { "path": "properties.název", "obligation": "mandatory" },
    { "path": "geometry.coordinates", "obligation": "mandatory" },
    { "path": "properties.vstupné", "obligation": "optional" }
  ]
})";
}

inline StandardSpec toy_standard() {
    return StandardSpec::make(
        "https://example.org/standard/tourist-poi",
        {
            {FeaturePath::parse("@context"), Obligation::Mandatory},
            {FeaturePath::parse("properties.název"), Obligation::Mandatory},
            {FeaturePath::parse("geometry.coordinates"), Obligation::Mandatory},
            {FeaturePath::parse("properties.vstupné"), Obligation::Optional},
        });
}

/// GEOJSON matching the toy standard exactly: every standard feature present
/// under its exact name, one type per feature, no nulls. The three extra
/// per-record members (type, geometry.type, properties.web) make the local
/// optional count 4, keeping every weight representable exactly.
inline std::string perfect_geojson() {
    return R"({"type":"FeatureCollection","features":[
{"type":"Feature","@context":"https://example.org/standard/tourist-poi","geometry":{"type":"Point","coordinates":[16.6068,49.1951]},"properties":{"název":"Hrad Špilberk","vstupné":"120 Kč","web":"https://example.org/hrad"}},
{"type":"Feature","@context":"https://example.org/standard/tourist-poi","geometry":{"type":"Point","coordinates":[14.4208,50.0880]},"properties":{"název":"Petřínská rozhledna","vstupné":"60 Kč","web":"https://example.org/petrin"}},
{"type":"Feature","@context":"https://example.org/standard/tourist-poi","geometry":{"type":"Point","coordinates":[15.5540,50.7785]},"properties":{"název":"Zámek Hrubý Rohozec","vstupné":"90 Kč","web":"https://example.org/rohozec"}}
]})";
}

/// Hand-built tabular stub with an unstructured origin: wrong feature names,
/// a mixed-type column, and an all-null optional column.
inline Dataset pathological_dataset() {
    Dataset dataset;
    dataset.source_format = FileFormat::Txt;
    dataset.record_count = 4;
    const auto add = [&](const char* name, std::vector<Value> values) {
        const FeaturePath path = FeaturePath::parse(name);
        dataset.columns.emplace(path, FeatureColumn{path, std::move(values)});
    };
    add("name", {Value::text("Hrad"), Value::integer(7), Value::text("Zámek"),
                 Value::boolean(true)});
    add("place", {Value::text("Brno"), Value::text("Praha"), Value::text("Děčín"),
                  Value::text("Ostrava")});
    add("notes", {Value::null(), Value::text(""), Value::text("   "), Value::null()});
    return dataset;
}

inline std::filesystem::path temp_dir(const std::string& label) {
    static std::mt19937_64 rng(std::random_device{}());
    const auto dir = std::filesystem::temp_directory_path() /
                     ("odq-" + label + "-" + std::to_string(rng()));
    std::filesystem::create_directories(dir);
    return dir;
}

inline void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

namespace zip {

inline void put_u16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

inline void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i)
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

inline std::string deflate_raw(const std::string& data) {
    z_stream strm{};
    deflateInit2(&strm, Z_DEFAULT_COMPRESSION, Z_DEFLATED, -MAX_WBITS, 8, Z_DEFAULT_STRATEGY);
    std::string out(deflateBound(&strm, static_cast<uLong>(data.size())), '\0');
    strm.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
    strm.avail_in = static_cast<uInt>(data.size());
    strm.next_out = reinterpret_cast<Bytef*>(out.data());
    strm.avail_out = static_cast<uInt>(out.size());
    deflate(&strm, Z_FINISH);
    out.resize(strm.total_out);
    deflateEnd(&strm);
    return out;
}

} // namespace zip

/// Minimal ZIP writer covering what the reader supports: stored entries by
/// default, raw-deflated ones on request.
inline std::string build_zip(const std::vector<std::pair<std::string, std::string>>& entries,
                             bool deflate = false) {
    std::string out;
    struct Central {
        std::string name;
        std::uint32_t crc, csize, usize, offset;
        std::uint16_t method;
    };
    std::vector<Central> centrals;

    for (const auto& [name, content] : entries) {
        const auto crc = static_cast<std::uint32_t>(
            ::crc32(0L, reinterpret_cast<const Bytef*>(content.data()),
                    static_cast<uInt>(content.size())));
        const std::string packed = deflate ? zip::deflate_raw(content) : content;
        const std::uint16_t method = deflate ? 8 : 0;
        const auto offset = static_cast<std::uint32_t>(out.size());

        out += "PK\x03\x04";
        zip::put_u16(out, 20);     // version needed
        zip::put_u16(out, 0);      // flags
        zip::put_u16(out, method);
        zip::put_u16(out, 0);      // mod time
        zip::put_u16(out, 0);      // mod date
        zip::put_u32(out, crc);
        zip::put_u32(out, static_cast<std::uint32_t>(packed.size()));
        zip::put_u32(out, static_cast<std::uint32_t>(content.size()));
        zip::put_u16(out, static_cast<std::uint16_t>(name.size()));
        zip::put_u16(out, 0);      // extra length
        out += name;
        out += packed;

        centrals.push_back({name, crc, static_cast<std::uint32_t>(packed.size()),
                            static_cast<std::uint32_t>(content.size()), offset, method});
    }

    const auto central_offset = static_cast<std::uint32_t>(out.size());
    for (const auto& c : centrals) {
        out += "PK\x01\x02";
        zip::put_u16(out, 20); // version made by
        zip::put_u16(out, 20); // version needed
        zip::put_u16(out, 0);
        zip::put_u16(out, c.method);
        zip::put_u16(out, 0);
        zip::put_u16(out, 0);
        zip::put_u32(out, c.crc);
        zip::put_u32(out, c.csize);
        zip::put_u32(out, c.usize);
        zip::put_u16(out, static_cast<std::uint16_t>(c.name.size()));
        zip::put_u16(out, 0); // extra
        zip::put_u16(out, 0); // comment
        zip::put_u16(out, 0); // disk
        zip::put_u16(out, 0); // internal attrs
        zip::put_u32(out, 0); // external attrs
        zip::put_u32(out, c.offset);
        out += c.name;
    }
    const auto central_size = static_cast<std::uint32_t>(out.size()) - central_offset;

    out += "PK\x05\x06";
    zip::put_u16(out, 0);
    zip::put_u16(out, 0);
    zip::put_u16(out, static_cast<std::uint16_t>(centrals.size()));
    zip::put_u16(out, static_cast<std::uint16_t>(centrals.size()));
    zip::put_u32(out, central_size);
    zip::put_u32(out, central_offset);
    zip::put_u16(out, 0); // comment length
    return out;
}

/// One-sheet workbook: header row `název | vstupné | počet`, two data rows
/// exercising shared strings, inline strings, booleans and numbers.
inline std::string tiny_xlsx(bool deflate = false) {
    const std::string workbook = R"(<?xml version="1.0"?>
<workbook xmlns="http://schemas.openxmlformats.org/spreadsheetml/2006/main"
          xmlns:r="http://schemas.openxmlformats.org/officeDocument/2006/relationships">
  <sheets><sheet name="List1" sheetId="1" r:id="rId1"/></sheets>
</workbook>)";
    const std::string rels = R"(<?xml version="1.0"?>
<Relationships xmlns="http://schemas.openxmlformats.org/package/2006/relationships">
  <Relationship Id="rId1"
    Type="http://schemas.openxmlformats.org/officeDocument/2006/relationships/worksheet"
    Target="worksheets/sheet1.xml"/>
</Relationships>)";
    const std::string shared = R"(<?xml version="1.0"?>
<sst xmlns="http://schemas.openxmlformats.org/spreadsheetml/2006/main" count="3" uniqueCount="3">
  <si><t>název</t></si>
  <si><t>Hrad Špilberk</t></si>
  <si><r><t>Zámek </t></r><r><t>Lednice</t></r></si>
</sst>)";
    const std::string sheet = R"(<?xml version="1.0"?>
<worksheet xmlns="http://schemas.openxmlformats.org/spreadsheetml/2006/main">
  <sheetData>
    <row r="1">
      <c r="A1" t="s"><v>0</v></c>
      <c r="B1" t="inlineStr"><is><t>vstupné</t></is></c>
      <c r="C1" t="inlineStr"><is><t>počet</t></is></c>
    </row>
    <row r="2">
      <c r="A2" t="s"><v>1</v></c>
      <c r="B2"><v>120</v></c>
      <c r="C2"><v>3.5</v></c>
    </row>
    <row r="3">
      <c r="A3" t="s"><v>2</v></c>
      <c r="B3" t="b"><v>1</v></c>
    </row>
  </sheetData>
</worksheet>)";
    return build_zip({{"[Content_Types].xml", "<Types/>"},
                      {"xl/workbook.xml", workbook},
                      {"xl/_rels/workbook.xml.rels", rels},
                      {"xl/sharedStrings.xml", shared},
                      {"xl/worksheets/sheet1.xml", sheet}},
                     deflate);
}

} // namespace odq::testfix
