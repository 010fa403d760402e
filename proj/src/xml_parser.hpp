#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace odq::detail {

/// Minimal non-validating XML element tree. `text` holds the concatenated
/// character data of the element (entity-decoded, CDATA included), in
/// document order but without markers for where child elements sat.
struct XmlElement {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attributes;
    std::vector<XmlElement> children;
    std::string text;
};

/// Parses a document and returns its document element. Prologs, comments,
/// processing instructions and DOCTYPE declarations are skipped; namespace
/// prefixes are kept verbatim in element and attribute names. Throws
/// ParseError on malformed input.
XmlElement parse_xml(std::string_view content);

} // namespace odq::detail
