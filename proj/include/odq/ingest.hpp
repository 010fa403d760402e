#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "odq/value.hpp"

namespace odq {

struct ParseOptions {
    /// `/`-separated member (or element) names from the document root down to
    /// the container holding the records, e.g. `features` or `data/items`.
    std::optional<std::string> record_root;
    char csv_delimiter = ',';
};

/// Resolves the distribution format from, in precedence order, a content
/// sniff of the leading bytes (GEOJSON and JSON-LD markers), the declared
/// media type, and the filename extension. Returns Unknown when nothing
/// matches; detection never fails.
FileFormat detect_format(std::string_view filename,
                         std::optional<std::string_view> declared_media_type,
                         std::string_view content_head);

/// Parses a distribution into the column-oriented Dataset form. Hierarchical
/// records are flattened to dotted paths; arrays of scalars are joined into a
/// single `;`-separated text value; arrays of objects merge their members
/// into the same child paths. Throws ParseError on malformed content and
/// UnsupportedFormatError for formats that score but do not parse (PDF, TXT,
/// XLS, RDF, Unknown). A dataset with zero records is not an error.
Dataset parse_dataset(FileFormat format, std::string_view content,
                      const ParseOptions& options = {});

/// The set of feature names the dataset provides. Columns whose every slot
/// is Null are included; they appeared in the source.
std::set<FeaturePath> present_paths(const Dataset& dataset);

/// Serializes a dataset to its canonical record-array JSON: one object per
/// record carrying every column (Null slots as JSON null). Re-parsing the
/// result as JSON reproduces the dataset's content exactly.
std::string to_canonical_json(const Dataset& dataset);

} // namespace odq
