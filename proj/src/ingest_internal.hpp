#pragma once

#include <map>
#include <string_view>
#include <vector>

#include "odq/value.hpp"

namespace odq::detail {

/// Accumulates flattened records into columns. Values added twice for the
/// same path within one record (repeated XML elements, arrays of objects)
/// are joined into a single `;`-separated text value, in arrival order.
class DatasetBuilder {
public:
    void begin_record() { ++records_; }

    void add(const FeaturePath& path, Value value) {
        auto& column = columns_[path];
        if (column.size() < records_ - 1)
            column.resize(records_ - 1);
        if (column.size() == records_) {
            if (column.back().kind() == Value::Kind::Null && value.kind() == Value::Kind::Null)
                return;
            column.back() = Value::text(column.back().render() + ";" + value.render());
            return;
        }
        column.push_back(std::move(value));
    }

    std::size_t record_count() const noexcept { return records_; }

    Dataset finish(FileFormat format) {
        Dataset dataset;
        dataset.record_count = records_;
        dataset.source_format = format;
        for (auto& [path, values] : columns_) {
            values.resize(records_);
            dataset.columns.emplace(path, FeatureColumn{path, std::move(values)});
        }
        columns_.clear();
        return dataset;
    }

private:
    std::size_t records_ = 0;
    std::map<FeaturePath, std::vector<Value>> columns_;
};

/// First worksheet of an OOXML workbook, header row as feature names.
Dataset parse_xlsx(std::string_view content);

} // namespace odq::detail
