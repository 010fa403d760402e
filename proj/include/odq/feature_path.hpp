#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "odq/errors.hpp"

namespace odq {

/// Dotted feature name such as `umístění.adresa`. Segments are non-empty and
/// never contain the `.` separator; comparison is byte-wise, so case and
/// diacritics are significant.
class FeaturePath {
public:
    /// Empty placeholder; only parse()/from_segments() produce valid paths.
    FeaturePath() = default;

    /// Parses a dotted path, splitting on `.`. Throws ValidationError on an
    /// empty path or an empty segment (leading, trailing, or doubled dots).
    static FeaturePath parse(std::string_view dotted) {
        if (dotted.empty())
            throw ValidationError("feature path is empty");
        std::size_t start = 0;
        for (std::size_t i = 0; i <= dotted.size(); ++i) {
            if (i == dotted.size() || dotted[i] == '.') {
                if (i == start)
                    throw ValidationError("feature path '" + std::string(dotted) +
                                          "' contains an empty segment");
                start = i + 1;
            }
        }
        return FeaturePath(std::string(dotted));
    }

    static FeaturePath from_segments(const std::vector<std::string>& segments) {
        if (segments.empty())
            throw ValidationError("feature path needs at least one segment");
        std::string joined;
        for (const auto& seg : segments) {
            if (seg.empty() || seg.find('.') != std::string::npos)
                throw ValidationError("invalid feature path segment '" + seg + "'");
            if (!joined.empty())
                joined += '.';
            joined += seg;
        }
        return FeaturePath(std::move(joined));
    }

    const std::string& str() const noexcept { return path_; }

    std::vector<std::string_view> segments() const {
        std::vector<std::string_view> out;
        std::string_view view = path_;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= view.size(); ++i) {
            if (i == view.size() || view[i] == '.') {
                out.push_back(view.substr(start, i - start));
                start = i + 1;
            }
        }
        return out;
    }

    friend bool operator==(const FeaturePath& a, const FeaturePath& b) noexcept {
        return a.path_ == b.path_;
    }
    friend bool operator!=(const FeaturePath& a, const FeaturePath& b) noexcept {
        return a.path_ != b.path_;
    }
    friend bool operator<(const FeaturePath& a, const FeaturePath& b) noexcept {
        return a.path_ < b.path_;
    }

private:
    explicit FeaturePath(std::string canonical) : path_(std::move(canonical)) {}

    std::string path_;
};

} // namespace odq

template <>
struct std::hash<odq::FeaturePath> {
    std::size_t operator()(const odq::FeaturePath& p) const noexcept {
        return std::hash<std::string>{}(p.str());
    }
};
