#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace odq::detail {

struct ZipEntry {
    std::string name;
    std::uint16_t method = 0; // 0 = stored, 8 = deflate
    std::uint32_t crc32 = 0;
    std::uint32_t compressed_size = 0;
    std::uint32_t uncompressed_size = 0;
    std::uint32_t local_header_offset = 0;
};

/// Read-only view over a ZIP archive held in memory (enough for OOXML
/// containers: stored and deflated entries, no zip64, no encryption).
/// The archive keeps a view into the caller's buffer.
class ZipArchive {
public:
    explicit ZipArchive(std::string_view bytes);

    const std::vector<ZipEntry>& entries() const noexcept { return entries_; }
    bool contains(std::string_view name) const;

    /// Extracts one entry, verifying its CRC. Throws ParseError on a missing
    /// entry or corrupt data.
    std::string read(std::string_view name) const;

private:
    const ZipEntry& find(std::string_view name) const;

    std::string_view bytes_;
    std::vector<ZipEntry> entries_;
};

} // namespace odq::detail
