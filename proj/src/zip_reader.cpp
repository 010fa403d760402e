#include "zip_reader.hpp"

#include <zlib.h>

#include "odq/errors.hpp"

namespace odq::detail {

namespace {

std::uint16_t read_u16(std::string_view s, std::size_t at) {
    return static_cast<std::uint16_t>(static_cast<unsigned char>(s[at]) |
                                      (static_cast<unsigned char>(s[at + 1]) << 8));
}

std::uint32_t read_u32(std::string_view s, std::size_t at) {
    return static_cast<std::uint32_t>(static_cast<unsigned char>(s[at])) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(s[at + 1])) << 8) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(s[at + 2])) << 16) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(s[at + 3])) << 24);
}

constexpr std::string_view kEocdSig = "PK\x05\x06";
constexpr std::string_view kCentralSig = "PK\x01\x02";
constexpr std::string_view kLocalSig = "PK\x03\x04";

std::string inflate_raw(std::string_view compressed, std::size_t expected_size) {
    std::string out(expected_size, '\0');
    z_stream strm{};
    if (inflateInit2(&strm, -MAX_WBITS) != Z_OK)
        throw ParseError("zip: could not initialize inflate");
    strm.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(compressed.data()));
    strm.avail_in = static_cast<uInt>(compressed.size());
    strm.next_out = reinterpret_cast<Bytef*>(out.data());
    strm.avail_out = static_cast<uInt>(out.size());
    const int rc = inflate(&strm, Z_FINISH);
    const auto produced = static_cast<std::size_t>(strm.total_out);
    inflateEnd(&strm);
    if (rc != Z_STREAM_END || produced != expected_size)
        throw ParseError("zip: deflated entry is corrupt");
    return out;
}

} // namespace

ZipArchive::ZipArchive(std::string_view bytes) : bytes_(bytes) {
    if (bytes_.size() < 22)
        throw ParseError("zip: file too small");

    // End-of-central-directory record: scan backwards through the maximum
    // comment length.
    const std::size_t scan_from =
        bytes_.size() >= 22 + 65535 ? bytes_.size() - 22 - 65535 : 0;
    std::size_t eocd = std::string_view::npos;
    for (std::size_t i = bytes_.size() - 22 + 1; i-- > scan_from;) {
        if (bytes_.substr(i, 4) == kEocdSig) {
            eocd = i;
            break;
        }
    }
    if (eocd == std::string_view::npos)
        throw ParseError("zip: end of central directory not found");

    const std::uint16_t entry_count = read_u16(bytes_, eocd + 10);
    std::size_t offset = read_u32(bytes_, eocd + 16);

    entries_.reserve(entry_count);
    for (std::uint16_t i = 0; i < entry_count; ++i) {
        if (offset + 46 > bytes_.size() || bytes_.substr(offset, 4) != kCentralSig)
            throw ParseError("zip: corrupt central directory");
        ZipEntry entry;
        entry.method = read_u16(bytes_, offset + 10);
        entry.crc32 = read_u32(bytes_, offset + 16);
        entry.compressed_size = read_u32(bytes_, offset + 20);
        entry.uncompressed_size = read_u32(bytes_, offset + 24);
        const std::uint16_t name_len = read_u16(bytes_, offset + 28);
        const std::uint16_t extra_len = read_u16(bytes_, offset + 30);
        const std::uint16_t comment_len = read_u16(bytes_, offset + 32);
        entry.local_header_offset = read_u32(bytes_, offset + 42);
        if (offset + 46 + name_len > bytes_.size())
            throw ParseError("zip: corrupt central directory entry name");
        entry.name = std::string(bytes_.substr(offset + 46, name_len));
        entries_.push_back(std::move(entry));
        offset += 46u + name_len + extra_len + comment_len;
    }
}

bool ZipArchive::contains(std::string_view name) const {
    for (const auto& entry : entries_)
        if (entry.name == name)
            return true;
    return false;
}

const ZipEntry& ZipArchive::find(std::string_view name) const {
    for (const auto& entry : entries_)
        if (entry.name == name)
            return entry;
    throw ParseError("zip: entry '" + std::string(name) + "' not found");
}

std::string ZipArchive::read(std::string_view name) const {
    const ZipEntry& entry = find(name);
    const std::size_t at = entry.local_header_offset;
    if (at + 30 > bytes_.size() || bytes_.substr(at, 4) != kLocalSig)
        throw ParseError("zip: corrupt local header for '" + entry.name + "'");
    const std::uint16_t name_len = read_u16(bytes_, at + 26);
    const std::uint16_t extra_len = read_u16(bytes_, at + 28);
    const std::size_t data_at = at + 30 + name_len + extra_len;
    if (data_at + entry.compressed_size > bytes_.size())
        throw ParseError("zip: truncated data for '" + entry.name + "'");
    const std::string_view raw = bytes_.substr(data_at, entry.compressed_size);

    std::string data;
    if (entry.method == 0) {
        if (entry.compressed_size != entry.uncompressed_size)
            throw ParseError("zip: size mismatch in stored entry '" + entry.name + "'");
        data = std::string(raw);
    } else if (entry.method == 8) {
        data = inflate_raw(raw, entry.uncompressed_size);
    } else {
        throw ParseError("zip: unsupported compression method in '" + entry.name + "'");
    }

    const auto crc =
        ::crc32(0L, reinterpret_cast<const Bytef*>(data.data()), static_cast<uInt>(data.size()));
    if (static_cast<std::uint32_t>(crc) != entry.crc32)
        throw ParseError("zip: CRC mismatch in '" + entry.name + "'");
    return data;
}

} // namespace odq::detail
