#include <atomic>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <unistd.h>

#ifdef ODQ_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include "httplib.h"

#include "odq/app.hpp"
#include "odq/errors.hpp"

namespace odq {

namespace {

namespace fs = std::filesystem;

bool is_http_url(std::string_view source) {
    return source.rfind("http://", 0) == 0 || source.rfind("https://", 0) == 0;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw FetchError("cannot open file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return std::move(buffer).str();
}

// scheme://host[:port] and the rest; httplib wants them apart.
std::pair<std::string, std::string> split_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos)
        return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t hash = 1469598103934665603ull;
    for (const char c : s) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 1099511628211ull;
    }
    return hash;
}

// Stable per-URL file name: hash plus a readable sanitized tail.
std::string cache_key(const std::string& url) {
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(url)));
    std::string tail = url.substr(url.find_last_of('/') + 1);
    if (tail.size() > 48)
        tail.resize(48);
    for (char& c : tail)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '.' && c != '-' && c != '_')
            c = '_';
    std::string key(hex);
    if (!tail.empty())
        key += "-" + tail;
    return key;
}

std::string http_get(const std::string& url, const RunOptions& options) {
    const auto [base, path] = split_url(url);
    std::string last_error;
    for (int attempt = 0; attempt <= options.http_retries; ++attempt) {
        httplib::Client client(base);
        client.set_connection_timeout(options.http_timeout_seconds, 0);
        client.set_read_timeout(options.http_timeout_seconds, 0);
        client.set_follow_location(true);
        auto response = client.Get(path);
        if (response && response->status >= 200 && response->status < 300)
            return response->body;
        if (response)
            last_error = "HTTP status " + std::to_string(response->status);
        else
            last_error = httplib::to_string(response.error());
    }
    throw FetchError("GET " + url + " failed: " + last_error);
}

std::string fetch_url(const std::string& url, const RunOptions& options) {
    if (!options.cache_dir)
        return http_get(url, options);

    const fs::path dir(*options.cache_dir);
    const fs::path cached = dir / cache_key(url);
    if (fs::exists(cached))
        return read_file(cached);

    std::string body = http_get(url, options);
    std::error_code ec;
    fs::create_directories(dir, ec);
    // Write-then-rename keeps concurrent fetchers of the same URL safe.
    static std::atomic<unsigned> tmp_counter{0};
    const fs::path tmp = cached.string() + ".tmp" + std::to_string(::getpid()) + "-" +
                         std::to_string(tmp_counter.fetch_add(1));
    {
        std::ofstream out(tmp, std::ios::binary);
        out.write(body.data(), static_cast<std::streamsize>(body.size()));
    }
    fs::rename(tmp, cached, ec);
    if (ec)
        fs::remove(tmp, ec);
    return body;
}

} // namespace

std::string fetch_source(const std::string& source, const RunOptions& options) {
    if (is_http_url(source))
        return fetch_url(source, options);
    fs::path path(source);
    if (path.is_relative() && options.base_dir)
        path = fs::path(*options.base_dir) / path;
    return read_file(path);
}

} // namespace odq
