#pragma once

#include <string>
#include <string_view>

namespace sectortag {

/// Hex-encoded SHA-256 of a byte string (OpenSSL-backed).
std::string sha256_hex(std::string_view data);

/// Hex-encoded SHA-256 of a file's contents. Throws DataError if unreadable.
std::string sha256_file(const std::string& path);

} // namespace sectortag
