#pragma once

#include <string>
#include <string_view>

namespace hbee {

// Lowercase hex SHA256 digests. File hashing reads raw bytes, so the
// digest is stable across load/serialize/load round trips of frozen
// artifacts.
std::string sha256_hex(std::string_view bytes);
std::string sha256_file_hex(const std::string& path);

} // namespace hbee
