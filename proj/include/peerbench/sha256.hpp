#pragma once

#include <string>
#include <string_view>

namespace peerbench {

// Lowercase hex SHA-256 digest of the exact bytes given.
std::string sha256_hex(std::string_view bytes);

}  // namespace peerbench
