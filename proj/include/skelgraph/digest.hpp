#pragma once

#include <cstdint>
#include <string>

namespace skelgraph {

// FNV-1a 64-bit content digest, reported as 16 lowercase hex characters.
std::uint64_t fnv1a64(const void* bytes, std::size_t len);
std::string digest_hex(const std::string& bytes);
std::string digest_file(const std::string& path);

} // namespace skelgraph
