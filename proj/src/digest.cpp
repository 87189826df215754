#include "skelgraph/digest.hpp"

#include <cstdio>

#include "skelgraph/image_io.hpp"

namespace skelgraph {

std::uint64_t fnv1a64(const void* bytes, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(bytes);
    std::uint64_t h = 14695981039346656037ULL;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

std::string digest_hex(const std::string& bytes) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes.data(), bytes.size())));
    return buf;
}

std::string digest_file(const std::string& path) { return digest_hex(read_file(path)); }

} // namespace skelgraph
