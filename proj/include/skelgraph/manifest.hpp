#pragma once

#include <string>
#include <vector>

#include "skelgraph/errors.hpp"

namespace skelgraph {

struct ManifestEntry {
    std::string image_id;
    std::string path; // as stored in the CSV; resolve_path joins relative ones
    int fluence_class = 0; // 1|2|3
    int angle_class = 0;   // 1|2|3
    std::string structure; // "wall" | "hole"
};

// CSV with header image_id,path,fluence_class,angle_class,structure.
std::vector<ManifestEntry> read_manifest(const std::string& csv_path);
void write_manifest(const std::vector<ManifestEntry>& entries, const std::string& csv_path);

// Relative manifest paths are taken relative to the manifest's directory.
std::string resolve_path(const std::string& manifest_csv_path, const std::string& entry_path);

} // namespace skelgraph
