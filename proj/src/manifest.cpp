#include "skelgraph/manifest.hpp"

#include <filesystem>
#include <set>
#include <sstream>

#include "skelgraph/image_io.hpp"

namespace skelgraph {

namespace {
const char* kHeader = "image_id,path,fluence_class,angle_class,structure";

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

int parse_class(const std::string& s, const std::string& where) {
    if (s != "1" && s != "2" && s != "3")
        throw ManifestError(where + ": class must be 1, 2, or 3 (got '" + s + "')");
    return s[0] - '0';
}
} // namespace

std::vector<ManifestEntry> read_manifest(const std::string& csv_path) {
    std::istringstream in(read_file(csv_path));
    std::string line;
    if (!std::getline(in, line)) throw ManifestError(csv_path + ": empty manifest");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kHeader)
        throw ManifestError(csv_path + ": expected header '" + kHeader + "'");

    std::vector<ManifestEntry> entries;
    std::set<std::string> seen;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::string where = csv_path + ":" + std::to_string(lineno);
        auto f = split_csv(line);
        if (f.size() != 5) throw ManifestError(where + ": expected 5 fields, got " +
                                               std::to_string(f.size()));
        ManifestEntry e;
        e.image_id = f[0];
        e.path = f[1];
        e.fluence_class = parse_class(f[2], where);
        e.angle_class = parse_class(f[3], where);
        e.structure = f[4];
        if (e.image_id.empty()) throw ManifestError(where + ": empty image_id");
        if (e.structure != "wall" && e.structure != "hole")
            throw ManifestError(where + ": structure must be 'wall' or 'hole'");
        if (!seen.insert(e.image_id).second)
            throw ManifestError(where + ": duplicate image_id '" + e.image_id + "'");
        entries.push_back(std::move(e));
    }
    return entries;
}

void write_manifest(const std::vector<ManifestEntry>& entries, const std::string& csv_path) {
    std::ostringstream out;
    out << kHeader << "\n";
    for (const ManifestEntry& e : entries)
        out << e.image_id << "," << e.path << "," << e.fluence_class << "," << e.angle_class << ","
            << e.structure << "\n";
    write_file_atomic(csv_path, out.str());
}

std::string resolve_path(const std::string& manifest_csv_path, const std::string& entry_path) {
    std::filesystem::path p(entry_path);
    if (p.is_absolute()) return entry_path;
    return (std::filesystem::path(manifest_csv_path).parent_path() / p).string();
}

} // namespace skelgraph
