#pragma once

#include <string>
#include <vector>

#include "skelgraph/dbi.hpp"
#include "skelgraph/embed.hpp"
#include "skelgraph/hull.hpp"
#include "skelgraph/manifest.hpp"
#include "skelgraph/pca.hpp"

namespace skelgraph {

enum class Grouping { Fluence, Angle, Structure };
enum class Subset { Walls, Holes, Both };

std::string to_string(Grouping g);
std::string to_string(Subset s);
Grouping grouping_from_string(const std::string& s);
Subset subset_from_string(const std::string& s);

struct AnalysisOptions {
    int pca_components = 2;
    bool dbi_on_embedding = false; // default: DBI in the projected space
};

// PCA projection of one analyzed subset plus its Davies-Bouldin report.
struct GroupingResult {
    Grouping grouping = Grouping::Structure;
    Subset subset = Subset::Both;
    std::vector<std::string> ids;    // graph ids, CSV row order
    std::vector<std::string> labels; // class label per point
    PcaModel pca;
    DataMatrix projected; // N x k
    DbiReport report;
};

// Joins embeddings with manifest labels, selects the subset, fits PCA, and
// scores cluster separation. Embedding ids of the form "<image_id>_wall" or
// "<image_id>_hole" take their structure label from the suffix; a bare id
// that matches a manifest row uses that row's structure column. Throws
// ManifestError listing ids with no manifest row.
GroupingResult run_grouping_analysis(const std::vector<Embedding>& embeddings,
                                     const std::vector<ManifestEntry>& manifest, Grouping grouping,
                                     Subset subset, const AnalysisOptions& opt = {});

// {"K":...,"clusters":[...],"dbi":...,"grouping":...,"pca":{...},"subset":...}
std::string report_to_json(const GroupingResult& r);

// CSV: graph_id,label,pc1..pck
void write_scatter_csv(const GroupingResult& r, const std::string& path);

// 2D scatter with per-class convex hull polygons.
void write_scatter_svg(const GroupingResult& r, const std::string& path);

} // namespace skelgraph
