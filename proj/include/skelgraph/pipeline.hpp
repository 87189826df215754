#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "skelgraph/analysis.hpp"
#include "skelgraph/graph.hpp"
#include "skelgraph/image.hpp"
#include "skelgraph/manifest.hpp"

namespace skelgraph {

struct PipelineConfig {
    double blur_sigma = 1.0;
    int blur_radius = 2;
    int threshold = 100;
    std::uint64_t gcn_seed = 42;
    int pca_components = 2;
    bool dbi_on_embedding = false; // --dbi-space embedding
    bool embed_condensed = false;  // --graph-variant condensed
    bool analyze_holes = true;
    int workers = 0; // 0 = hardware concurrency; does not affect output bytes

    void validate() const;
};

struct ImageStats {
    std::string graph_id;
    int nodes = 0;
    int edges = 0;
    int isolated_pixels = 0;
    int degree1_nodes = 0; // strict endpoints, distinct from the deg<=2 class
};

struct PipelineOutcome {
    int exit_code = 0;
    std::vector<std::string> failures;
    std::vector<ImageStats> images;
    std::map<std::string, std::string> output_digests; // out_dir-relative -> fnv1a64
};

// Single-stage building blocks. The pipeline, the stage subcommands, and the
// serialized intermediates all route through these, so a staged run
// reproduces the monolithic run byte for byte.
BinaryImage stage_preprocess(const GrayImage& img, const PipelineConfig& cfg, bool invert_output);
SkeletonImage stage_skeletonize(const BinaryImage& bin);
SkeletonGraph stage_graph(const SkeletonImage& skel);
std::array<double, kEmbedDim> stage_embed(const SkeletonGraph& pixel_graph, const GcnWeights& w,
                                          bool condensed);

// The grouping/subset pairs the pipeline analyzes: structure plus
// fluence x {both,walls,holes} and angle x {both,walls,holes}; walls-only
// when hole analysis is disabled.
std::vector<std::pair<Grouping, Subset>> standard_analyses(bool analyze_holes);

// Runs preprocess -> skeletonize -> graph -> embed for the wall pass and (by
// default) the inverted hole pass of every manifest image, then the grouping
// analyses. Artifacts land under out_dir; a run summary records the config
// and a content digest of every output. Per-image failures are skipped and
// reported with a nonzero exit code; manifest errors throw.
PipelineOutcome run_pipeline(const std::string& manifest_path, const PipelineConfig& cfg,
                             const std::string& out_dir);

} // namespace skelgraph
