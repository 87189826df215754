#pragma once

#include <string>
#include <utility>
#include <vector>

#include "skelgraph/image.hpp"

namespace skelgraph {

struct GraphNode {
    int id = 0;
    int row = 0;
    int col = 0;
    int degree = 0;

    bool operator==(const GraphNode&) const = default;
};

// Pixel-level skeleton graph: nodes are skeleton pixels with at least one
// 8-neighbor in the skeleton, edges are 8-adjacent pixel pairs. Node ids run
// 0..n-1 in row-major coordinate order; edges satisfy u < v and are sorted
// lexicographically.
struct SkeletonGraph {
    int height = 0;
    int width = 0;
    std::vector<GraphNode> nodes;
    std::vector<std::pair<int, int>> edges;
    int isolated_pixels = 0; // skeleton pixels excluded for having no neighbor

    bool operator==(const SkeletonGraph&) const = default;
};

struct NodeClass {
    int node_id = 0;
    bool branch = false; // degree >= 3; otherwise endpoint (degree <= 2)
};

// Chains of degree-2 pixels contracted into single edges between anchor nodes
// (pixels of degree != 2). A pure cycle collapses to its lowest row-major
// pixel with a self-path. path_length_pixels counts interior chain pixels, so
// anchors.size() + sum(path_length_pixels) equals the pixel graph node count.
struct CondensedEdge {
    int a = 0; // anchor node ids from the pixel graph, a <= b
    int b = 0;
    int path_length_pixels = 0;
};

struct CondensedGraph {
    std::vector<int> anchors; // ascending pixel-graph node ids
    std::vector<CondensedEdge> edges;
};

SkeletonGraph build_pixel_graph(const SkeletonImage& skel);

std::vector<NodeClass> classify_nodes(const SkeletonGraph& g);

CondensedGraph condense_graph(const SkeletonGraph& g);

// Simple graph over the anchors of a condensed graph: parallel paths are
// merged and self-paths dropped, node ids reassigned 0..m-1 in row-major
// order. Used when embedding the condensed variant.
SkeletonGraph condensed_to_simple_graph(const SkeletonGraph& g, const CondensedGraph& c);

// Neighbor lists indexed by node id, each sorted ascending.
std::vector<std::vector<int>> adjacency_lists(const SkeletonGraph& g);

// Binary background (white foreground on black), yellow segments between edge
// endpoints, then node markers on top: red for branch points, green for
// endpoints. Throws ContractError if a node lies outside the background.
RgbImage render_overlay(const BinaryImage& bin, const SkeletonGraph& g,
                        const std::vector<NodeClass>& classes);

// Canonical key-sorted JSON:
// {"dims":[h,w],"edges":[[u,v],...],"nodes":[{"coord":[r,c],"degree":d,"id":i},...]}
std::string graph_to_json(const SkeletonGraph& g);
SkeletonGraph graph_from_json(const std::string& text);

} // namespace skelgraph
