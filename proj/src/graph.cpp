#include "skelgraph/graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include <json.hpp>

namespace skelgraph {

namespace {
// Forward 8-neighbors in row-major id order: (0,+1), (+1,-1), (+1,0), (+1,+1).
constexpr int kFwdR[4] = {0, 1, 1, 1};
constexpr int kFwdC[4] = {1, -1, 0, 1};
} // namespace

SkeletonGraph build_pixel_graph(const SkeletonImage& skel) {
    const int h = skel.height, w = skel.width;
    SkeletonGraph g;
    g.height = h;
    g.width = w;

    std::vector<int> id(static_cast<std::size_t>(h) * w, -1);
    auto has_neighbor = [&](int r, int c) {
        for (int dr = -1; dr <= 1; ++dr)
            for (int dc = -1; dc <= 1; ++dc) {
                if (dr == 0 && dc == 0) continue;
                int rr = r + dr, cc = c + dc;
                if (skel.in_bounds(rr, cc) && skel.at(rr, cc)) return true;
            }
        return false;
    };

    int next = 0;
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            if (!skel.at(r, c)) continue;
            if (has_neighbor(r, c)) {
                id[static_cast<std::size_t>(r) * w + c] = next;
                g.nodes.push_back({next, r, c, 0});
                ++next;
            } else {
                ++g.isolated_pixels;
            }
        }
    }

    for (const GraphNode& n : g.nodes) {
        for (int k = 0; k < 4; ++k) {
            int rr = n.row + kFwdR[k], cc = n.col + kFwdC[k];
            if (!skel.in_bounds(rr, cc)) continue;
            int v = id[static_cast<std::size_t>(rr) * w + cc];
            if (v >= 0) g.edges.emplace_back(n.id, v);
        }
    }
    for (auto [u, v] : g.edges) {
        ++g.nodes[u].degree;
        ++g.nodes[v].degree;
    }
    return g;
}

std::vector<NodeClass> classify_nodes(const SkeletonGraph& g) {
    std::vector<NodeClass> out;
    out.reserve(g.nodes.size());
    for (const GraphNode& n : g.nodes) out.push_back({n.id, n.degree >= 3});
    return out;
}

std::vector<std::vector<int>> adjacency_lists(const SkeletonGraph& g) {
    std::vector<std::vector<int>> adj(g.nodes.size());
    for (auto [u, v] : g.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& row : adj) std::sort(row.begin(), row.end());
    return adj;
}

CondensedGraph condense_graph(const SkeletonGraph& g) {
    CondensedGraph cg;
    const int n = static_cast<int>(g.nodes.size());
    if (n == 0) return cg;

    auto adj = adjacency_lists(g);
    std::vector<char> is_anchor(n, 0);
    for (int i = 0; i < n; ++i) {
        if (g.nodes[i].degree != 2) {
            is_anchor[i] = 1;
            cg.anchors.push_back(i);
        }
    }

    // Half-edges consumed by chain walks, keyed (from, to).
    std::set<std::pair<int, int>> used;
    std::vector<char> interior(n, 0);

    auto walk = [&](int anchor, int first) {
        // follow degree-2 pixels until the next anchor
        int prev = anchor, cur = first, length = 0;
        while (!is_anchor[cur]) {
            interior[cur] = 1;
            ++length;
            int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
            prev = cur;
            cur = nxt;
        }
        used.insert({anchor, first});
        used.insert({cur, prev});
        cg.edges.push_back({std::min(anchor, cur), std::max(anchor, cur), length});
    };

    for (int a : cg.anchors)
        for (int nb : adj[a])
            if (!used.count({a, nb})) walk(a, nb);

    // Remaining degree-2 pixels form pure cycles; the lowest id represents one.
    for (int i = 0; i < n; ++i) {
        if (is_anchor[i] || interior[i]) continue;
        cg.anchors.push_back(i);
        interior[i] = 1;
        int prev = i, cur = adj[i][0], length = 0;
        while (cur != i) {
            interior[cur] = 1;
            ++length;
            int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
            prev = cur;
            cur = nxt;
        }
        cg.edges.push_back({i, i, length});
    }

    std::sort(cg.anchors.begin(), cg.anchors.end());
    std::sort(cg.edges.begin(), cg.edges.end(), [](const CondensedEdge& x, const CondensedEdge& y) {
        return std::tie(x.a, x.b, x.path_length_pixels) < std::tie(y.a, y.b, y.path_length_pixels);
    });
    return cg;
}

SkeletonGraph condensed_to_simple_graph(const SkeletonGraph& g, const CondensedGraph& c) {
    SkeletonGraph out;
    out.height = g.height;
    out.width = g.width;
    std::vector<int> remap(g.nodes.size(), -1);
    for (std::size_t i = 0; i < c.anchors.size(); ++i) {
        const GraphNode& src = g.nodes[c.anchors[i]];
        remap[c.anchors[i]] = static_cast<int>(i);
        out.nodes.push_back({static_cast<int>(i), src.row, src.col, 0});
    }
    std::set<std::pair<int, int>> uniq;
    for (const CondensedEdge& e : c.edges) {
        if (e.a == e.b) continue;
        uniq.insert({remap[e.a], remap[e.b]});
    }
    for (auto [u, v] : uniq) {
        out.edges.emplace_back(u, v);
        ++out.nodes[u].degree;
        ++out.nodes[v].degree;
    }
    return out;
}

namespace {

void draw_segment(RgbImage& img, int r0, int c0, int r1, int c1, std::uint8_t red,
                  std::uint8_t green, std::uint8_t blue) {
    int dr = std::abs(r1 - r0), dc = std::abs(c1 - c0);
    int sr = r0 < r1 ? 1 : -1, sc = c0 < c1 ? 1 : -1;
    int err = (dc > dr ? dc : -dr) / 2;
    for (;;) {
        img.set(r0, c0, red, green, blue);
        if (r0 == r1 && c0 == c1) break;
        int e2 = err;
        if (e2 > -dc) {
            err -= dr;
            c0 += sc;
        }
        if (e2 < dr) {
            err += dc;
            r0 += sr;
        }
    }
}

} // namespace

RgbImage render_overlay(const BinaryImage& bin, const SkeletonGraph& g,
                        const std::vector<NodeClass>& classes) {
    RgbImage img(bin.width, bin.height);
    for (int r = 0; r < bin.height; ++r)
        for (int c = 0; c < bin.width; ++c)
            if (bin.at(r, c)) img.set(r, c, 255, 255, 255);

    for (const GraphNode& n : g.nodes)
        if (!bin.in_bounds(n.row, n.col))
            throw ContractError("render_overlay: node " + std::to_string(n.id) +
                                " lies outside the image");

    for (auto [u, v] : g.edges)
        draw_segment(img, g.nodes[u].row, g.nodes[u].col, g.nodes[v].row, g.nodes[v].col, 255, 255,
                     0);

    for (const NodeClass& nc : classes) {
        const GraphNode& n = g.nodes[nc.node_id];
        if (nc.branch)
            img.set(n.row, n.col, 255, 0, 0);
        else
            img.set(n.row, n.col, 0, 255, 0);
    }
    return img;
}

std::string graph_to_json(const SkeletonGraph& g) {
    nlohmann::json j;
    j["dims"] = {g.height, g.width};
    j["edges"] = nlohmann::json::array();
    for (auto [u, v] : g.edges) j["edges"].push_back({u, v});
    j["nodes"] = nlohmann::json::array();
    for (const GraphNode& n : g.nodes) {
        nlohmann::json jn;
        jn["coord"] = {n.row, n.col};
        jn["degree"] = n.degree;
        jn["id"] = n.id;
        j["nodes"].push_back(jn);
    }
    return j.dump();
}

SkeletonGraph graph_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("graph JSON parse failed: ") + e.what());
    }
    SkeletonGraph g;
    try {
        g.height = j.at("dims").at(0).get<int>();
        g.width = j.at("dims").at(1).get<int>();
        int expect = 0;
        for (const auto& jn : j.at("nodes")) {
            GraphNode n;
            n.id = jn.at("id").get<int>();
            n.row = jn.at("coord").at(0).get<int>();
            n.col = jn.at("coord").at(1).get<int>();
            n.degree = jn.at("degree").get<int>();
            if (n.id != expect++) throw FormatError("graph JSON: node ids must run 0..n-1");
            g.nodes.push_back(n);
        }
        for (const auto& je : j.at("edges")) {
            int u = je.at(0).get<int>(), v = je.at(1).get<int>();
            if (u < 0 || v < 0 || u >= expect || v >= expect || u >= v)
                throw FormatError("graph JSON: edge endpoints must satisfy 0 <= u < v < n");
            g.edges.emplace_back(u, v);
        }
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("graph JSON schema mismatch: ") + e.what());
    }
    return g;
}

} // namespace skelgraph
