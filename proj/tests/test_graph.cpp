#include <doctest.h>

#include <numeric>

#include "oracles.hpp"
#include "skelgraph/graph.hpp"
#include "skelgraph/skeletonize.hpp"

using namespace skelgraph;

namespace {

SkeletonImage from_rows(const std::vector<std::string>& rows) {
    SkeletonImage img(static_cast<int>(rows[0].size()), static_cast<int>(rows.size()));
    for (int r = 0; r < img.height; ++r)
        for (int c = 0; c < img.width; ++c) img.at(r, c) = rows[r][c] == '#' ? 1 : 0;
    return img;
}

// 5-pixel diagonal cross: the only 5-pixel cross whose arms are not mutually
// adjacent under 8-connectivity.
SkeletonImage diagonal_cross() {
    return from_rows({
        "#.#",
        ".#.",
        "#.#",
    });
}

// pure 8-cycle: every pixel has exactly two 8-neighbors
SkeletonImage octagon_ring() {
    return from_rows({
        ".##.",
        "#..#",
        "#..#",
        ".##.",
    });
}

int degree_sum(const SkeletonGraph& g) {
    return std::accumulate(g.nodes.begin(), g.nodes.end(), 0,
                           [](int acc, const GraphNode& n) { return acc + n.degree; });
}

void check_invariants(const SkeletonGraph& g) {
    // handshake lemma
    CHECK(degree_sum(g) == 2 * static_cast<int>(g.edges.size()));
    // stored degree equals recomputed incidence count
    std::vector<int> recount(g.nodes.size(), 0);
    for (auto [u, v] : g.edges) {
        CHECK(u < v);
        ++recount[u];
        ++recount[v];
    }
    for (const GraphNode& n : g.nodes) CHECK(n.degree == recount[n.id]);
    // ids run 0..n-1 in row-major coordinate order
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        CHECK(g.nodes[i].id == static_cast<int>(i));
        if (i > 0) {
            const GraphNode& a = g.nodes[i - 1];
            const GraphNode& b = g.nodes[i];
            CHECK((a.row < b.row || (a.row == b.row && a.col < b.col)));
        }
    }
    // edges sorted, no duplicates
    for (std::size_t i = 1; i < g.edges.size(); ++i) CHECK(g.edges[i - 1] < g.edges[i]);
}

void check_condensation(const SkeletonGraph& g) {
    CondensedGraph c = condense_graph(g);
    int path_total = 0;
    for (const CondensedEdge& e : c.edges) path_total += e.path_length_pixels;
    CHECK(static_cast<int>(c.anchors.size()) + path_total == static_cast<int>(g.nodes.size()));
    for (int a : c.anchors) CHECK(a < static_cast<int>(g.nodes.size()));
}

} // namespace

TEST_CASE("1x5 line: path graph by construction") {
    SkeletonGraph g = build_pixel_graph(from_rows({"#####"}));
    REQUIRE(g.nodes.size() == 5);
    REQUIRE(g.edges.size() == 4);
    std::vector<int> degrees;
    for (const auto& n : g.nodes) degrees.push_back(n.degree);
    CHECK(degrees == std::vector<int>{1, 2, 2, 2, 1});
    check_invariants(g);

    auto classes = classify_nodes(g);
    for (const NodeClass& nc : classes) CHECK_FALSE(nc.branch); // all deg <= 2 -> endpoint

    CondensedGraph c = condense_graph(g);
    CHECK(c.anchors == std::vector<int>{0, 4});
    REQUIRE(c.edges.size() == 1);
    CHECK(c.edges[0].a == 0);
    CHECK(c.edges[0].b == 4);
    CHECK(c.edges[0].path_length_pixels == 3);
}

TEST_CASE("5-pixel cross: center degree 4, arms degree 1") {
    SkeletonGraph g = build_pixel_graph(diagonal_cross());
    REQUIRE(g.nodes.size() == 5);
    REQUIRE(g.edges.size() == 4);
    CHECK(g.nodes[2].degree == 4); // center (1,1) is id 2 in row-major order
    for (int id : {0, 1, 3, 4}) CHECK(g.nodes[id].degree == 1);
    check_invariants(g);

    auto classes = classify_nodes(g);
    int branches = 0;
    for (const NodeClass& nc : classes) branches += nc.branch;
    CHECK(branches == 1);
    CHECK(classes[2].branch);

    CondensedGraph c = condense_graph(g);
    CHECK(c.anchors.size() == 5);
    CHECK(c.edges.size() == 4);
    for (const CondensedEdge& e : c.edges) CHECK(e.path_length_pixels == 0);
}

TEST_CASE("two diagonal pixels share an edge (8-adjacency includes diagonals)") {
    SkeletonGraph g = build_pixel_graph(from_rows({"#.", ".#"}));
    CHECK(g.nodes.size() == 2);
    REQUIRE(g.edges.size() == 1);
    CHECK(g.edges[0] == std::pair<int, int>{0, 1});
}

TEST_CASE("8-pixel ring condenses to one representative with a self-path") {
    SkeletonGraph g = build_pixel_graph(octagon_ring());
    REQUIRE(g.nodes.size() == 8);
    REQUIRE(g.edges.size() == 8);
    for (const auto& n : g.nodes) CHECK(n.degree == 2);
    check_invariants(g);

    CondensedGraph c = condense_graph(g);
    REQUIRE(c.anchors.size() == 1);
    CHECK(c.anchors[0] == 0); // lowest row-major pixel
    REQUIRE(c.edges.size() == 1);
    CHECK(c.edges[0].a == 0);
    CHECK(c.edges[0].b == 0);
    CHECK(c.edges[0].path_length_pixels == 7);
}

TEST_CASE("isolated pixels are excluded and counted") {
    SkeletonImage img = from_rows({
        "##...",
        ".....",
        "...#.",
    });
    SkeletonGraph g = build_pixel_graph(img);
    CHECK(g.nodes.size() == 2);
    CHECK(g.isolated_pixels == 1);
}

TEST_CASE("empty graph: no nodes, empty classification") {
    SkeletonGraph g = build_pixel_graph(SkeletonImage(8, 8, 0));
    CHECK(g.nodes.empty());
    CHECK(classify_nodes(g).empty());
    check_condensation(g);
}

TEST_CASE("invariants hold on skeletonized corpus shapes") {
    for (const BinaryImage& shape : oracles::shape_corpus(12)) {
        SkeletonGraph g = build_pixel_graph(skeletonize(shape));
        check_invariants(g);
        check_condensation(g);
    }
}

TEST_CASE("identical skeletons give identical graphs and JSON") {
    BinaryImage shape = oracles::shape_corpus(3)[2];
    SkeletonImage skel = skeletonize(shape);
    SkeletonGraph a = build_pixel_graph(skel);
    SkeletonGraph b = build_pixel_graph(skel);
    CHECK(a == b);
    CHECK(graph_to_json(a) == graph_to_json(b));
}

TEST_CASE("graph JSON uses the canonical key-sorted schema") {
    SkeletonGraph g = build_pixel_graph(from_rows({"##"}));
    CHECK(graph_to_json(g) ==
          R"({"dims":[1,2],"edges":[[0,1]],"nodes":[{"coord":[0,0],"degree":1,"id":0},{"coord":[0,1],"degree":1,"id":1}]})");
    SkeletonGraph back = graph_from_json(graph_to_json(g));
    CHECK(back.nodes.size() == g.nodes.size());
    CHECK(back.edges == g.edges);
    CHECK(graph_to_json(back) == graph_to_json(g));
}

TEST_CASE("graph JSON round-trips a corpus graph") {
    SkeletonGraph g = build_pixel_graph(skeletonize(oracles::shape_corpus(6)[5]));
    CHECK(graph_to_json(graph_from_json(graph_to_json(g))) == graph_to_json(g));
    CHECK_THROWS_AS(graph_from_json("{"), FormatError);
    CHECK_THROWS_AS(graph_from_json(R"({"dims":[1,1],"edges":[],"nodes":[{"coord":[0,0],"degree":0,"id":5}]})"),
                    FormatError);
}

TEST_CASE("condensed graph reduces to a simple anchor graph") {
    // theta shape: ring with a chord produces junctions and parallel paths
    SkeletonImage img = from_rows({
        ".###.",
        "#...#",
        "#####",
        "#...#",
        ".###.",
    });
    SkeletonGraph g = build_pixel_graph(img);
    CondensedGraph c = condense_graph(g);
    check_condensation(g);
    SkeletonGraph simple = condensed_to_simple_graph(g, c);
    // simple graphs carry no self-loops or duplicate edges
    for (std::size_t i = 0; i < simple.edges.size(); ++i) {
        CHECK(simple.edges[i].first < simple.edges[i].second);
        if (i > 0) CHECK(simple.edges[i - 1] < simple.edges[i]);
    }
    CHECK(simple.nodes.size() == c.anchors.size());
}

TEST_CASE("overlay: empty graph over empty image is all black") {
    BinaryImage bin(4, 3, 0);
    RgbImage img = render_overlay(bin, SkeletonGraph{}, {});
    for (auto v : img.data) CHECK(v == 0);
}

TEST_CASE("overlay: single edge colors both pixels as nodes") {
    SkeletonImage skel = from_rows({"##"});
    SkeletonGraph g = build_pixel_graph(skel);
    RgbImage img = render_overlay(skel, g, classify_nodes(g));
    const std::uint8_t* p0 = img.pixel(0, 0);
    const std::uint8_t* p1 = img.pixel(0, 1);
    // both endpoints, so green node markers over the yellow segment
    CHECK((p0[0] == 0 && p0[1] == 255 && p0[2] == 0));
    CHECK((p1[0] == 0 && p1[1] == 255 && p1[2] == 0));
}

TEST_CASE("overlay of the 5-pixel cross has one red and four green pixels") {
    SkeletonImage skel = diagonal_cross();
    SkeletonGraph g = build_pixel_graph(skel);
    RgbImage img = render_overlay(skel, g, classify_nodes(g));
    int red = 0, green = 0;
    for (int r = 0; r < img.height; ++r)
        for (int c = 0; c < img.width; ++c) {
            const std::uint8_t* p = img.pixel(r, c);
            if (p[0] == 255 && p[1] == 0 && p[2] == 0) ++red;
            if (p[0] == 0 && p[1] == 255 && p[2] == 0) ++green;
        }
    CHECK(red == 1);
    CHECK(green == 4);
}

TEST_CASE("overlay rejects out-of-bounds graph coordinates") {
    SkeletonGraph g;
    g.width = 10;
    g.height = 10;
    g.nodes.push_back({0, 5, 5, 0});
    BinaryImage small(3, 3, 0);
    CHECK_THROWS_AS(render_overlay(small, g, classify_nodes(g)), ContractError);
}
