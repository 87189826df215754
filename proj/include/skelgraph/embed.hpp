#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "skelgraph/graph.hpp"

namespace skelgraph {

inline constexpr int kEmbedDim = 32;

// Uniform in [0,1) from the high 53 bits of an mt19937_64 draw. mt19937_64 is
// specified bit-exactly by the standard, so streams are portable.
inline double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Frozen random-feature GCN parameters. W1 is 1x32, W2 is 32x32 (row-major).
struct GcnWeights {
    std::uint64_t seed = 0;
    std::array<double, kEmbedDim> w1{};
    std::array<double, static_cast<std::size_t>(kEmbedDim) * kEmbedDim> w2{};
};

// Glorot-uniform entries, U(-a, a) with a = sqrt(6/(fan_in+fan_out)), drawn
// from mt19937_64(seed) in row-major order, W1 first.
GcnWeights init_weights(std::uint64_t seed);

std::string weights_to_json(const GcnWeights& w);
GcnWeights weights_from_json(const std::string& text);

// Symmetrically normalized adjacency with self-loops in CSR form:
// entry(i,j) = 1/sqrt((deg_i+1)(deg_j+1)) for j adjacent to i or j == i.
struct SparseSym {
    int n = 0;
    std::vector<int> row_ptr;
    std::vector<int> col;
    std::vector<double> val;
};

// Throws GraphError on an empty graph.
SparseSym normalized_adjacency(const SkeletonGraph& g);

// Two GCN layers on a constant scalar feature of 1, each followed by a
// rectifier, then global mean pooling over nodes in ascending id order.
std::array<double, kEmbedDim> embed(const SkeletonGraph& g, const GcnWeights& w);

struct Embedding {
    std::string graph_id;
    std::array<double, kEmbedDim> values{};
};

// CSV with header graph_id,e00..e31, rows sorted by graph_id, values printed
// with 17 significant digits so doubles round-trip exactly.
void write_embeddings_csv(std::vector<Embedding> rows, const std::string& path);
std::vector<Embedding> read_embeddings_csv(const std::string& path);

} // namespace skelgraph
