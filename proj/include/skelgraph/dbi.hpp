#pragma once

#include <string>
#include <vector>

#include "skelgraph/pca.hpp"

namespace skelgraph {

struct LabeledPoints {
    DataMatrix points;               // N x d
    std::vector<std::string> labels; // N class identifiers
};

// Per-cluster statistics plus the Davies-Bouldin index:
//   DBI = (1/K) * sum_i max_{j != i} (S_i + S_j) / d(mu_i, mu_j)
// with S_i the mean Euclidean distance of members to the centroid and d the
// Euclidean centroid distance. The stored fields reproduce dbi exactly.
struct DbiReport {
    std::string grouping_name;
    int k = 0;
    std::vector<std::string> labels;            // sorted cluster labels
    std::vector<int> sizes;                     // |C_i|
    std::vector<std::vector<double>> centroids; // mu_i
    std::vector<double> scatters;               // S_i
    std::vector<std::vector<double>> centroid_dist; // K x K, zero diagonal
    double dbi = 0.0;
};

// Throws AnalysisError when fewer than two labels are present or when two
// centroids coincide (the error names the offending pair).
DbiReport davies_bouldin(const LabeledPoints& p, const std::string& grouping_name = "");

} // namespace skelgraph
