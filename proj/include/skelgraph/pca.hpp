#pragma once

#include <vector>

#include "skelgraph/errors.hpp"

namespace skelgraph {

// Row-major N x d sample matrix.
struct DataMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> values;

    double at(int r, int c) const { return values[static_cast<std::size_t>(r) * cols + c]; }
    double& at(int r, int c) { return values[static_cast<std::size_t>(r) * cols + c]; }
};

struct PcaModel {
    std::vector<double> mean;                 // d
    std::vector<std::vector<double>> components; // k rows, each a unit d-vector
    std::vector<double> explained_variance;   // k, non-increasing, sigma^2/(N-1)
};

// Top-k right singular vectors of the centered matrix. Sign convention: the
// entry of largest magnitude in each component is positive (ties resolved to
// the lower index).
PcaModel pca_fit(const DataMatrix& x, int k);

// (X - mean) * components^T, N x k.
DataMatrix pca_project(const PcaModel& m, const DataMatrix& x);

} // namespace skelgraph
