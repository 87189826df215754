#include "skelgraph/pca.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace skelgraph {

PcaModel pca_fit(const DataMatrix& x, int k) {
    const int n = x.rows, d = x.cols;
    if (n < 2) throw AnalysisError("pca_fit: need at least 2 samples");
    if (k < 1 || k > std::min(n, d))
        throw ParamError("pca_fit: k must be in [1, min(N, d)]");

    Eigen::MatrixXd m(n, d);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < d; ++c) m(r, c) = x.at(r, c);

    Eigen::RowVectorXd mean = m.colwise().mean();
    m.rowwise() -= mean;

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinV);
    const Eigen::MatrixXd& v = svd.matrixV();
    const Eigen::VectorXd& s = svd.singularValues();

    PcaModel model;
    model.mean.assign(mean.data(), mean.data() + d);
    model.components.resize(k);
    model.explained_variance.resize(k);
    for (int p = 0; p < k; ++p) {
        Eigen::VectorXd comp = v.col(p);
        int arg = 0;
        double best = std::abs(comp(0));
        for (int c = 1; c < d; ++c) {
            double a = std::abs(comp(c));
            if (a > best) {
                best = a;
                arg = c;
            }
        }
        if (comp(arg) < 0.0) comp = -comp;
        model.components[p].assign(comp.data(), comp.data() + d);
        model.explained_variance[p] = s(p) * s(p) / static_cast<double>(n - 1);
    }
    return model;
}

DataMatrix pca_project(const PcaModel& m, const DataMatrix& x) {
    const int d = static_cast<int>(m.mean.size());
    const int k = static_cast<int>(m.components.size());
    if (x.cols != d)
        throw AnalysisError("pca_project: data has " + std::to_string(x.cols) +
                            " columns, model expects " + std::to_string(d));
    DataMatrix out;
    out.rows = x.rows;
    out.cols = k;
    out.values.assign(static_cast<std::size_t>(x.rows) * k, 0.0);
    for (int r = 0; r < x.rows; ++r) {
        for (int p = 0; p < k; ++p) {
            double acc = 0.0;
            for (int c = 0; c < d; ++c) acc += (x.at(r, c) - m.mean[c]) * m.components[p][c];
            out.at(r, p) = acc;
        }
    }
    return out;
}

} // namespace skelgraph
