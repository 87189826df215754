#include "skelgraph/dbi.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace skelgraph {

DbiReport davies_bouldin(const LabeledPoints& p, const std::string& grouping_name) {
    const int n = p.points.rows, d = p.points.cols;
    if (n < 1 || static_cast<int>(p.labels.size()) != n)
        throw AnalysisError("davies_bouldin: labels must match point count");

    std::map<std::string, std::vector<int>> clusters;
    for (int i = 0; i < n; ++i) clusters[p.labels[i]].push_back(i);

    DbiReport rep;
    rep.grouping_name = grouping_name;
    rep.k = static_cast<int>(clusters.size());
    if (rep.k < 2)
        throw AnalysisError("davies_bouldin: index undefined for fewer than 2 clusters (got " +
                            std::to_string(rep.k) + ")");

    for (auto& [label, members] : clusters) {
        rep.labels.push_back(label);
        rep.sizes.push_back(static_cast<int>(members.size()));
        std::vector<double> mu(d, 0.0);
        for (int i : members)
            for (int c = 0; c < d; ++c) mu[c] += p.points.at(i, c);
        for (double& v : mu) v /= static_cast<double>(members.size());
        double scatter = 0.0;
        for (int i : members) {
            double sq = 0.0;
            for (int c = 0; c < d; ++c) {
                double diff = p.points.at(i, c) - mu[c];
                sq += diff * diff;
            }
            scatter += std::sqrt(sq);
        }
        rep.scatters.push_back(scatter / static_cast<double>(members.size()));
        rep.centroids.push_back(std::move(mu));
    }

    rep.centroid_dist.assign(rep.k, std::vector<double>(rep.k, 0.0));
    for (int i = 0; i < rep.k; ++i) {
        for (int j = i + 1; j < rep.k; ++j) {
            double sq = 0.0;
            for (int c = 0; c < d; ++c) {
                double diff = rep.centroids[i][c] - rep.centroids[j][c];
                sq += diff * diff;
            }
            double dist = std::sqrt(sq);
            if (dist == 0.0)
                throw AnalysisError("davies_bouldin: clusters '" + rep.labels[i] + "' and '" +
                                    rep.labels[j] + "' have coincident centroids");
            rep.centroid_dist[i][j] = rep.centroid_dist[j][i] = dist;
        }
    }

    double total = 0.0;
    for (int i = 0; i < rep.k; ++i) {
        double worst = 0.0;
        for (int j = 0; j < rep.k; ++j) {
            if (j == i) continue;
            worst = std::max(worst, (rep.scatters[i] + rep.scatters[j]) / rep.centroid_dist[i][j]);
        }
        total += worst;
    }
    rep.dbi = total / static_cast<double>(rep.k);
    return rep;
}

} // namespace skelgraph
