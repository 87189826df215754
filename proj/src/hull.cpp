#include "skelgraph/hull.hpp"

#include <algorithm>

namespace skelgraph {

namespace {

double cross(const Point2& o, const Point2& a, const Point2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

} // namespace

std::vector<Point2> convex_hull(std::vector<Point2> points) {
    std::sort(points.begin(), points.end(), [](const Point2& a, const Point2& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    points.erase(std::unique(points.begin(), points.end()), points.end());
    const std::size_t n = points.size();
    if (n <= 2) return points;

    std::vector<Point2> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) { // lower
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], points[i]) <= 0.0) --k;
        hull[k++] = points[i];
    }
    for (std::size_t i = n - 1, t = k + 1; i-- > 0;) { // upper
        while (k >= t && cross(hull[k - 2], hull[k - 1], points[i]) <= 0.0) --k;
        hull[k++] = points[i];
    }
    hull.resize(k - 1);
    return hull;
}

std::map<std::string, std::vector<Point2>> convex_hulls(const LabeledPoints& p) {
    if (p.points.cols != 2) throw AnalysisError("convex_hulls: points must be 2D");
    std::map<std::string, std::vector<Point2>> byClass;
    for (int i = 0; i < p.points.rows; ++i)
        byClass[p.labels[i]].push_back({p.points.at(i, 0), p.points.at(i, 1)});
    std::map<std::string, std::vector<Point2>> hulls;
    for (auto& [label, pts] : byClass) hulls[label] = convex_hull(std::move(pts));
    return hulls;
}

bool point_in_hull(const std::vector<Point2>& hull, const Point2& q) {
    if (hull.empty()) return false;
    if (hull.size() == 1) return hull[0] == q;
    if (hull.size() == 2) {
        // on the segment: collinear and within the bounding box
        if (cross(hull[0], hull[1], q) != 0.0) return false;
        return std::min(hull[0].x, hull[1].x) <= q.x && q.x <= std::max(hull[0].x, hull[1].x) &&
               std::min(hull[0].y, hull[1].y) <= q.y && q.y <= std::max(hull[0].y, hull[1].y);
    }
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Point2& a = hull[i];
        const Point2& b = hull[(i + 1) % hull.size()];
        if (cross(a, b, q) < 0.0) return false;
    }
    return true;
}

} // namespace skelgraph
