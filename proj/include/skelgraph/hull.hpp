#pragma once

#include <map>
#include <string>
#include <vector>

#include "skelgraph/dbi.hpp"

namespace skelgraph {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Point2&) const = default;
};

// Monotone-chain convex hull, counterclockwise, collinear points on hull
// edges excluded. One or two distinct points return the point or segment.
std::vector<Point2> convex_hull(std::vector<Point2> points);

// Per-class hulls of labeled 2D points, keyed by label.
std::map<std::string, std::vector<Point2>> convex_hulls(const LabeledPoints& p);

// True when q is inside or on the (convex, counterclockwise) polygon; handles
// point and segment degeneracies.
bool point_in_hull(const std::vector<Point2>& hull, const Point2& q);

} // namespace skelgraph
