#pragma once

#include <vector>

#include <viscenter/polygon.hpp>

namespace fixtures {

using viscenter::Point2;

inline viscenter::Polygon square() { return viscenter::validate_polygon(std::vector<Point2>{{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

inline viscenter::Polygon lshape() {
    return viscenter::validate_polygon(std::vector<Point2>{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
}

inline viscenter::Polygon zigzag() {
    return viscenter::validate_polygon(
        std::vector<Point2>{{0, 0}, {6, 0}, {6, 4}, {4, 4}, {4, 2}, {2, 2}, {2, 4}, {0, 4}});
}

inline int vertex_index(const viscenter::Polygon& P, Point2 p) {
    for (int i = 0; i < P.size(); ++i)
        if (P[i] == p) return i;
    return -1;
}

}  // namespace fixtures
