#pragma once

#include "chroma/delaunay.hpp"

#include <limits>
#include <vector>

namespace chroma {

struct CellRef {
    int8_t dim = 0; // 0 vertex, 1 edge, 2 triangle
    int idx = 0;

    friend bool operator==(const CellRef&, const CellRef&) = default;
};

// Radius function on a Delaunay mosaic: per-cell value of the smallest empty
// circle through the cell's vertices, criticality flags, and the total
// filtration order (value, dimension, vertex indices).
struct FilteredMosaic {
    Mosaic mosaic;
    std::vector<double> edge_value;
    std::vector<double> tri_value;
    std::vector<Point2> tri_center;   // circumcenters, covering-frame coords
    std::vector<double> edge_half_length;
    std::vector<char> edge_critical;  // Gabriel edges
    std::vector<char> tri_critical;   // acute triangles
    std::vector<CellRef> order;
};

// Triangle value: circumradius. Edge value: half-length when the diametric
// circle is empty (Gabriel), otherwise the smallest circumradius among
// incident triangles whose circumcenter lies across the edge. Vertices have
// value 0 and are critical. Criticality decisions are exact; boundary cases
// (right angles, points exactly on a diametric circle) resolve to
// non-critical.
FilteredMosaic radius_values(Mosaic mosaic);

// Cells sorted by (value, dimension, vertex index tuple); every prefix is a
// simplicial complex.
std::vector<CellRef> filtration_order(const FilteredMosaic& fm);

struct Box {
    double xmin = -std::numeric_limits<double>::infinity();
    double ymin = -std::numeric_limits<double>::infinity();
    double xmax = std::numeric_limits<double>::infinity();
    double ymax = std::numeric_limits<double>::infinity();

    static Box everything() { return Box{}; }
    static Box unit_square() { return Box{0.0, 0.0, 1.0, 1.0}; }
    bool contains(const Point2& p) const {
        return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
    }
};

// Counts and power sums of radii of critical cells with value <= r0 whose
// centers (edge midpoints, triangle circumcenters) lie in the region. On the
// torus the centers are wrapped into [0,1)^2 before the region test.
struct MomentCounters {
    double n1 = 0, f1 = 0, s1 = 0; // critical edges: count, sum r, sum r^2
    double n2 = 0, f2 = 0, s2 = 0; // critical triangles
};

MomentCounters moment_counters(const FilteredMosaic& fm, double r0, const Box& region);

} // namespace chroma
