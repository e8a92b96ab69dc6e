#pragma once

#include "chroma/geom.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace chroma {

// Integer translation of a vertex copy in the periodic (torus) setting;
// always {0,0} in the unit square.
using WrapOffset = std::array<int8_t, 2>;

// Delaunay mosaic of a finite planar point set, in the unit square or on the
// flat torus. Cells reference base-point indices plus wrap offsets; all
// positions live in the covering plane, with each cell anchored so that its
// lowest-index vertex carries offset {0,0}.
struct Mosaic {
    struct Edge {
        int v[2];
        WrapOffset off[2];
        int tri[2];          // incident triangles; tri[1] == -1 on the square hull
        int opp[2];          // opposite vertex of tri[k], -1 if absent
        WrapOffset opp_off[2]; // offset of opp[k] in this edge's frame
    };
    struct Triangle {
        int v[3];
        WrapOffset off[3];
        int edge[3]; // edge[i] joins corners (i+1)%3 and (i+2)%3
    };

    std::vector<Point2> points;
    Topology topology = Topology::UnitSquare;
    std::vector<Edge> edges;
    std::vector<Triangle> triangles;

    Point2 pos(int v, WrapOffset o) const {
        return Point2{points[v].x + static_cast<double>(o[0]),
                      points[v].y + static_cast<double>(o[1])};
    }
    Point2 edge_pos(int e, int end) const { return pos(edges[e].v[end], edges[e].off[end]); }
    Point2 tri_pos(int t, int corner) const {
        return pos(triangles[t].v[corner], triangles[t].off[corner]);
    }
    Point2 edge_opp_pos(int e, int slot) const {
        return pos(edges[e].opp[slot], edges[e].opp_off[slot]);
    }
    std::size_t vertex_count() const { return points.size(); }
};

// Build the Delaunay mosaic. Point order determines insertion order through a
// fixed internal shuffle, so the result is a pure function of the input.
//
// UnitSquare: requires >= 3 points, all distinct and not all collinear; the
// result triangulates the convex hull.
// Torus: requires all points in [0,1)^2; triangulates 3x3 translated copies
// and keeps the cells anchored in the central copy, rejecting the input with
// TorusRangeError if any kept cell's circumdisk cannot be certified to lie
// inside the covered patch.
Mosaic triangulate(std::span<const Point2> points, Topology topology);

// Exhaustive empty-circumdisk check with exact predicates: true iff no vertex
// (or vertex translate, on the torus) lies strictly inside any triangle's
// circumcircle.
bool validate(const Mosaic& mosaic);

} // namespace chroma
