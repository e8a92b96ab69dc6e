#pragma once

#include "chroma/geom.hpp"

#include <span>
#include <utility>
#include <vector>

namespace chroma {

enum class LunarMode { Exact, Pruned };

// A lune is the intersection of two congruent disks centered at a color-0
// and a color-1 point; it becomes nonempty at half the pair distance.
struct Lune {
    int a = 0; // index into the color-0 points
    int b = 0; // index into the color-1 points
    double wake_radius = 0.0;
};

Lune make_lune(std::span<const Point2> points0, std::span<const Point2> points1, int a, int b,
               Topology topology);

// Radius at which the two lunes' regions first intersect: the smallest
// enclosing circle of the union of their defining point pairs. On the torus
// the points are lifted to a common frame; configurations too spread for a
// single lift fall back to an exhaustive search over integer translates.
double merge_radius(std::span<const Point2> points0, std::span<const Point2> points1,
                    const Lune& l1, const Lune& l2, Topology topology);

// Merge tree of the union of growing lunes. Vertices cost twice the birth
// radius, edges twice the merge radius; lunes waking inside an existing
// component create no vertex.
struct LunarTree {
    struct Birth {
        int a, b;
        double radius;
    };
    struct Merge {
        int a1, b1, a2, b2;
        double radius;
    };
    std::vector<Birth> births;
    std::vector<Merge> merges;
    // Elder-rule pairing of the sweep: (birth radius, merge radius) per
    // component that dies, in radius units.
    std::vector<std::pair<double, double>> pairs;
    double essential_birth = 0.0;
    double cost = 0.0; // sum of edge costs - sum of vertex costs + min vertex cost
};

// Exact mode considers every lune pair as a candidate merge edge (feasible to
// a few hundred points per color and meant as the oracle). Pruned mode
// restricts candidates to lune pairs sharing a defining point, which carries
// the same single-linkage structure, and stops once connectivity plus a
// covering-radius certificate make further events silent.
LunarTree lunar_emst(std::span<const Point2> points0, std::span<const Point2> points1,
                     Topology topology, LunarMode mode, bool audit = false);

// cost / 2: the 1-norm of the degree-1 relative diagram.
double relative1_norm(const LunarTree& tree);

} // namespace chroma
