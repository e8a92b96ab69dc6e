#pragma once

#include "chroma/filtration.hpp"

#include <utility>
#include <vector>

namespace chroma {

struct Diagram {
    int degree = 0;
    std::vector<std::pair<double, double>> pairs; // finite (birth, death)
    std::vector<double> essential_births;         // classes with no finite death

    int essential() const { return static_cast<int>(essential_births.size()); }
};

struct SpanningTree {
    std::vector<int> edges; // edge indices into the mosaic
    double total_length = 0.0;
};

// Sum of (death - birth) over finite pairs; essential classes contribute 0.
double one_norm(const Diagram& d);

// Minimum spanning tree = the merge (death-giving) edges of the filtration.
SpanningTree emst(const FilteredMosaic& fm);

// Degree-0 persistence: one pair (0, value(e)) per merge edge.
Diagram h0_diagram(const FilteredMosaic& fm);

// Degree-1 persistence by column reduction over the 2-element field in
// filtration order.
Diagram h1_diagram(const FilteredMosaic& fm);

// All critical edges.
std::vector<int> gabriel_graph(const FilteredMosaic& fm);

// One reduction pass computing all of the above; the individual operations
// are thin wrappers.
struct AlphaPersistence {
    SpanningTree tree;
    Diagram h0;
    Diagram h1;
};
AlphaPersistence alpha_persistence(const FilteredMosaic& fm);

} // namespace chroma
