#include "chroma/persistence.hpp"
#include "chroma/errors.hpp"

#include <algorithm>
#include <numeric>

namespace chroma {

namespace {

struct UnionFind {
    std::vector<int> parent, rank_;

    explicit UnionFind(std::size_t n) : parent(n), rank_(n, 0) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
        return true;
    }
};

// XOR-merge of two columns held as descending position lists.
void xor_into(std::vector<int>& col, const std::vector<int>& other, std::vector<int>& tmp) {
    tmp.clear();
    std::size_t i = 0, j = 0;
    while (i < col.size() && j < other.size()) {
        if (col[i] == other[j]) {
            ++i;
            ++j;
        } else if (col[i] > other[j]) {
            tmp.push_back(col[i++]);
        } else {
            tmp.push_back(other[j++]);
        }
    }
    while (i < col.size()) tmp.push_back(col[i++]);
    while (j < other.size()) tmp.push_back(other[j++]);
    col.swap(tmp);
}

} // namespace

double one_norm(const Diagram& d) {
    double sum = 0.0;
    for (const auto& [b, dth] : d.pairs) sum += dth - b;
    return sum;
}

AlphaPersistence alpha_persistence(const FilteredMosaic& fm) {
    const Mosaic& m = fm.mosaic;
    const std::size_t n = m.points.size();
    AlphaPersistence out;
    out.h0.degree = 0;
    out.h1.degree = 1;

    // Degree 0 and the spanning tree via union-find over the ordered edges.
    UnionFind uf(n);
    std::vector<char> edge_positive(m.edges.size(), 0);
    for (const CellRef& c : fm.order) {
        if (c.dim != 1) continue;
        const Mosaic::Edge& e = m.edges[c.idx];
        if (uf.unite(e.v[0], e.v[1])) {
            out.tree.edges.push_back(c.idx);
            out.tree.total_length += dist(m.edge_pos(c.idx, 0), m.edge_pos(c.idx, 1));
            out.h0.pairs.emplace_back(0.0, fm.edge_value[c.idx]);
        } else {
            edge_positive[c.idx] = 1;
        }
    }
    int components = 0;
    for (std::size_t v = 0; v < n; ++v)
        if (uf.find(static_cast<int>(v)) == static_cast<int>(v)) ++components;
    if (components != 1)
        throw InconsistencyError("alpha_persistence: mosaic is not connected");
    out.h0.essential_births.push_back(0.0);

    // Degree 1: reduce triangle columns over the edge rows in filtration order.
    const std::size_t cells = fm.order.size();
    std::vector<int> edge_pos(m.edges.size(), -1);
    for (std::size_t i = 0; i < cells; ++i)
        if (fm.order[i].dim == 1) edge_pos[fm.order[i].idx] = static_cast<int>(i);

    std::vector<int> pivot_owner(cells, -1);
    std::vector<std::vector<int>> stored;
    std::vector<int> stored_tri;
    std::vector<int> col, tmp;
    std::vector<char> edge_paired(m.edges.size(), 0);
    int h2_births = 0;

    for (const CellRef& c : fm.order) {
        if (c.dim != 2) continue;
        const Mosaic::Triangle& t = m.triangles[c.idx];
        col.clear();
        for (int i = 0; i < 3; ++i) col.push_back(edge_pos[t.edge[i]]);
        std::sort(col.begin(), col.end(), std::greater<int>());
        while (!col.empty() && pivot_owner[col.front()] >= 0)
            xor_into(col, stored[pivot_owner[col.front()]], tmp);
        if (col.empty()) {
            ++h2_births;
            continue;
        }
        const int low = col.front();
        pivot_owner[low] = static_cast<int>(stored.size());
        stored.push_back(col);
        stored_tri.push_back(c.idx);
        const int birth_edge = fm.order[low].idx;
        edge_paired[birth_edge] = 1;
        out.h1.pairs.emplace_back(fm.edge_value[birth_edge], fm.tri_value[c.idx]);
    }

    for (const CellRef& c : fm.order) {
        if (c.dim != 1) continue;
        if (edge_positive[c.idx] && !edge_paired[c.idx])
            out.h1.essential_births.push_back(fm.edge_value[c.idx]);
    }

    const bool torus = m.topology == Topology::Torus;
    if (out.h1.essential() != (torus ? 2 : 0) || h2_births != (torus ? 1 : 0))
        throw InconsistencyError("alpha_persistence: unexpected essential class counts");
    return out;
}

SpanningTree emst(const FilteredMosaic& fm) {
    return alpha_persistence(fm).tree;
}

Diagram h0_diagram(const FilteredMosaic& fm) {
    return alpha_persistence(fm).h0;
}

Diagram h1_diagram(const FilteredMosaic& fm) {
    return alpha_persistence(fm).h1;
}

std::vector<int> gabriel_graph(const FilteredMosaic& fm) {
    std::vector<int> out;
    for (std::size_t e = 0; e < fm.mosaic.edges.size(); ++e)
        if (fm.edge_critical[e]) out.push_back(static_cast<int>(e));
    return out;
}

} // namespace chroma
