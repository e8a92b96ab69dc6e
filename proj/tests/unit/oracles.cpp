#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <set>

namespace oracles {

using chroma::Circle;
using chroma::FilteredMosaic;
using chroma::Point2;
using chroma::Topology;

Circle sec_minimax(std::span<const Point2> pts) {
    const std::size_t n = pts.size();
    std::vector<Point2> centers(pts.begin(), pts.end());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            centers.push_back(Point2{(pts[i].x + pts[j].x) / 2, (pts[i].y + pts[j].y) / 2});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                if (chroma::orient2d(pts[i], pts[j], pts[k]) == 0) continue;
                centers.push_back(chroma::circumcircle(pts[i], pts[j], pts[k]).center);
            }
    Circle best{Point2{0, 0}, std::numeric_limits<double>::infinity()};
    for (const Point2& c : centers) {
        double r = 0;
        for (const Point2& p : pts) r = std::max(r, chroma::dist(c, p));
        if (r < best.radius) best = Circle{c, r};
    }
    return best;
}

double emst_brute(std::span<const Point2> pts, Topology topo) {
    const int n = static_cast<int>(pts.size());
    struct E {
        double w;
        int a, b;
    };
    std::vector<E> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            edges.push_back(E{topo == Topology::Torus ? chroma::torus_dist(pts[i], pts[j])
                                                      : chroma::dist(pts[i], pts[j]),
                              i, j});
    std::sort(edges.begin(), edges.end(), [](const E& x, const E& y) { return x.w < y.w; });
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    double total = 0;
    int used = 0;
    for (const E& e : edges) {
        const int ra = find(e.a), rb = find(e.b);
        if (ra == rb) continue;
        parent[ra] = rb;
        total += e.w;
        if (++used == n - 1) break;
    }
    return total;
}

namespace {

int rank_gf2(std::vector<uint64_t> cols) {
    int rank = 0;
    std::vector<uint64_t> pivots;
    for (uint64_t c : cols) {
        // Reduce by existing pivots (each pivot has a unique leading bit).
        for (const uint64_t p : pivots) {
            const int lead = 63 - __builtin_clzll(p);
            if (c >> lead & 1ull) c ^= p;
        }
        if (c) {
            pivots.push_back(c);
            ++rank;
        }
    }
    return rank;
}

} // namespace

BruteDiagrams brute_persistence(const FilteredMosaic& fm) {
    const chroma::Mosaic& m = fm.mosaic;
    const int nv = static_cast<int>(m.points.size());
    const int ne = static_cast<int>(m.edges.size());
    const int nt = static_cast<int>(m.triangles.size());

    std::set<double> value_set{0.0};
    for (const double v : fm.edge_value) value_set.insert(v);
    for (const double v : fm.tri_value) value_set.insert(v);
    const std::vector<double> values(value_set.begin(), value_set.end());
    const int mvals = static_cast<int>(values.size());
    auto level_of = [&](double v) {
        return static_cast<int>(std::lower_bound(values.begin(), values.end(), v) -
                                values.begin());
    };

    // Edge and triangle columns, sorted by value level.
    std::vector<int> edge_level(ne), tri_level(nt);
    for (int e = 0; e < ne; ++e) edge_level[e] = level_of(fm.edge_value[e]);
    for (int t = 0; t < nt; ++t) tri_level[t] = level_of(fm.tri_value[t]);

    // beta0^{i,j} depends only on j: n - rank(d1 over edges <= j).
    std::vector<int> r1(mvals, 0);
    for (int j = 0; j < mvals; ++j) {
        std::vector<uint64_t> cols;
        for (int e = 0; e < ne; ++e) {
            if (edge_level[e] > j) continue;
            cols.push_back((1ull << m.edges[e].v[0]) ^ (1ull << m.edges[e].v[1]));
        }
        r1[j] = rank_gf2(std::move(cols));
    }

    BruteDiagrams out;
    for (int j = 1; j < mvals; ++j) {
        const int deaths = r1[j] - r1[j - 1];
        for (int k = 0; k < deaths; ++k) out.h0.emplace_back(0.0, values[j]);
    }
    for (int k = 0; k < nv - r1[mvals - 1]; ++k) out.h0_essential.push_back(0.0);

    // Degree 1: z1(i) and b1(i,j) = rank d2(K_j) - rank of the submatrix with
    // rows restricted to edges outside K_i.
    std::vector<int> edges_in(mvals, 0);
    for (int e = 0; e < ne; ++e)
        for (int i = edge_level[e]; i < mvals; ++i) ++edges_in[i];

    auto d2_rank = [&](int j, int i_rows_excluded) {
        // Rows: edges with level > i_rows_excluded (i = -1 keeps all rows).
        std::vector<uint64_t> cols;
        for (int t = 0; t < nt; ++t) {
            if (tri_level[t] > j) continue;
            uint64_t col = 0;
            for (int s = 0; s < 3; ++s) {
                const int e = m.triangles[t].edge[s];
                if (edge_level[e] > i_rows_excluded) col ^= 1ull << e;
            }
            cols.push_back(col);
        }
        return rank_gf2(std::move(cols));
    };

    std::vector<std::vector<int>> beta1(mvals + 1, std::vector<int>(mvals, 0));
    for (int i = 0; i < mvals; ++i) {
        std::vector<uint64_t> cols;
        for (int e = 0; e < ne; ++e) {
            if (edge_level[e] > i) continue;
            cols.push_back((1ull << m.edges[e].v[0]) ^ (1ull << m.edges[e].v[1]));
        }
        const int z1 = edges_in[i] - rank_gf2(std::move(cols));
        for (int j = i; j < mvals; ++j) {
            const int b1 = d2_rank(j, i);
            beta1[i + 1][j] = z1 - (d2_rank(j, -1) - b1);
        }
    }
    for (int i = 1; i < mvals; ++i) {
        for (int j = i + 1; j < mvals; ++j) {
            const int mu = beta1[i + 1][j - 1] - beta1[i + 1][j] - beta1[i][j - 1] + beta1[i][j];
            for (int k = 0; k < mu; ++k) out.h1.emplace_back(values[i], values[j]);
        }
        const int ess = beta1[i + 1][mvals - 1] - beta1[i][mvals - 1];
        for (int k = 0; k < ess; ++k) out.h1_essential.push_back(values[i]);
    }

    std::sort(out.h0.begin(), out.h0.end());
    std::sort(out.h1.begin(), out.h1.end());
    return out;
}

std::vector<std::pair<double, double>> positive_pairs(const chroma::Diagram& d) {
    std::vector<std::pair<double, double>> out;
    for (const auto& p : d.pairs)
        if (p.second > p.first) out.push_back(p);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

template <class F> double simpson(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    return (b - a) / 6.0 * (f(a) + 4.0 * f(c) + f(b));
}

template <class F> double adaptive(F&& f, double a, double b, double whole, double tol, int depth) {
    const double c = 0.5 * (a + b);
    const double left = simpson(f, a, c), right = simpson(f, c, b);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive(f, a, c, left, tol / 2, depth - 1) +
           adaptive(f, c, b, right, tol / 2, depth - 1);
}

} // namespace

double gamma_quadrature(double k, double x) {
    if (x == 0.0) return 0.0;
    const bool half = std::abs(k - std::round(k)) > 0.25;
    if (half) {
        // t = u^2 removes the endpoint singularity: integrand 2 u^{2k-1} e^{-u^2}.
        auto g = [&](double u) { return 2.0 * std::pow(u, 2.0 * k - 1.0) * std::exp(-u * u); };
        const double b = std::sqrt(x);
        return adaptive(g, 0.0, b, simpson(g, 0.0, b), 1e-13, 48);
    }
    auto f = [&](double t) { return std::pow(t, k - 1.0) * std::exp(-t); };
    return adaptive(f, 0.0, x, simpson(f, 0.0, x), 1e-13, 48);
}

} // namespace oracles
