#include "chroma/delaunay.hpp"
#include "chroma/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <unordered_map>
#include <vector>

namespace chroma {

namespace {

constexpr int kGhost = -1;

uint64_t mix64(uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Incremental Bowyer-Watson triangulator over an explicit point array.
// Ghost triangles (one vertex == kGhost) close the hull into a topological
// sphere so insertion outside the hull needs no special casing; a ghost
// stores its solid edge directed with the unbounded side on the left.
struct Builder {
    const std::vector<Point2>& pts;

    struct Tri {
        int v[3];
        int nbr[3]; // nbr[i] lies across the edge opposite v[i]
    };
    std::vector<Tri> tris;
    std::vector<char> alive;
    std::vector<int> free_ids;

    int grid_dim = 0;
    double gx0 = 0, gy0 = 0, gw = 1, gh = 1;
    std::vector<int> grid;
    int hint = -1;
    uint64_t walk_state = 0x2545F4914F6CDD1Dull;

    std::vector<int> cavity, bfs_stack;
    std::vector<char> in_cavity;
    struct BoundaryEdge {
        int a, b, ext;
    };
    std::vector<BoundaryEdge> boundary;
    std::vector<std::pair<int, int>> ring_by_first;

    explicit Builder(const std::vector<Point2>& points) : pts(points) {}

    int ghost_slot(const Tri& t) const {
        if (t.v[0] == kGhost) return 0;
        if (t.v[1] == kGhost) return 1;
        if (t.v[2] == kGhost) return 2;
        return -1;
    }

    int new_tri(int a, int b, int c) {
        int id;
        if (!free_ids.empty()) {
            id = free_ids.back();
            free_ids.pop_back();
            alive[id] = 1;
        } else {
            id = static_cast<int>(tris.size());
            tris.push_back(Tri{});
            alive.push_back(1);
            in_cavity.push_back(0);
        }
        tris[id].v[0] = a;
        tris[id].v[1] = b;
        tris[id].v[2] = c;
        tris[id].nbr[0] = tris[id].nbr[1] = tris[id].nbr[2] = -1;
        return id;
    }

    void setup_grid(std::size_t expected_points) {
        double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
        double ymin = xmin, ymax = -xmin;
        for (const Point2& p : pts) {
            xmin = std::min(xmin, p.x);
            xmax = std::max(xmax, p.x);
            ymin = std::min(ymin, p.y);
            ymax = std::max(ymax, p.y);
        }
        grid_dim = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(expected_points) / 2.0)));
        gx0 = xmin;
        gy0 = ymin;
        gw = std::max(xmax - xmin, 1e-300);
        gh = std::max(ymax - ymin, 1e-300);
        grid.assign(static_cast<std::size_t>(grid_dim) * grid_dim, -1);
    }

    int grid_cell(const Point2& p) const {
        int cx = static_cast<int>((p.x - gx0) / gw * grid_dim);
        int cy = static_cast<int>((p.y - gy0) / gh * grid_dim);
        cx = std::clamp(cx, 0, grid_dim - 1);
        cy = std::clamp(cy, 0, grid_dim - 1);
        return cy * grid_dim + cx;
    }

    bool in_disk(int t, const Point2& p) const {
        const Tri& T = tris[t];
        const int g = ghost_slot(T);
        if (g < 0)
            return detail::incircle_sign(pts[T.v[0]], pts[T.v[1]], pts[T.v[2]], p) > 0;
        const int u = T.v[(g + 1) % 3], w = T.v[(g + 2) % 3];
        const int s = orient2d(pts[u], pts[w], p);
        if (s != 0) return s > 0;
        return dot_sign(pts[u], pts[w], p) < 0; // strictly inside the open segment
    }

    int start_triangle(const Point2& p) {
        const int c = grid_cell(p);
        if (grid[c] >= 0 && alive[grid[c]]) return grid[c];
        const int cx = c % grid_dim, cy = c / grid_dim;
        for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
                const int nx = cx + dx, ny = cy + dy;
                if (nx < 0 || ny < 0 || nx >= grid_dim || ny >= grid_dim) continue;
                const int id = grid[ny * grid_dim + nx];
                if (id >= 0 && alive[id]) return id;
            }
        }
        return hint;
    }

    int locate(const Point2& p) {
        int t = start_triangle(p);
        const long cap = 4 * static_cast<long>(tris.size()) + 64;
        for (long step = 0; step < cap; ++step) {
            const Tri& T = tris[t];
            const int g = ghost_slot(T);
            if (g >= 0) {
                if (in_disk(t, p)) return t;
                t = T.nbr[g]; // step back into the finite triangulation
                continue;
            }
            int vio[3], nv = 0;
            for (int i = 0; i < 3; ++i) {
                if (orient2d(pts[T.v[(i + 1) % 3]], pts[T.v[(i + 2) % 3]], p) < 0) vio[nv++] = i;
            }
            if (nv == 0) return t;
            const int pick = (nv == 1) ? vio[0] : vio[mix64(walk_state) % nv];
            ++walk_state;
            t = T.nbr[pick];
        }
        // Paranoid fallback: exhaustive scan.
        for (std::size_t i = 0; i < tris.size(); ++i) {
            if (!alive[i]) continue;
            const Tri& T = tris[i];
            if (ghost_slot(T) >= 0) {
                if (in_disk(static_cast<int>(i), p)) return static_cast<int>(i);
                continue;
            }
            bool inside = true;
            for (int k = 0; k < 3 && inside; ++k)
                if (orient2d(pts[T.v[(k + 1) % 3]], pts[T.v[(k + 2) % 3]], p) < 0) inside = false;
            if (inside) return static_cast<int>(i);
        }
        throw DegenerateInputError("triangulate: point location failed");
    }

    void insert(int pidx) {
        const Point2 p = pts[pidx];
        const int t0 = locate(p);
        for (int k = 0; k < 3; ++k) {
            const int v = tris[t0].v[k];
            if (v != kGhost && pts[v] == p)
                throw DegenerateInputError("triangulate: duplicate point");
        }

        cavity.clear();
        bfs_stack.clear();
        bfs_stack.push_back(t0);
        in_cavity[t0] = 1;
        while (!bfs_stack.empty()) {
            const int t = bfs_stack.back();
            bfs_stack.pop_back();
            cavity.push_back(t);
            for (int i = 0; i < 3; ++i) {
                const int u = tris[t].nbr[i];
                if (u < 0 || in_cavity[u]) continue;
                if (in_disk(u, p)) {
                    in_cavity[u] = 1;
                    bfs_stack.push_back(u);
                }
            }
        }

        boundary.clear();
        for (const int t : cavity) {
            for (int i = 0; i < 3; ++i) {
                const int u = tris[t].nbr[i];
                if (u >= 0 && in_cavity[u]) continue;
                boundary.push_back(BoundaryEdge{tris[t].v[(i + 1) % 3], tris[t].v[(i + 2) % 3], u});
            }
        }

        for (const int t : cavity) {
            in_cavity[t] = 0;
            alive[t] = 0;
            free_ids.push_back(t);
        }

        ring_by_first.clear();
        int first_new = -1;
        for (const BoundaryEdge& e : boundary) {
            const int id = new_tri(e.a, e.b, pidx);
            if (first_new < 0) first_new = id;
            // External neighbour across (a,b), which is opposite slot 2.
            tris[id].nbr[2] = e.ext;
            if (e.ext >= 0) {
                Tri& X = tris[e.ext];
                for (int j = 0; j < 3; ++j) {
                    const int xa = X.v[(j + 1) % 3], xb = X.v[(j + 2) % 3];
                    if ((xa == e.a && xb == e.b) || (xa == e.b && xb == e.a)) X.nbr[j] = id;
                }
            }
            ring_by_first.emplace_back(e.a, id);
        }
        auto find_by_first = [&](int vertex) {
            for (const auto& [a, id] : ring_by_first)
                if (a == vertex) return id;
            throw InconsistencyError("triangulate: cavity boundary is not a closed ring");
        };
        for (const auto& [a, id] : ring_by_first) {
            const int b = tris[id].v[1];
            const int next = find_by_first(b);
            tris[id].nbr[0] = next;  // edge (b, p)
            tris[next].nbr[1] = id;  // edge (p, a') seen from the other side
        }

        hint = first_new;
        grid[grid_cell(p)] = first_new;
    }
};

std::vector<int> insertion_order(std::size_t n) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    uint64_t state = 0x853c49e6748fea9bull; // fixed: construction is seedless
    for (std::size_t i = n; i > 1; --i)
        std::swap(order[i - 1], order[mix64(state += i) % i]);
    return order;
}

struct RawTriangulation {
    std::vector<std::array<int, 3>> triangles; // counterclockwise, point indices
};

RawTriangulation triangulate_raw(const std::vector<Point2>& pts) {
    const std::size_t n = pts.size();
    if (n < 3) throw DegenerateInputError("triangulate: fewer than 3 points");
    {
        std::vector<int> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) {
            return pts[a].x < pts[b].x || (pts[a].x == pts[b].x && pts[a].y < pts[b].y);
        });
        for (std::size_t i = 1; i < n; ++i)
            if (pts[idx[i - 1]] == pts[idx[i]])
                throw DegenerateInputError("triangulate: duplicate point");
    }

    std::vector<int> order = insertion_order(n);

    // Seed with the first non-degenerate triple in insertion order.
    std::size_t j = 1;
    while (j < n && pts[order[j]] == pts[order[0]]) ++j;
    std::size_t k = j + 1;
    while (k < n && orient2d(pts[order[0]], pts[order[j]], pts[order[k]]) == 0) ++k;
    if (j >= n || k >= n)
        throw DegenerateInputError("triangulate: all points are collinear");
    std::swap(order[1], order[j]);
    std::swap(order[2], order[k]);

    Builder bld(pts);
    bld.setup_grid(n);

    int a = order[0], b = order[1], c = order[2];
    if (orient2d(pts[a], pts[b], pts[c]) < 0) std::swap(b, c);
    const int t0 = bld.new_tri(a, b, c);
    const int g0 = bld.new_tri(c, b, kGhost);
    const int g1 = bld.new_tri(a, c, kGhost);
    const int g2 = bld.new_tri(b, a, kGhost);
    bld.tris[t0].nbr[0] = g0;
    bld.tris[t0].nbr[1] = g1;
    bld.tris[t0].nbr[2] = g2;
    bld.tris[g0].nbr[2] = t0;
    bld.tris[g1].nbr[2] = t0;
    bld.tris[g2].nbr[2] = t0;
    bld.tris[g0].nbr[0] = g2;
    bld.tris[g2].nbr[1] = g0;
    bld.tris[g1].nbr[0] = g0;
    bld.tris[g0].nbr[1] = g1;
    bld.tris[g2].nbr[0] = g1;
    bld.tris[g1].nbr[1] = g2;
    bld.hint = t0;
    bld.grid[bld.grid_cell(pts[a])] = t0;

    for (std::size_t i = 3; i < n; ++i) bld.insert(order[i]);

    RawTriangulation out;
    out.triangles.reserve(2 * n);
    for (std::size_t i = 0; i < bld.tris.size(); ++i) {
        if (!bld.alive[i]) continue;
        const Builder::Tri& t = bld.tris[i];
        if (bld.ghost_slot(t) >= 0) continue;
        out.triangles.push_back({t.v[0], t.v[1], t.v[2]});
    }
    return out;
}

WrapOffset sub(WrapOffset a, WrapOffset b) {
    return WrapOffset{static_cast<int8_t>(a[0] - b[0]), static_cast<int8_t>(a[1] - b[1])};
}

// Shared edge-map machinery for both topologies. The key identifies an edge
// orbit: lower-index endpoint anchored at offset {0,0}.
uint64_t edge_key(int a, int b, WrapOffset dv, std::size_t n) {
    const uint64_t base = static_cast<uint64_t>(a) * n + static_cast<uint64_t>(b);
    const uint64_t ox = static_cast<uint64_t>(dv[0] + 4);
    const uint64_t oy = static_cast<uint64_t>(dv[1] + 4);
    return (base << 8) | (ox << 4) | oy;
}

void add_triangle_edges(Mosaic& m, int tid, std::unordered_map<uint64_t, int>& edge_ids) {
    Mosaic::Triangle& T = m.triangles[tid];
    for (int i = 0; i < 3; ++i) {
        const int p = (i + 1) % 3, q = (i + 2) % 3;
        int a = T.v[p], b = T.v[q];
        WrapOffset oa = T.off[p], ob = T.off[q];
        if (a > b) {
            std::swap(a, b);
            std::swap(oa, ob);
        }
        const WrapOffset dv = sub(ob, oa);
        const uint64_t key = edge_key(a, b, dv, m.points.size());
        auto [it, inserted] = edge_ids.try_emplace(key, static_cast<int>(m.edges.size()));
        if (inserted) {
            Mosaic::Edge e{};
            e.v[0] = a;
            e.v[1] = b;
            e.off[0] = WrapOffset{0, 0};
            e.off[1] = dv;
            e.tri[0] = e.tri[1] = -1;
            e.opp[0] = e.opp[1] = -1;
            m.edges.push_back(e);
        }
        const int eid = it->second;
        Mosaic::Edge& e = m.edges[eid];
        const int slot = (e.tri[0] < 0) ? 0 : 1;
        if (slot == 1 && e.tri[1] >= 0)
            throw InconsistencyError("triangulate: edge with more than two incident triangles");
        e.tri[slot] = tid;
        e.opp[slot] = T.v[i];
        e.opp_off[slot] = sub(T.off[i], oa);
        T.edge[i] = eid;
    }
}

Mosaic build_square_mosaic(std::span<const Point2> points, const RawTriangulation& raw) {
    Mosaic m;
    m.points.assign(points.begin(), points.end());
    m.topology = Topology::UnitSquare;
    m.triangles.reserve(raw.triangles.size());
    for (const auto& t : raw.triangles) {
        Mosaic::Triangle T{};
        for (int i = 0; i < 3; ++i) {
            T.v[i] = t[i];
            T.off[i] = WrapOffset{0, 0};
        }
        m.triangles.push_back(T);
    }
    std::unordered_map<uint64_t, int> edge_ids;
    edge_ids.reserve(m.triangles.size() * 2);
    for (std::size_t t = 0; t < m.triangles.size(); ++t)
        add_triangle_edges(m, static_cast<int>(t), edge_ids);

    const long euler = static_cast<long>(m.points.size()) - static_cast<long>(m.edges.size()) +
                       static_cast<long>(m.triangles.size());
    if (euler != 1)
        throw InconsistencyError("triangulate: square mosaic violates the Euler relation");
    return m;
}

constexpr int kCopies = 9;
constexpr int kCopyOff[kCopies][2] = {{0, 0},  {-1, -1}, {-1, 0}, {-1, 1}, {0, -1},
                                      {0, 1},  {1, -1},  {1, 0},  {1, 1}};

Mosaic build_torus_mosaic(std::span<const Point2> points, const std::vector<Point2>& patch,
                          const RawTriangulation& raw) {
    const std::size_t n = points.size();
    Mosaic m;
    m.points.assign(points.begin(), points.end());
    m.topology = Topology::Torus;

    for (const auto& t : raw.triangles) {
        int orig[3], copy[3];
        for (int i = 0; i < 3; ++i) {
            orig[i] = t[i] % static_cast<int>(n);
            copy[i] = t[i] / static_cast<int>(n);
        }
        int anchor = 0;
        for (int i = 1; i < 3; ++i)
            if (orig[i] < orig[anchor]) anchor = i;
        if (copy[anchor] != 0) continue;
        if (orig[0] == orig[1] || orig[1] == orig[2] || orig[0] == orig[2])
            throw TorusRangeError("triangulate: torus cell connects copies of one point");

        // Certify that the circumdisk is covered by the 3x3 patch, so the
        // empty-circle property transfers from the patch to the torus.
        const Circle c = detail::circle_from_triple(patch[t[0]], patch[t[1]], patch[t[2]]);
        const double r = c.radius * (1.0 + 1e-9) + 1e-9;
        if (c.center.x - r < -1.0 || c.center.x + r > 2.0 || c.center.y - r < -1.0 ||
            c.center.y + r > 2.0)
            throw TorusRangeError("triangulate: torus cell circumdisk leaves the covered patch");

        Mosaic::Triangle T{};
        for (int i = 0; i < 3; ++i) {
            T.v[i] = orig[i];
            T.off[i] = WrapOffset{static_cast<int8_t>(kCopyOff[copy[i]][0]),
                                  static_cast<int8_t>(kCopyOff[copy[i]][1])};
        }
        m.triangles.push_back(T);
    }

    std::unordered_map<uint64_t, int> edge_ids;
    edge_ids.reserve(m.triangles.size() * 2);
    for (std::size_t t = 0; t < m.triangles.size(); ++t)
        add_triangle_edges(m, static_cast<int>(t), edge_ids);

    if (m.triangles.size() != 2 * n || m.edges.size() != 3 * n)
        throw TorusRangeError("triangulate: torus cell counts are inconsistent");
    for (const Mosaic::Edge& e : m.edges)
        if (e.tri[0] < 0 || e.tri[1] < 0)
            throw TorusRangeError("triangulate: torus edge without two incident triangles");
    return m;
}

} // namespace

Mosaic triangulate(std::span<const Point2> points, Topology topology) {
    if (topology == Topology::UnitSquare) {
        std::vector<Point2> pts(points.begin(), points.end());
        const RawTriangulation raw = triangulate_raw(pts);
        return build_square_mosaic(points, raw);
    }

    for (const Point2& p : points)
        if (!(p.x >= 0.0 && p.x < 1.0 && p.y >= 0.0 && p.y < 1.0))
            throw UsageError("triangulate: torus points must lie in [0,1)^2");
    if (points.empty()) throw DegenerateInputError("triangulate: fewer than 3 points");

    std::vector<Point2> patch;
    patch.reserve(points.size() * kCopies);
    for (int c = 0; c < kCopies; ++c)
        for (const Point2& p : points)
            patch.push_back(Point2{p.x + kCopyOff[c][0], p.y + kCopyOff[c][1]});
    const RawTriangulation raw = triangulate_raw(patch);
    return build_torus_mosaic(points, patch, raw);
}

bool validate(const Mosaic& m) {
    const std::size_t n = m.points.size();
    const int gd = std::max<int>(1, static_cast<int>(std::sqrt(static_cast<double>(n))));
    double xmin = 0.0, ymin = 0.0, xmax = 1.0, ymax = 1.0;
    if (m.topology == Topology::UnitSquare) {
        xmin = ymin = std::numeric_limits<double>::infinity();
        xmax = ymax = -xmin;
        for (const Point2& p : m.points) {
            xmin = std::min(xmin, p.x);
            xmax = std::max(xmax, p.x);
            ymin = std::min(ymin, p.y);
            ymax = std::max(ymax, p.y);
        }
    }
    const double gw = std::max(xmax - xmin, 1e-300), gh = std::max(ymax - ymin, 1e-300);
    std::vector<std::vector<int>> cells(static_cast<std::size_t>(gd) * gd);
    auto cell_of = [&](double x, double y) {
        const int cx = std::clamp(static_cast<int>((x - xmin) / gw * gd), 0, gd - 1);
        const int cy = std::clamp(static_cast<int>((y - ymin) / gh * gd), 0, gd - 1);
        return static_cast<std::size_t>(cy) * gd + cx;
    };
    for (std::size_t i = 0; i < n; ++i) cells[cell_of(m.points[i].x, m.points[i].y)].push_back(static_cast<int>(i));

    const int off_lo = (m.topology == Topology::Torus) ? -2 : 0;
    const int off_hi = (m.topology == Topology::Torus) ? 2 : 0;

    for (std::size_t t = 0; t < m.triangles.size(); ++t) {
        const Point2 a = m.tri_pos(static_cast<int>(t), 0);
        const Point2 b = m.tri_pos(static_cast<int>(t), 1);
        const Point2 c = m.tri_pos(static_cast<int>(t), 2);
        const int o = orient2d(a, b, c);
        if (o == 0) return false;
        const Circle circ = detail::circle_from_triple(a, b, c);
        const double pad = circ.radius * (1.0 + 1e-9) + 1e-9;

        for (int ox = off_lo; ox <= off_hi; ++ox) {
            for (int oy = off_lo; oy <= off_hi; ++oy) {
                const double lx = circ.center.x - pad - ox, hx = circ.center.x + pad - ox;
                const double ly = circ.center.y - pad - oy, hy = circ.center.y + pad - oy;
                if (hx < xmin || lx > xmax || hy < ymin || ly > ymax) continue;
                auto cell_clamp = [gd](double v) {
                    return std::clamp(static_cast<int>(std::clamp(v, -1.0, 2.0 * gd)), 0, gd - 1);
                };
                const int cx0 = cell_clamp((lx - xmin) / gw * gd);
                const int cx1 = cell_clamp((hx - xmin) / gw * gd);
                const int cy0 = cell_clamp((ly - ymin) / gh * gd);
                const int cy1 = cell_clamp((hy - ymin) / gh * gd);
                for (int cy = cy0; cy <= cy1; ++cy) {
                    for (int cx = cx0; cx <= cx1; ++cx) {
                        for (const int pi : cells[static_cast<std::size_t>(cy) * gd + cx]) {
                            const WrapOffset po{static_cast<int8_t>(ox), static_cast<int8_t>(oy)};
                            bool is_vertex = false;
                            const Mosaic::Triangle& T = m.triangles[t];
                            for (int k = 0; k < 3; ++k)
                                if (T.v[k] == pi && T.off[k] == po) is_vertex = true;
                            if (is_vertex) continue;
                            const Point2 q = m.pos(pi, po);
                            if (o * detail::incircle_sign(a, b, c, q) > 0) return false;
                        }
                    }
                }
            }
        }
    }
    return true;
}

} // namespace chroma
