#include "chroma/lunar.hpp"
#include "chroma/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <unordered_map>
#include <vector>

namespace chroma {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool points_less(const Point2& p, const Point2& q) {
    return p.x < q.x || (p.x == q.x && p.y < q.y);
}

double topo_sqdist(const Point2& a, const Point2& b, Topology topo) {
    if (topo == Topology::UnitSquare) return sqr_dist(a, b);
    const Point2 d = torus_displacement(a, b);
    return d.x * d.x + d.y * d.y;
}

Circle circle_from_support_points(const Point2* s, int k) {
    if (k == 1) return Circle{s[0], 0.0};
    if (k == 2) return detail::circle_from_pair(s[0], s[1]);
    return detail::circle_from_triple(s[0], s[1], s[2]);
}

// Smallest enclosing circle radius of up to 4 base points under the given
// topology. The result is canonical: it depends only on the set of base
// points, so coinciding support sets produce bit-equal radii at every call
// site (wake events and merge events in either sweep mode).
//
// When the caller passes a finite cap and the true radius is >= cap, the
// function may bail out and return +infinity instead of the exact value.
double sec_radius_base(const Point2* base_in, int count, Topology topo, double cap = kInf) {
    Point2 base[4];
    int n = 0;
    for (int i = 0; i < count; ++i) {
        bool dup = false;
        for (int j = 0; j < n; ++j)
            if (base[j] == base_in[i]) dup = true;
        if (!dup) base[n++] = base_in[i];
    }
    std::sort(base, base + n, points_less);

    if (topo == Topology::UnitSquare) {
        if (cap < kInf) {
            const double cap_d2 = 4.0 * cap * cap;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (sqr_dist(base[i], base[j]) >= cap_d2) return kInf;
        }
        return detail::sec_support_of_up_to_4(std::span<const Point2>(base, n)).circle.radius;
    }

    // Lift into the frame of the lexicographically smallest point.
    Point2 lifted[4];
    lifted[0] = base[0];
    for (int i = 1; i < n; ++i) {
        const Point2 d = torus_displacement(base[0], base[i]);
        lifted[i] = Point2{base[0].x + d.x, base[0].y + d.y};
    }
    bool lift_ok = true;
    const double cap_d2 = 4.0 * cap * cap; // squared diameter bound
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n && lift_ok; ++j) {
            if (cap < kInf && topo_sqdist(base[i], base[j], topo) >= cap_d2) return kInf;
            if (std::abs(lifted[i].x - lifted[j].x) >= 0.5 ||
                std::abs(lifted[i].y - lifted[j].y) >= 0.5)
                lift_ok = false;
        }
    }
    if (lift_ok) {
        const detail::SecResult res =
            detail::sec_support_of_up_to_4(std::span<const Point2>(lifted, n));
        // Re-anchor the support at its own lexicographic minimum so the
        // radius depends only on the support's base points.
        Point2 sup_base[3];
        for (int j = 0; j < res.support_size; ++j) {
            int found = -1;
            for (int i = 0; i < n; ++i)
                if (lifted[i] == res.support[j]) found = i;
            if (found < 0) throw InconsistencyError("sec_radius_base: support lookup failed");
            sup_base[j] = base[found];
        }
        std::sort(sup_base, sup_base + res.support_size, points_less);
        Point2 relift[3];
        relift[0] = sup_base[0];
        for (int j = 1; j < res.support_size; ++j) {
            const Point2 d = torus_displacement(sup_base[0], sup_base[j]);
            relift[j] = Point2{sup_base[0].x + d.x, sup_base[0].y + d.y};
        }
        return circle_from_support_points(relift, res.support_size).radius;
    }

    // The points do not fit in a half-period window relative to the anchor:
    // search the integer translates of the non-anchor points. The true torus
    // enclosing radius is the minimum over these Euclidean instances; combos
    // whose diameter already exceeds twice the incumbent cannot win.
    double best = kInf;
    const int m = n - 1;
    Point2 combo[4];
    combo[0] = lifted[0];
    std::function<void(int)> descend = [&](int depth) {
        if (depth == m) {
            const Circle c =
                detail::sec_support_of_up_to_4(std::span<const Point2>(combo, n)).circle;
            if (c.radius < best) best = c.radius;
            return;
        }
        for (int ox = -1; ox <= 1; ++ox) {
            for (int oy = -1; oy <= 1; ++oy) {
                const Point2 q{lifted[depth + 1].x + ox, lifted[depth + 1].y + oy};
                const double gate = std::min(best, cap);
                bool viable = true;
                for (int j = 0; j <= depth && viable; ++j)
                    if (sqr_dist(combo[j], q) >= 4.0 * gate * gate) viable = false;
                if (!viable) continue;
                combo[depth + 1] = q;
                descend(depth + 1);
            }
        }
    };
    descend(0);
    return best < cap ? best : (cap < kInf ? kInf : best);
}

double wake_radius_base(const Point2& a, const Point2& b, Topology topo) {
    const Point2 pts[2] = {a, b};
    return sec_radius_base(pts, 2, topo);
}

// ---------------------------------------------------------------------------
// Spatial grid for neighbourhood queries and exact nearest-neighbour
// distances, with wraparound on the torus.

struct PointGrid {
    std::span<const Point2> pts;
    Topology topo = Topology::UnitSquare;
    int dim = 1;
    double x0 = 0, y0 = 0, w = 1, h = 1;
    std::vector<std::vector<int>> cells;

    void build(std::span<const Point2> points, Topology topology, double bx0, double by0,
               double bw, double bh) {
        pts = points;
        topo = topology;
        x0 = bx0;
        y0 = by0;
        w = std::max(bw, 1e-12);
        h = std::max(bh, 1e-12);
        dim = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(points.size()))));
        cells.assign(static_cast<std::size_t>(dim) * dim, {});
        for (std::size_t i = 0; i < points.size(); ++i)
            cells[cell_index(points[i])].push_back(static_cast<int>(i));
    }

    std::size_t cell_index(const Point2& p) const {
        const int cx = std::clamp(static_cast<int>((p.x - x0) / w * dim), 0, dim - 1);
        const int cy = std::clamp(static_cast<int>((p.y - y0) / h * dim), 0, dim - 1);
        return static_cast<std::size_t>(cy) * dim + cx;
    }

    // Visit points with topology-aware position within radius r of c
    // (superset: everything in the covering cells). Positions handed to the
    // callback are lifted near c on the torus. Indices may repeat on the
    // torus when r is large; callers deduplicate.
    int cell_floor(double v) const {
        // Guard against int overflow when the box is degenerate.
        return static_cast<int>(std::floor(std::clamp(v, -4.0 * dim, 4.0 * dim)));
    }

    template <class F> void for_disk(const Point2& c, double r, F&& f) const {
        int ix0 = cell_floor((c.x - r - x0) / w * dim);
        int ix1 = cell_floor((c.x + r - x0) / w * dim);
        int iy0 = cell_floor((c.y - r - y0) / h * dim);
        int iy1 = cell_floor((c.y + r - y0) / h * dim);
        if (topo == Topology::UnitSquare) {
            ix0 = std::max(ix0, 0);
            iy0 = std::max(iy0, 0);
            ix1 = std::min(ix1, dim - 1);
            iy1 = std::min(iy1, dim - 1);
            for (int iy = iy0; iy <= iy1; ++iy)
                for (int ix = ix0; ix <= ix1; ++ix)
                    for (const int i : cells[static_cast<std::size_t>(iy) * dim + ix])
                        f(i, pts[i]);
            return;
        }
        ix1 = std::min(ix1, ix0 + dim - 1);
        iy1 = std::min(iy1, iy0 + dim - 1);
        for (int iy = iy0; iy <= iy1; ++iy) {
            const int my = ((iy % dim) + dim) % dim;
            const double oy = std::floor(static_cast<double>(iy) / dim);
            for (int ix = ix0; ix <= ix1; ++ix) {
                const int mx = ((ix % dim) + dim) % dim;
                const double ox = std::floor(static_cast<double>(ix) / dim);
                for (const int i : cells[static_cast<std::size_t>(my) * dim + mx])
                    f(i, Point2{pts[i].x + ox, pts[i].y + oy});
            }
        }
    }

    // Distance to the nearest point. On the torus this can overestimate once
    // the search radius approaches the period (each cell contributes one lift
    // only); callers use it as an upper-bound ingredient, which is safe.
    double nn_dist(const Point2& c) const {
        const double max_r = (topo == Topology::Torus) ? 0.75 : (w + h);
        double r = std::max(w, h) / dim;
        for (;;) {
            double best = kInf;
            for_disk(c, r, [&](int, const Point2& q) {
                best = std::min(best, std::sqrt(sqr_dist(c, q)));
            });
            if (best <= r || r > max_r) return best;
            r *= 2.0;
        }
    }
};

// Upper bound on max over the domain of the distance to the point set.
double cover_radius_bound(std::span<const Point2> points, Topology topo, double bx0, double by0,
                          double bw, double bh) {
    PointGrid g;
    g.build(points, topo, bx0, by0, bw, bh);
    const int samples = 48;
    const double sx = std::max(bw, 1e-12) / samples, sy = std::max(bh, 1e-12) / samples;
    const double halfdiag = 0.5 * std::sqrt(sx * sx + sy * sy);
    double worst = 0.0;
    for (int iy = 0; iy < samples; ++iy) {
        for (int ix = 0; ix < samples; ++ix) {
            const Point2 c{bx0 + (ix + 0.5) * sx, by0 + (iy + 0.5) * sy};
            worst = std::max(worst, g.nn_dist(c));
        }
    }
    return worst + halfdiag;
}

// ---------------------------------------------------------------------------
// The radius sweep shared by both modes.

struct Event {
    double r;
    int kind; // 0 wake, 1 merge
    int n1;
    int n2; // -1 for wakes
};

struct SweepOutcome {
    LunarTree tree;
    bool connected = false;
};

SweepOutcome run_sweep(const std::vector<Lune>& lunes, std::vector<Event>& events,
                       double cert_radius, bool early_exit) {
    const int nn = static_cast<int>(lunes.size());
    auto lex_key = [&](int node) { return std::pair<int, int>(lunes[node].a, lunes[node].b); };
    std::sort(events.begin(), events.end(), [&](const Event& x, const Event& y) {
        if (x.r != y.r) return x.r < y.r;
        if (x.kind != y.kind) return x.kind < y.kind;
        auto kx1 = lex_key(x.n1), ky1 = lex_key(y.n1);
        if (kx1 != ky1) return kx1 < ky1;
        if (x.n2 < 0 || y.n2 < 0) return x.n2 < y.n2;
        return lex_key(x.n2) < lex_key(y.n2);
    });

    std::vector<int> parent(nn);
    std::vector<double> birth_r(nn, 0.0);
    std::vector<int> birth_node(nn, -1), birth_rec(nn, -1);
    std::vector<char> awake(nn, 0);
    auto find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };

    struct BirthRec {
        int node;
        double r;
        bool alive;
    };
    std::vector<BirthRec> births;
    LunarTree tree;
    int components = 0;

    for (std::size_t i = 0; i < events.size(); ++i) {
        const Event& ev = events[i];
        if (early_exit && components == 1 && ev.r >= cert_radius) break;
        if (ev.kind == 0) {
            const int u = ev.n1;
            awake[u] = 1;
            parent[u] = u;
            birth_r[u] = ev.r;
            birth_node[u] = u;
            birth_rec[u] = static_cast<int>(births.size());
            births.push_back(BirthRec{u, ev.r, true});
            ++components;
            continue;
        }
        if (!awake[ev.n1] || !awake[ev.n2])
            throw InconsistencyError("lunar sweep: merge before wake");
        int ru = find(ev.n1), rv = find(ev.n2);
        if (ru == rv) continue;
        // Elder rule: the younger component (larger birth, then larger key)
        // dies at this merge.
        auto meta = [&](int root) {
            return std::tuple<double, int, int>(birth_r[root], lunes[birth_node[root]].a,
                                                lunes[birth_node[root]].b);
        };
        int elder = ru, younger = rv;
        if (meta(rv) < meta(ru)) std::swap(elder, younger);
        const bool zero = (ev.r == birth_r[younger]);
        if (zero) {
            births[birth_rec[younger]].alive = false;
        } else {
            tree.pairs.emplace_back(birth_r[younger], ev.r);
            const Lune& l1 = lunes[ev.n1];
            const Lune& l2 = lunes[ev.n2];
            tree.merges.push_back(LunarTree::Merge{l1.a, l1.b, l2.a, l2.b, ev.r});
        }
        parent[younger] = elder;
        --components;
    }

    SweepOutcome out;
    out.connected = (components == 1);
    if (!out.connected) return out;

    for (const BirthRec& b : births)
        if (b.alive)
            tree.births.push_back(LunarTree::Birth{lunes[b.node].a, lunes[b.node].b, b.r});
    std::sort(tree.births.begin(), tree.births.end(), [](const auto& x, const auto& y) {
        return std::tie(x.radius, x.a, x.b) < std::tie(y.radius, y.a, y.b);
    });
    std::sort(tree.merges.begin(), tree.merges.end(), [](const auto& x, const auto& y) {
        return std::tie(x.radius, x.a1, x.b1, x.a2, x.b2) <
               std::tie(y.radius, y.a1, y.b1, y.a2, y.b2);
    });
    std::sort(tree.pairs.begin(), tree.pairs.end(),
              [](const auto& x, const auto& y) { return x.second != y.second ? x.second < y.second
                                                                             : x.first < y.first; });
    if (tree.merges.size() + 1 != tree.births.size())
        throw InconsistencyError("lunar sweep: merge/birth count mismatch");

    double essential = kInf;
    for (const BirthRec& b : births)
        if (b.alive) essential = std::min(essential, b.r);
    out.tree = std::move(tree);
    out.tree.essential_birth = essential;
    double acc = 0.0;
    for (const auto& [b, d] : out.tree.pairs) acc += d - b;
    out.tree.cost = 2.0 * acc;
    return out;
}

// ---------------------------------------------------------------------------

struct LuneArena {
    std::vector<Lune> lunes;
    std::vector<std::vector<int>> by_a, by_b; // node lists per defining point
};

double sec3(const Point2& a, const Point2& b, const Point2& c, Topology topo, double cap = kInf) {
    const Point2 pts[3] = {a, b, c};
    return sec_radius_base(pts, 3, topo, cap);
}

double sec_of_lunes(std::span<const Point2> p0, std::span<const Point2> p1, const Lune& l1,
                    const Lune& l2, Topology topo, double cap = kInf) {
    const Point2 pts[4] = {p0[l1.a], p1[l1.b], p0[l2.a], p1[l2.b]};
    return sec_radius_base(pts, 4, topo, cap);
}

LunarTree exact_mode(std::span<const Point2> p0, std::span<const Point2> p1, Topology topo) {
    const int L0 = static_cast<int>(p0.size()), L1 = static_cast<int>(p1.size());
    const long L = static_cast<long>(L0) * L1;

    std::vector<Lune> lunes;
    lunes.reserve(L);
    for (int a = 0; a < L0; ++a)
        for (int b = 0; b < L1; ++b)
            lunes.push_back(Lune{a, b, wake_radius_base(p0[a], p1[b], topo)});

    // Prim over the complete lune graph; the minimum spanning tree carries
    // the full single-linkage structure of the sweep.
    std::vector<double> best(L, kInf);
    std::vector<int> best_from(L, -1);
    std::vector<char> in_tree(L, 0);
    std::vector<Event> events;
    events.reserve(2 * L);
    for (long i = 0; i < L; ++i)
        events.push_back(Event{lunes[i].wake_radius, 0, static_cast<int>(i), -1});

    int cur = 0;
    in_tree[0] = 1;
    for (long added = 1; added < L; ++added) {
        const Lune& lu = lunes[cur];
        for (long v = 0; v < L; ++v) {
            if (in_tree[v]) continue;
            const Lune& lv = lunes[v];
            const double cap = best[v];
            if (lu.wake_radius >= cap || lv.wake_radius >= cap) continue;
            const double cap2 = 4.0 * cap * cap; // squared diameter bound
            if (topo_sqdist(p0[lu.a], p0[lv.a], topo) >= cap2 ||
                topo_sqdist(p1[lu.b], p1[lv.b], topo) >= cap2 ||
                topo_sqdist(p0[lu.a], p1[lv.b], topo) >= cap2 ||
                topo_sqdist(p0[lv.a], p1[lu.b], topo) >= cap2)
                continue;
            const double w = sec_of_lunes(p0, p1, lu, lv, topo, cap);
            if (w < cap) {
                best[v] = w;
                best_from[v] = cur;
            }
        }
        long pick = -1;
        double pick_w = kInf;
        for (long v = 0; v < L; ++v) {
            if (!in_tree[v] && best[v] < pick_w) {
                pick_w = best[v];
                pick = v;
            }
        }
        if (pick < 0) throw InconsistencyError("lunar exact: disconnected lune graph");
        in_tree[pick] = 1;
        const double w = std::max(
            {pick_w, lunes[best_from[pick]].wake_radius, lunes[pick].wake_radius});
        events.push_back(Event{w, 1, best_from[pick], static_cast<int>(pick)});
        cur = static_cast<int>(pick);
    }

    SweepOutcome out = run_sweep(lunes, events, kInf, false);
    if (!out.connected) throw InconsistencyError("lunar exact: sweep did not connect");
    return std::move(out.tree);
}

void audit_merges(const LuneArena& arena, std::span<const Point2> p0, std::span<const Point2> p1,
                  Topology topo, const std::vector<Event>& events_sorted) {
    // Replay the union-find with explicit member lists; at every positive
    // merge verify no smaller candidate crosses the same cut among lune
    // pairs sharing a defining point (pairs sharing none are dominated by a
    // two-step path through a shared lune).
    const int nn = static_cast<int>(arena.lunes.size());
    std::vector<int> parent(nn);
    std::vector<double> birth_r(nn, 0.0);
    std::vector<std::vector<int>> members(nn);
    auto find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const Event& ev : events_sorted) {
        if (ev.kind == 0) {
            parent[ev.n1] = ev.n1;
            birth_r[ev.n1] = ev.r;
            members[ev.n1] = {ev.n1};
            continue;
        }
        int ru = find(ev.n1), rv = find(ev.n2);
        if (ru == rv) continue;
        if (members[ru].size() > members[rv].size()) std::swap(ru, rv);
        for (const int u : members[ru]) {
            const Lune& lu = arena.lunes[u];
            auto check = [&](const std::vector<int>& peers) {
                for (const int v : peers) {
                    if (v == u || find(v) != rv) continue;
                    const double w = sec_of_lunes(p0, p1, lu, arena.lunes[v], topo);
                    if (w < ev.r)
                        throw InconsistencyError("lunar audit: merge is not minimal across its cut");
                }
            };
            check(arena.by_a[lu.a]);
            check(arena.by_b[lu.b]);
        }
        for (const int u : members[ru]) members[rv].push_back(u);
        members[ru].clear();
        parent[ru] = rv;
        birth_r[rv] = std::min(birth_r[rv], birth_r[ru]);
    }
}

LunarTree pruned_mode(std::span<const Point2> p0, std::span<const Point2> p1, Topology topo,
                      bool audit) {
    const bool torus = topo == Topology::Torus;
    double bx0 = 0, by0 = 0, bw = 1, bh = 1;
    if (!torus) {
        double xmin = kInf, xmax = -kInf, ymin = kInf, ymax = -kInf;
        for (std::span<const Point2> side : {p0, p1}) {
            for (const Point2& p : side) {
                xmin = std::min(xmin, p.x);
                xmax = std::max(xmax, p.x);
                ymin = std::min(ymin, p.y);
                ymax = std::max(ymax, p.y);
            }
        }
        bx0 = xmin;
        by0 = ymin;
        bw = xmax - xmin;
        bh = ymax - ymin;
    }
    const double h0 = cover_radius_bound(p0, topo, bx0, by0, bw, bh);
    const double h1 = cover_radius_bound(p1, topo, bx0, by0, bw, bh);
    const double cert_radius = std::max(h0, h1);
    const double wake_max =
        torus ? std::sqrt(0.5) / 2.0 + 1e-12 : std::sqrt(bw * bw + bh * bh) / 2.0 + 1e-12;

    PointGrid g0, g1;
    g0.build(p0, topo, bx0, by0, bw, bh);
    g1.build(p1, topo, bx0, by0, bw, bh);

    double r_awake = std::min(std::max(cert_radius, 1e-9), wake_max);
    for (int attempt = 0;; ++attempt) {
        LuneArena arena;
        arena.by_a.assign(p0.size(), {});
        arena.by_b.assign(p1.size(), {});
        std::vector<Event> events;

        // Wake events: all pairs within 2 * r_awake.
        std::vector<int> scratch;
        for (int a = 0; a < static_cast<int>(p0.size()); ++a) {
            scratch.clear();
            g1.for_disk(p0[a], 2.0 * r_awake, [&](int b, const Point2&) { scratch.push_back(b); });
            std::sort(scratch.begin(), scratch.end());
            scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
            for (const int b : scratch) {
                if (topo_sqdist(p0[a], p1[b], topo) > 4.0 * r_awake * r_awake) continue;
                const int node = static_cast<int>(arena.lunes.size());
                arena.lunes.push_back(Lune{a, b, wake_radius_base(p0[a], p1[b], topo)});
                arena.by_a[a].push_back(node);
                arena.by_b[b].push_back(node);
                events.push_back(Event{arena.lunes.back().wake_radius, 0, node, -1});
            }
        }

        // Candidate merges: lune pairs sharing a defining point.
        const double w_cap = r_awake;
        const double diam2 = 4.0 * w_cap * w_cap;
        auto emit_shared = [&](const std::vector<std::vector<int>>& lists, bool shared_is_a) {
            for (const auto& list : lists) {
                for (std::size_t i = 0; i < list.size(); ++i) {
                    for (std::size_t j = i + 1; j < list.size(); ++j) {
                        const Lune& li = arena.lunes[list[i]];
                        const Lune& lj = arena.lunes[list[j]];
                        const Point2& qi = shared_is_a ? p1[li.b] : p0[li.a];
                        const Point2& qj = shared_is_a ? p1[lj.b] : p0[lj.a];
                        if (topo_sqdist(qi, qj, topo) > diam2) continue;
                        const Point2& shared = shared_is_a ? p0[li.a] : p1[li.b];
                        // Clamp away downward rounding: the true radius is
                        // never below either wake radius. The cap has slack
                        // so the clamp cannot push a kept value over it.
                        const double w =
                            std::max({sec3(shared, qi, qj, topo, w_cap * (1.0 + 1e-12) + 1e-300),
                                      li.wake_radius, lj.wake_radius});
                        if (w <= w_cap)
                            events.push_back(Event{w, 1, list[i], list[j]});
                    }
                }
            }
        };
        emit_shared(arena.by_a, true);
        emit_shared(arena.by_b, false);

        SweepOutcome out = run_sweep(arena.lunes, events, cert_radius, true);
        if (out.connected) {
            if (audit) audit_merges(arena, p0, p1, topo, events);
            return std::move(out.tree);
        }
        if (r_awake >= wake_max)
            throw InconsistencyError("lunar pruned: sweep failed to connect at full radius");
        r_awake = std::min(r_awake * 2.0, wake_max);
        if (attempt > 64) throw InconsistencyError("lunar pruned: too many retries");
    }
}

} // namespace

Lune make_lune(std::span<const Point2> points0, std::span<const Point2> points1, int a, int b,
               Topology topology) {
    if (a < 0 || b < 0 || a >= static_cast<int>(points0.size()) ||
        b >= static_cast<int>(points1.size()))
        throw UsageError("make_lune: index out of range");
    return Lune{a, b, wake_radius_base(points0[a], points1[b], topology)};
}

double merge_radius(std::span<const Point2> points0, std::span<const Point2> points1,
                    const Lune& l1, const Lune& l2, Topology topology) {
    return sec_of_lunes(points0, points1, l1, l2, topology);
}

LunarTree lunar_emst(std::span<const Point2> points0, std::span<const Point2> points1,
                     Topology topology, LunarMode mode, bool audit) {
    if (points0.empty() || points1.empty())
        throw UsageError("lunar_emst: a color class is empty");
    if (topology == Topology::Torus) {
        for (std::span<const Point2> side : {points0, points1})
            for (const Point2& p : side)
                if (!(p.x >= 0.0 && p.x < 1.0 && p.y >= 0.0 && p.y < 1.0))
                    throw UsageError("lunar_emst: torus points must lie in [0,1)^2");
    }
    if (mode == LunarMode::Exact) return exact_mode(points0, points1, topology);
    return pruned_mode(points0, points1, topology, audit);
}

double relative1_norm(const LunarTree& tree) {
    return tree.cost / 2.0;
}

} // namespace chroma
