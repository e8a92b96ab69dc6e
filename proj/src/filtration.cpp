#include "chroma/filtration.hpp"
#include "chroma/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace chroma {

namespace {

std::array<int, 3> sorted_triple(const Mosaic::Triangle& t) {
    std::array<int, 3> v{t.v[0], t.v[1], t.v[2]};
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace

FilteredMosaic radius_values(Mosaic mosaic) {
    FilteredMosaic fm;
    fm.mosaic = std::move(mosaic);
    const Mosaic& m = fm.mosaic;
    const std::size_t ne = m.edges.size(), nt = m.triangles.size();

    fm.edge_half_length.resize(ne);
    for (std::size_t e = 0; e < ne; ++e)
        fm.edge_half_length[e] = detail::circle_from_pair(m.edge_pos(static_cast<int>(e), 0),
                                                          m.edge_pos(static_cast<int>(e), 1))
                                     .radius;

    fm.tri_value.resize(nt);
    fm.tri_center.resize(nt);
    fm.tri_critical.assign(nt, 0);
    for (std::size_t t = 0; t < nt; ++t) {
        const Point2 a = m.tri_pos(static_cast<int>(t), 0);
        const Point2 b = m.tri_pos(static_cast<int>(t), 1);
        const Point2 c = m.tri_pos(static_cast<int>(t), 2);
        const Circle circ = detail::circle_from_triple(a, b, c);
        fm.tri_center[t] = circ.center;
        // Clamp to the incident half-lengths so face values never exceed the
        // triangle value, even under rounding.
        double value = circ.radius;
        for (int i = 0; i < 3; ++i)
            value = std::max(value, fm.edge_half_length[m.triangles[t].edge[i]]);
        fm.tri_value[t] = value;
        // Critical iff the circumcenter lies strictly inside, i.e. all three
        // angles are strictly acute. Right angles resolve to non-critical.
        fm.tri_critical[t] =
            dot_sign(b, c, a) > 0 && dot_sign(a, c, b) > 0 && dot_sign(a, b, c) > 0;
    }

    fm.edge_value.resize(ne);
    fm.edge_critical.assign(ne, 0);
    for (std::size_t e = 0; e < ne; ++e) {
        const Mosaic::Edge& E = m.edges[e];
        const Point2 a = m.edge_pos(static_cast<int>(e), 0);
        const Point2 b = m.edge_pos(static_cast<int>(e), 1);
        bool gabriel = true;
        double inherited = std::numeric_limits<double>::infinity();
        for (int k = 0; k < 2; ++k) {
            if (E.tri[k] < 0) continue;
            // Opposite vertex inside or on the diametric circle obstructs it.
            if (dot_sign(a, b, m.edge_opp_pos(static_cast<int>(e), k)) <= 0) {
                gabriel = false;
                inherited = std::min(inherited, fm.tri_value[E.tri[k]]);
            }
        }
        fm.edge_critical[e] = gabriel;
        fm.edge_value[e] = gabriel ? fm.edge_half_length[e] : inherited;
    }

    fm.order = filtration_order(fm);
    return fm;
}

std::vector<CellRef> filtration_order(const FilteredMosaic& fm) {
    const Mosaic& m = fm.mosaic;
    std::vector<CellRef> order;
    order.reserve(m.points.size() + m.edges.size() + m.triangles.size());
    for (std::size_t v = 0; v < m.points.size(); ++v)
        order.push_back(CellRef{0, static_cast<int>(v)});
    for (std::size_t e = 0; e < m.edges.size(); ++e)
        order.push_back(CellRef{1, static_cast<int>(e)});
    for (std::size_t t = 0; t < m.triangles.size(); ++t)
        order.push_back(CellRef{2, static_cast<int>(t)});

    auto value_of = [&](const CellRef& c) {
        switch (c.dim) {
        case 0: return 0.0;
        case 1: return fm.edge_value[c.idx];
        default: return fm.tri_value[c.idx];
        }
    };
    auto key_of = [&](const CellRef& c) {
        std::array<int, 7> k{};
        k.fill(-1);
        if (c.dim == 0) {
            k[0] = c.idx;
        } else if (c.dim == 1) {
            const Mosaic::Edge& e = m.edges[c.idx];
            k[0] = e.v[0];
            k[1] = e.v[1];
            k[2] = e.off[1][0];
            k[3] = e.off[1][1];
        } else {
            const Mosaic::Triangle& t = m.triangles[c.idx];
            const std::array<int, 3> v = sorted_triple(t);
            k[0] = v[0];
            k[1] = v[1];
            k[2] = v[2];
            k[3] = t.off[0][0];
            k[4] = t.off[0][1];
            k[5] = t.off[1][0];
            k[6] = t.off[1][1];
        }
        return k;
    };

    std::sort(order.begin(), order.end(), [&](const CellRef& x, const CellRef& y) {
        const double vx = value_of(x), vy = value_of(y);
        if (vx != vy) return vx < vy;
        if (x.dim != y.dim) return x.dim < y.dim;
        return key_of(x) < key_of(y);
    });
    return order;
}

MomentCounters moment_counters(const FilteredMosaic& fm, double r0, const Box& region) {
    if (r0 < 0.0) throw UsageError("moment_counters: r0 must be nonnegative");
    const Mosaic& m = fm.mosaic;
    const bool torus = m.topology == Topology::Torus;
    auto wrap = [&](Point2 p) {
        if (!torus) return p;
        p.x -= std::floor(p.x);
        p.y -= std::floor(p.y);
        return p;
    };

    MomentCounters out;
    for (std::size_t e = 0; e < m.edges.size(); ++e) {
        if (!fm.edge_critical[e]) continue;
        const double r = fm.edge_value[e];
        if (!(r <= r0)) continue;
        const Point2 a = m.edge_pos(static_cast<int>(e), 0);
        const Point2 b = m.edge_pos(static_cast<int>(e), 1);
        const Point2 mid = wrap(Point2{(a.x + b.x) * 0.5, (a.y + b.y) * 0.5});
        if (!region.contains(mid)) continue;
        out.n1 += 1.0;
        out.f1 += r;
        out.s1 += r * r;
    }
    for (std::size_t t = 0; t < m.triangles.size(); ++t) {
        if (!fm.tri_critical[t]) continue;
        const double r = fm.tri_value[t];
        if (!(r <= r0)) continue;
        if (!region.contains(wrap(fm.tri_center[t]))) continue;
        out.n2 += 1.0;
        out.f2 += r;
        out.s2 += r * r;
    }
    return out;
}

} // namespace chroma
