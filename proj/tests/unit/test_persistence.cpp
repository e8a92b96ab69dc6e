#include "chroma/harness.hpp"
#include "chroma/persistence.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

using namespace chroma;

namespace {

FilteredMosaic make_fm(const std::vector<Point2>& pts, Topology topo) {
    return radius_values(triangulate(pts, topo));
}

} // namespace

TEST_CASE("spanning tree of the unit-square corners") {
    const std::vector<Point2> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    const SpanningTree t = emst(make_fm(pts, Topology::UnitSquare));
    CHECK(t.edges.size() == 3);
    CHECK(t.total_length == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(t.total_length ==
          doctest::Approx(oracles::emst_brute(pts, Topology::UnitSquare)).epsilon(1e-12));
}

TEST_CASE("spanning tree of (nearly) collinear points 0, 1, 3") {
    // triangulate rejects exactly collinear input, so the classic 0-1-3 line
    // example runs with a bent middle point.
    const std::vector<Point2> pts{{0, 0}, {1, 1e-9}, {3, 0}};
    const SpanningTree t = emst(make_fm(pts, Topology::UnitSquare));
    CHECK(t.edges.size() == 2);
    CHECK(t.total_length == doctest::Approx(3.0).epsilon(1e-8));
    std::set<std::pair<int, int>> got;
    for (const int e : t.edges) {
        const auto& E = make_fm(pts, Topology::UnitSquare).mosaic.edges[e];
        got.insert({E.v[0], E.v[1]});
    }
    CHECK(got == std::set<std::pair<int, int>>{{0, 1}, {1, 2}});
}

TEST_CASE("spanning tree matches the complete-graph oracle") {
    for (int rep = 0; rep < 40; ++rep) {
        const auto pts = sample_uniform(3 + rep % 30, 700 + rep);
        for (const Topology topo : {Topology::UnitSquare, Topology::Torus}) {
            if (topo == Topology::Torus && pts.size() < 12) continue;
            const SpanningTree t = emst(make_fm(pts, topo));
            CHECK(t.total_length ==
                  doctest::Approx(oracles::emst_brute(pts, topo)).epsilon(1e-12));
        }
    }
}

TEST_CASE("spanning tree length scale at n = 5000") {
    const auto pts = sample_uniform(5000, 42);
    const SpanningTree t = emst(make_fm(pts, Topology::UnitSquare));
    const double c = t.total_length / std::sqrt(5000.0);
    CHECK(c > 0.55);
    CHECK(c < 0.75);
}

TEST_CASE("degree-0 diagram") {
    for (int rep = 0; rep < 20; ++rep) {
        const auto pts = sample_uniform(50 + rep, 300 + rep);
        const Topology topo = rep % 2 ? Topology::Torus : Topology::UnitSquare;
        const FilteredMosaic fm = make_fm(pts, topo);
        const AlphaPersistence ap = alpha_persistence(fm);
        CHECK(ap.h0.pairs.size() == pts.size() - 1);
        CHECK(ap.h0.essential() == 1);
        for (const auto& [b, d] : ap.h0.pairs) CHECK(b == 0.0);
        CHECK(one_norm(ap.h0) ==
              doctest::Approx(0.5 * ap.tree.total_length).epsilon(1e-9));
    }
}

TEST_CASE("tiny degree-0 diagrams") {
    // Hand-built mosaics: a single vertex, then a single edge.
    Mosaic one;
    one.points = {{0.5, 0.5}};
    one.topology = Topology::UnitSquare;
    const AlphaPersistence ap1 = alpha_persistence(radius_values(std::move(one)));
    CHECK(ap1.h0.pairs.empty());
    CHECK(ap1.h0.essential() == 1);

    Mosaic two;
    two.points = {{0, 0}, {0, 1}};
    two.topology = Topology::UnitSquare;
    Mosaic::Edge e{};
    e.v[0] = 0;
    e.v[1] = 1;
    e.tri[0] = e.tri[1] = -1;
    e.opp[0] = e.opp[1] = -1;
    two.edges = {e};
    const AlphaPersistence ap2 = alpha_persistence(radius_values(std::move(two)));
    REQUIRE(ap2.h0.pairs.size() == 1);
    CHECK(ap2.h0.pairs[0].first == 0.0);
    CHECK(ap2.h0.pairs[0].second == 0.5);
}

TEST_CASE("degree-1 diagram of the equilateral triangle") {
    const FilteredMosaic fm =
        make_fm({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}}, Topology::UnitSquare);
    const Diagram d = h1_diagram(fm);
    REQUIRE(d.pairs.size() == 1);
    CHECK(d.pairs[0].first == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(d.pairs[0].second == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(d.essential() == 0);
}

TEST_CASE("degree-1 diagram of a thin quad with five Gabriel edges") {
    const std::vector<Point2> pts{{0, 0}, {4, -1}, {8, 0.013}, {4.01, 1.02}};
    const FilteredMosaic fm = make_fm(pts, Topology::UnitSquare);
    int gabriel = 0;
    for (const char c : fm.edge_critical) gabriel += c;
    REQUIRE(fm.mosaic.edges.size() == 5);
    REQUIRE(gabriel == 5);
    // Five Gabriel edges on four vertices leave two loop births, and both
    // triangles are forced acute, so two positive pairs remain.
    const Diagram d = h1_diagram(fm);
    CHECK(oracles::positive_pairs(d).size() == 2);
    const oracles::BruteDiagrams ref = oracles::brute_persistence(fm);
    CHECK(oracles::positive_pairs(d) == ref.h1);
}

TEST_CASE("degree-1 norm identity on the square") {
    for (int rep = 0; rep < 25; ++rep) {
        const auto pts = sample_uniform(100 + 37 * rep, 1300 + rep);
        const FilteredMosaic fm = make_fm(pts, Topology::UnitSquare);
        const AlphaPersistence ap = alpha_persistence(fm);
        std::set<int> tree(ap.tree.edges.begin(), ap.tree.edges.end());
        double crit_tri_sum = 0, birth_edge_sum = 0;
        for (std::size_t t = 0; t < fm.mosaic.triangles.size(); ++t)
            if (fm.tri_critical[t]) crit_tri_sum += fm.tri_value[t];
        for (std::size_t e = 0; e < fm.mosaic.edges.size(); ++e)
            if (fm.edge_critical[e] && !tree.count(static_cast<int>(e)))
                birth_edge_sum += fm.edge_value[e];
        CHECK(one_norm(ap.h1) ==
              doctest::Approx(crit_tri_sum - birth_edge_sum).epsilon(1e-9));
        CHECK(ap.h1.essential() == 0);
    }
}

TEST_CASE("torus essential classes") {
    const auto pts = sample_uniform(120, 77);
    const AlphaPersistence ap = alpha_persistence(make_fm(pts, Topology::Torus));
    CHECK(ap.h0.essential() == 1);
    CHECK(ap.h1.essential() == 2);
}

TEST_CASE("diagrams match the rank oracle on small instances") {
    Rng rng(2024);
    for (int rep = 0; rep < 120; ++rep) {
        const int n = 3 + static_cast<int>(rng.next() % 6);
        const auto pts = sample_uniform(n, rng.next());
        const FilteredMosaic fm = make_fm(pts, Topology::UnitSquare);
        const AlphaPersistence ap = alpha_persistence(fm);
        const oracles::BruteDiagrams ref = oracles::brute_persistence(fm);
        CHECK(oracles::positive_pairs(ap.h0) == ref.h0);
        CHECK(oracles::positive_pairs(ap.h1) == ref.h1);
        CHECK(ap.h0.essential() == static_cast<int>(ref.h0_essential.size()));
        CHECK(ap.h1.essential() == static_cast<int>(ref.h1_essential.size()));
    }
}

TEST_CASE("norms are invariant under input relabeling") {
    const auto pts = sample_uniform(150, 31);
    const FilteredMosaic fm = make_fm(pts, Topology::UnitSquare);
    const AlphaPersistence ap = alpha_persistence(fm);
    std::vector<Point2> shuffled = pts;
    Rng rng(8);
    for (std::size_t i = shuffled.size(); i > 1; --i)
        std::swap(shuffled[i - 1], shuffled[rng.next() % i]);
    const AlphaPersistence ap2 = alpha_persistence(make_fm(shuffled, Topology::UnitSquare));
    CHECK(one_norm(ap.h0) == doctest::Approx(one_norm(ap2.h0)).epsilon(1e-9));
    CHECK(one_norm(ap.h1) == doctest::Approx(one_norm(ap2.h1)).epsilon(1e-9));
    CHECK(ap.tree.total_length == doctest::Approx(ap2.tree.total_length).epsilon(1e-9));
}

TEST_CASE("gabriel graph") {
    const std::vector<Point2> corners{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    const FilteredMosaic fm = make_fm(corners, Topology::UnitSquare);
    const std::vector<int> g = gabriel_graph(fm);
    // The four sides and not the diagonal: each diagonal's diametric circle
    // passes through the other two corners.
    CHECK(g.size() == 4);
    for (const int e : g) {
        const auto& E = fm.mosaic.edges[e];
        CHECK(dist(fm.mosaic.edge_pos(e, 0), fm.mosaic.edge_pos(e, 1)) ==
              doctest::Approx(1.0).epsilon(1e-12));
        CHECK(E.v[0] != -1);
    }

    // Two points: the single edge.
    Mosaic two;
    two.points = {{0.2, 0.2}, {0.8, 0.9}};
    two.topology = Topology::UnitSquare;
    Mosaic::Edge e{};
    e.v[0] = 0;
    e.v[1] = 1;
    e.tri[0] = e.tri[1] = -1;
    e.opp[0] = e.opp[1] = -1;
    two.edges = {e};
    CHECK(gabriel_graph(radius_values(std::move(two))).size() == 1);

    // The tree is always a subgraph of the Gabriel graph.
    for (int rep = 0; rep < 10; ++rep) {
        const auto pts = sample_uniform(200, 5100 + rep);
        const Topology topo = rep % 2 ? Topology::Torus : Topology::UnitSquare;
        const FilteredMosaic f = make_fm(pts, topo);
        const AlphaPersistence ap = alpha_persistence(f);
        for (const int e : ap.tree.edges) CHECK(f.edge_critical[e]);
    }
}

TEST_CASE("one_norm basics") {
    Diagram d;
    d.degree = 1;
    CHECK(one_norm(d) == 0.0);
    d.pairs = {{0.0, 1.0}, {0.0, 2.0}};
    CHECK(one_norm(d) == 3.0);
    d.pairs = {{0.7, 0.7}, {1.1, 1.1}};
    CHECK(one_norm(d) == 0.0);
    d.essential_births = {0.0, 0.5};
    CHECK(one_norm(d) == 0.0);
}
