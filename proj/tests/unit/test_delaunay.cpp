#include "chroma/delaunay.hpp"
#include "chroma/errors.hpp"
#include "chroma/harness.hpp"
#include "chroma/io.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

using namespace chroma;

namespace {

std::vector<Point2> random_points(int n, uint64_t seed) {
    return sample_uniform(static_cast<std::size_t>(n), seed);
}

std::multiset<std::array<int, 3>> triangle_orbits(const Mosaic& m) {
    std::multiset<std::array<int, 3>> out;
    for (const auto& t : m.triangles) {
        std::array<int, 3> v{t.v[0], t.v[1], t.v[2]};
        std::sort(v.begin(), v.end());
        out.insert(v);
    }
    return out;
}

} // namespace

TEST_CASE("four unit-square corners, perturbed") {
    const std::vector<Point2> pts{{0, 0}, {1, 1e-9}, {1, 1}, {0, 1 - 1e-9}};
    const Mosaic m = triangulate(pts, Topology::UnitSquare);
    CHECK(m.edges.size() == 5);
    CHECK(m.triangles.size() == 2);
    CHECK(validate(m));
}

TEST_CASE("four exactly cocircular corners still triangulate") {
    const std::vector<Point2> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    const Mosaic m = triangulate(pts, Topology::UnitSquare);
    CHECK(m.edges.size() == 5);
    CHECK(m.triangles.size() == 2);
    CHECK(validate(m));
}

TEST_CASE("degenerate inputs are rejected") {
    CHECK_THROWS_AS(triangulate(std::vector<Point2>{{0, 0}, {1, 0}}, Topology::UnitSquare),
                    DegenerateInputError);
    CHECK_THROWS_AS(
        triangulate(std::vector<Point2>{{0, 0}, {0.3, 0}, {0.7, 0}, {1, 0}}, Topology::UnitSquare),
        DegenerateInputError);
    CHECK_THROWS_AS(
        triangulate(std::vector<Point2>{{0.1, 0.1}, {0.1, 0.1}, {0.5, 0.6}, {0.2, 0.9}},
                    Topology::UnitSquare),
        DegenerateInputError);
}

TEST_CASE("square Euler relation and hull edges") {
    for (const int n : {10, 50, 300}) {
        const Mosaic m = triangulate(random_points(n, 1000 + n), Topology::UnitSquare);
        CHECK(static_cast<long>(m.points.size()) - static_cast<long>(m.edges.size()) +
                  static_cast<long>(m.triangles.size()) ==
              1);
        int hull = 0;
        for (const auto& e : m.edges) hull += (e.tri[1] < 0);
        CHECK(hull >= 3);
    }
}

TEST_CASE("torus cell counts") {
    for (const int n : {12, 60, 250}) {
        const Mosaic m = triangulate(random_points(n, 2000 + n), Topology::Torus);
        CHECK(m.triangles.size() == 2 * static_cast<std::size_t>(n));
        CHECK(m.edges.size() == 3 * static_cast<std::size_t>(n));
        for (const auto& e : m.edges) {
            CHECK(e.tri[0] >= 0);
            CHECK(e.tri[1] >= 0);
        }
    }
}

TEST_CASE("validate accepts construction output across sizes and topologies") {
    int checked = 0;
    for (int rep = 0; rep < 100; ++rep) {
        const int n = (rep < 60) ? 10 : (rep < 90 ? 100 : 1000);
        const Mosaic ms = triangulate(random_points(n, 31 * rep + 1), Topology::UnitSquare);
        CHECK(validate(ms));
        const Mosaic mt = triangulate(random_points(n, 77 * rep + 5), Topology::Torus);
        CHECK(validate(mt));
        checked += 2;
    }
    CHECK(checked == 200);
}

TEST_CASE("validate rejects a flipped diagonal") {
    // Non-cocircular quad: the Delaunay diagonal joins (0,0) and (1,1);
    // force the other one.
    Mosaic m;
    m.points = {{0, 0}, {1, 0}, {1, 1}, {0, 2}};
    m.topology = Topology::UnitSquare;
    Mosaic::Triangle t1{};
    t1.v[0] = 0;
    t1.v[1] = 1;
    t1.v[2] = 3;
    Mosaic::Triangle t2{};
    t2.v[0] = 1;
    t2.v[1] = 2;
    t2.v[2] = 3;
    m.triangles = {t1, t2};
    const Mosaic good = triangulate(m.points, Topology::UnitSquare);
    const bool flipped_is_delaunay = triangle_orbits(good) == triangle_orbits(m);
    CHECK_FALSE(flipped_is_delaunay);
    CHECK_FALSE(validate(m));
    CHECK(validate(good));
}

TEST_CASE("triangulation is deterministic for a fixed input order") {
    const std::vector<Point2> pts = random_points(200, 99);
    const std::string d1 = mosaic_dump(triangulate(pts, Topology::UnitSquare));
    const std::string d2 = mosaic_dump(triangulate(pts, Topology::UnitSquare));
    CHECK(d1 == d2);
    const std::string t1 = mosaic_dump(triangulate(pts, Topology::Torus));
    const std::string t2 = mosaic_dump(triangulate(pts, Topology::Torus));
    CHECK(t1 == t2);
}

TEST_CASE("torus triangulation is translation invariant up to offsets") {
    for (int rep = 0; rep < 5; ++rep) {
        const std::vector<Point2> pts = random_points(100, 555 + rep);
        std::vector<Point2> shifted;
        for (const Point2& p : pts) {
            double x = p.x + 0.31, y = p.y + 0.74;
            x -= std::floor(x);
            y -= std::floor(y);
            shifted.push_back({x, y});
        }
        const Mosaic a = triangulate(pts, Topology::Torus);
        const Mosaic b = triangulate(shifted, Topology::Torus);
        CHECK(triangle_orbits(a) == triangle_orbits(b));
    }
}

TEST_CASE("on-edge and on-hull insertions stay simplicial") {
    // The third point of the seed triangle lies on an edge of the first two;
    // later points are collinear with hull edges.
    const std::vector<Point2> pts{{0, 0},   {1, 0},       {0.5, 0},     {0.5, 1},
                                  {0.25, 0.5}, {1.5, 0}, {-0.5, 0}};
    const Mosaic m = triangulate(pts, Topology::UnitSquare);
    CHECK(validate(m));
    CHECK(static_cast<long>(m.points.size()) - static_cast<long>(m.edges.size()) +
              static_cast<long>(m.triangles.size()) ==
          1);
}
