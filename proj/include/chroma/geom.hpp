#pragma once

#include <span>
#include <vector>

namespace chroma {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

struct Circle {
    Point2 center;
    double radius = 0.0;
};

enum class Topology { UnitSquare, Torus };

// Sign of the signed area of triangle abc: +1 counterclockwise, -1 clockwise,
// 0 collinear. The decision is exact: a floating-point filter with a certified
// error bound, falling back to rational arithmetic over the exact binary
// values of the inputs.
int orient2d(const Point2& a, const Point2& b, const Point2& c);

// Sign of the in-circle determinant: +1 iff d lies strictly inside the
// circumcircle of abc when abc is counterclockwise; the sign flips with the
// orientation of abc. Exact decision. Throws DegenerateInputError if abc is
// collinear.
int incircle(const Point2& a, const Point2& b, const Point2& c, const Point2& d);

// Sign of (a-c).(b-c), exactly. Positive means the angle at c is acute,
// i.e. c lies strictly outside the circle with diameter ab.
int dot_sign(const Point2& a, const Point2& b, const Point2& c);

// Exact comparison of |ab| and |cd|: sign of |ab|^2 - |cd|^2.
int compare_distance(const Point2& a, const Point2& b, const Point2& c, const Point2& d);

// The unique circle through three non-collinear points. Throws
// DegenerateInputError on collinear input. The construction is numerical;
// only the collinearity decision is exact.
Circle circumcircle(const Point2& a, const Point2& b, const Point2& c);

// Minimal-radius circle containing every point of the (nonempty) list, with
// closed containment; determined by at most 3 support points. Support
// decisions are exact, the returned circle is computed numerically from the
// support set in a canonical vertex order.
Circle smallest_enclosing_circle(std::span<const Point2> points);

// The representative of b-a with each coordinate in [-1/2, 1/2); its length
// is the distance on the unit torus. Arguments must lie in [0,1)^2.
Point2 torus_displacement(const Point2& a, const Point2& b);

inline double sqr_dist(const Point2& a, const Point2& b) {
    const double dx = b.x - a.x, dy = b.y - a.y;
    return dx * dx + dy * dy;
}
double dist(const Point2& a, const Point2& b);
double torus_dist(const Point2& a, const Point2& b);

namespace detail {

// In-circle sign without the collinearity guard; used by the triangulator,
// which maintains counterclockwise triangles by construction.
int incircle_sign(const Point2& a, const Point2& b, const Point2& c, const Point2& d);

// Diametric circle of a pair, with the endpoints taken in canonical
// (coordinate-sorted) order so equal inputs give bit-equal circles at every
// call site.
Circle circle_from_pair(const Point2& p, const Point2& q);

// Circumcircle with the vertices canonically sorted first; same bit-stability
// contract as circle_from_pair.
Circle circle_from_triple(const Point2& a, const Point2& b, const Point2& c);

// True iff p is inside or on the circle spanned by the support points
// (1, 2 or 3 of them). Exact decision.
bool covered_by_support(std::span<const Point2> support, const Point2& p);

// Allocation-free smallest enclosing circle for at most four points
// (duplicates allowed). Canonical support selection: equal point sets give
// bit-equal circles at every call site.
struct SecResult {
    Circle circle;
    int support_size = 0;
    Point2 support[3];
};
SecResult sec_support_of_up_to_4(std::span<const Point2> points);
Circle sec_of_up_to_4(std::span<const Point2> points);

} // namespace detail

} // namespace chroma
