#include "chroma/geom.hpp"
#include "chroma/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace chroma {

namespace {

using BigRat = boost::multiprecision::cpp_rational;

constexpr double kEps = std::numeric_limits<double>::epsilon() / 2.0; // 2^-53

// Static filter constants in the style of adaptive-precision predicates.
const double kOrientErr = (3.0 + 16.0 * kEps) * kEps;
const double kIncircleErr = (10.0 + 96.0 * kEps) * kEps;
const double kDotErr = 8.0 * kEps;
const double kDistCmpErr = 8.0 * kEps;

inline int sign_of(const BigRat& v) {
    if (v > 0) return 1;
    if (v < 0) return -1;
    return 0;
}

int orient2d_exact(const Point2& a, const Point2& b, const Point2& c) {
    const BigRat ax(a.x), ay(a.y), bx(b.x), by(b.y), cx(c.x), cy(c.y);
    return sign_of((ax - cx) * (by - cy) - (ay - cy) * (bx - cx));
}

int incircle_exact(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    const BigRat adx = BigRat(a.x) - BigRat(d.x), ady = BigRat(a.y) - BigRat(d.y);
    const BigRat bdx = BigRat(b.x) - BigRat(d.x), bdy = BigRat(b.y) - BigRat(d.y);
    const BigRat cdx = BigRat(c.x) - BigRat(d.x), cdy = BigRat(c.y) - BigRat(d.y);
    const BigRat alift = adx * adx + ady * ady;
    const BigRat blift = bdx * bdx + bdy * bdy;
    const BigRat clift = cdx * cdx + cdy * cdy;
    const BigRat det = alift * (bdx * cdy - bdy * cdx) + blift * (cdx * ady - cdy * adx) +
                       clift * (adx * bdy - ady * bdx);
    return sign_of(det);
}

int dot_sign_exact(const Point2& a, const Point2& b, const Point2& c) {
    const BigRat t1 = (BigRat(a.x) - BigRat(c.x)) * (BigRat(b.x) - BigRat(c.x));
    const BigRat t2 = (BigRat(a.y) - BigRat(c.y)) * (BigRat(b.y) - BigRat(c.y));
    return sign_of(t1 + t2);
}

int compare_distance_exact(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    const BigRat abx = BigRat(b.x) - BigRat(a.x), aby = BigRat(b.y) - BigRat(a.y);
    const BigRat cdx = BigRat(d.x) - BigRat(c.x), cdy = BigRat(d.y) - BigRat(c.y);
    return sign_of(abx * abx + aby * aby - cdx * cdx - cdy * cdy);
}

bool points_less(const Point2& p, const Point2& q) {
    return p.x < q.x || (p.x == q.x && p.y < q.y);
}

} // namespace

int orient2d(const Point2& a, const Point2& b, const Point2& c) {
    const double detleft = (a.x - c.x) * (b.y - c.y);
    const double detright = (a.y - c.y) * (b.x - c.x);
    const double det = detleft - detright;
    const double detsum = std::abs(detleft) + std::abs(detright);
    const double errbound = kOrientErr * detsum;
    if (det > errbound) return 1;
    if (det < -errbound) return -1;
    if (detsum == 0.0) return 0; // all terms exactly zero
    return orient2d_exact(a, b, c);
}

int detail::incircle_sign(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    const double adx = a.x - d.x, ady = a.y - d.y;
    const double bdx = b.x - d.x, bdy = b.y - d.y;
    const double cdx = c.x - d.x, cdy = c.y - d.y;

    const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
    const double cdxady = cdx * ady, adxcdy = adx * cdy;
    const double adxbdy = adx * bdy, bdxady = bdx * ady;
    const double alift = adx * adx + ady * ady;
    const double blift = bdx * bdx + bdy * bdy;
    const double clift = cdx * cdx + cdy * cdy;

    const double det =
        alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
    const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift +
                             (std::abs(cdxady) + std::abs(adxcdy)) * blift +
                             (std::abs(adxbdy) + std::abs(bdxady)) * clift;
    const double errbound = kIncircleErr * permanent;
    if (det > errbound) return 1;
    if (det < -errbound) return -1;
    if (permanent == 0.0) return 0;
    return incircle_exact(a, b, c, d);
}

int incircle(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    if (orient2d(a, b, c) == 0)
        throw DegenerateInputError("incircle: the first three points are collinear");
    return detail::incircle_sign(a, b, c, d);
}

int dot_sign(const Point2& a, const Point2& b, const Point2& c) {
    const double t1 = (a.x - c.x) * (b.x - c.x);
    const double t2 = (a.y - c.y) * (b.y - c.y);
    const double det = t1 + t2;
    const double mag = std::abs(t1) + std::abs(t2);
    const double errbound = kDotErr * mag;
    if (det > errbound) return 1;
    if (det < -errbound) return -1;
    if (mag == 0.0) return 0;
    return dot_sign_exact(a, b, c);
}

int compare_distance(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    const double abx = b.x - a.x, aby = b.y - a.y;
    const double cdx = d.x - c.x, cdy = d.y - c.y;
    const double q1 = abx * abx + aby * aby;
    const double q2 = cdx * cdx + cdy * cdy;
    const double det = q1 - q2;
    const double errbound = kDistCmpErr * (q1 + q2);
    if (det > errbound) return 1;
    if (det < -errbound) return -1;
    if (q1 + q2 == 0.0) return 0;
    return compare_distance_exact(a, b, c, d);
}

double dist(const Point2& a, const Point2& b) {
    return std::sqrt(sqr_dist(a, b));
}

Circle detail::circle_from_pair(const Point2& p0, const Point2& q0) {
    Point2 p = p0, q = q0;
    if (points_less(q, p)) std::swap(p, q);
    Circle c;
    c.center = Point2{(p.x + q.x) * 0.5, (p.y + q.y) * 0.5};
    c.radius = dist(p, q) * 0.5;
    return c;
}

Circle detail::circle_from_triple(const Point2& a0, const Point2& b0, const Point2& c0) {
    Point2 a = a0, b = b0, c = c0;
    if (points_less(b, a)) std::swap(a, b);
    if (points_less(c, b)) std::swap(b, c);
    if (points_less(b, a)) std::swap(a, b);
    const double bx = b.x - a.x, by = b.y - a.y;
    const double cx = c.x - a.x, cy = c.y - a.y;
    const double d = 2.0 * (bx * cy - by * cx);
    const double bn = bx * bx + by * by;
    const double cn = cx * cx + cy * cy;
    const double ux = (cy * bn - by * cn) / d;
    const double uy = (bx * cn - cx * bn) / d;
    Circle circ;
    circ.center = Point2{a.x + ux, a.y + uy};
    circ.radius = std::sqrt(ux * ux + uy * uy);
    return circ;
}

Circle circumcircle(const Point2& a, const Point2& b, const Point2& c) {
    if (orient2d(a, b, c) == 0)
        throw DegenerateInputError("circumcircle: collinear points");
    return detail::circle_from_triple(a, b, c);
}

bool detail::covered_by_support(std::span<const Point2> s, const Point2& p) {
    switch (s.size()) {
    case 0:
        return false;
    case 1:
        return p == s[0];
    case 2:
        // Inside or on the diametric circle: angle at p is not acute.
        return dot_sign(s[0], s[1], p) <= 0;
    case 3: {
        const int o = orient2d(s[0], s[1], s[2]);
        if (o == 0) {
            // Degenerate support; fall back to the diametric circle of the
            // extreme pair, which is what circle-from-support produces.
            Point2 lo = s[0], hi = s[0];
            for (const Point2& q : s) {
                if (points_less(q, lo)) lo = q;
                if (points_less(hi, q)) hi = q;
            }
            return dot_sign(lo, hi, p) <= 0;
        }
        const int ic = detail::incircle_sign(s[0], s[1], s[2], p);
        return o * ic >= 0; // strictly outside iff signs differ
    }
    default:
        return false;
    }
}

namespace {

Circle circle_from_support(std::span<const Point2> s) {
    switch (s.size()) {
    case 0:
        return Circle{Point2{0.0, 0.0}, 0.0};
    case 1:
        return Circle{s[0], 0.0};
    case 2:
        return detail::circle_from_pair(s[0], s[1]);
    default: {
        if (orient2d(s[0], s[1], s[2]) == 0) {
            Point2 lo = s[0], hi = s[0];
            for (const Point2& q : s) {
                if (points_less(q, lo)) lo = q;
                if (points_less(hi, q)) hi = q;
            }
            return detail::circle_from_pair(lo, hi);
        }
        return detail::circle_from_triple(s[0], s[1], s[2]);
    }
    }
}

// Welzl's recursion returning the support set of the minimal circle, with
// exact coverage decisions. The point order is deterministic (sorted, then a
// fixed-seed shuffle), so the result depends only on the input multiset.
std::vector<Point2> welzl_support(const std::vector<Point2>& pts, std::size_t n,
                                  std::vector<Point2> boundary) {
    if (n == 0 || boundary.size() == 3) return boundary;
    std::vector<Point2> sup = welzl_support(pts, n - 1, boundary);
    const Point2& p = pts[n - 1];
    if (detail::covered_by_support(sup, p)) return sup;
    boundary.push_back(p);
    return welzl_support(pts, n - 1, std::move(boundary));
}

uint64_t splitmix64(uint64_t& s) {
    s += 0x9E3779B97F4A7C15ull;
    uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Exact comparison of the circumradii of two non-collinear triples:
// R^2 = d1*d2*d3 / (4*cross^2) with d the squared side lengths.
int compare_circumradius(const Point2* t1, const Point2* t2) {
    auto r2 = [](const Point2* t) {
        const double d1 = sqr_dist(t[0], t[1]);
        const double d2 = sqr_dist(t[0], t[2]);
        const double d3 = sqr_dist(t[1], t[2]);
        const double cross = (t[1].x - t[0].x) * (t[2].y - t[0].y) -
                             (t[1].y - t[0].y) * (t[2].x - t[0].x);
        return (d1 * d2 * d3) / (4.0 * cross * cross);
    };
    const double a = r2(t1), b = r2(t2);
    if (a > b * (1.0 + 1e-12) + 1e-300) return 1;
    if (b > a * (1.0 + 1e-12) + 1e-300) return -1;
    // Near-tie: decide exactly over rationals.
    auto exact_parts = [](const Point2* t, BigRat& num, BigRat& den) {
        auto sq = [](const Point2& p, const Point2& q) {
            const BigRat dx = BigRat(q.x) - BigRat(p.x);
            const BigRat dy = BigRat(q.y) - BigRat(p.y);
            return dx * dx + dy * dy;
        };
        const BigRat cross = (BigRat(t[1].x) - BigRat(t[0].x)) * (BigRat(t[2].y) - BigRat(t[0].y)) -
                             (BigRat(t[1].y) - BigRat(t[0].y)) * (BigRat(t[2].x) - BigRat(t[0].x));
        num = sq(t[0], t[1]) * sq(t[0], t[2]) * sq(t[1], t[2]);
        den = 4 * cross * cross;
    };
    BigRat n1, d1, n2, d2;
    exact_parts(t1, n1, d1);
    exact_parts(t2, n2, d2);
    return sign_of(n1 * d2 - n2 * d1);
}

} // namespace

detail::SecResult detail::sec_support_of_up_to_4(std::span<const Point2> points) {
    Point2 p[4];
    int n = 0;
    for (const Point2& q : points) {
        bool dup = false;
        for (int i = 0; i < n; ++i)
            if (p[i] == q) dup = true;
        if (!dup) p[n++] = q;
    }
    if (n == 0) throw UsageError("sec_of_up_to_4: empty point list");
    // Canonical order so equal point sets give bit-equal results everywhere.
    std::sort(p, p + n, points_less);
    auto pair_result = [](const Point2& a, const Point2& b) {
        SecResult r;
        r.circle = circle_from_pair(a, b);
        r.support_size = 2;
        r.support[0] = a;
        r.support[1] = b;
        return r;
    };
    if (n == 1) return SecResult{Circle{p[0], 0.0}, 1, {p[0]}};
    if (n == 2) return pair_result(p[0], p[1]);

    // If some diametric circle covers all points, the minimal such pair is
    // the answer; no triple circle can beat a covering pair.
    int bi = -1, bj = -1;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            bool ok = true;
            for (int k = 0; k < n && ok; ++k) {
                if (k == i || k == j) continue;
                if (dot_sign(p[i], p[j], p[k]) > 0) ok = false;
            }
            if (!ok) continue;
            if (bi < 0 || compare_distance(p[i], p[j], p[bi], p[bj]) < 0) {
                bi = i;
                bj = j;
            }
        }
    }
    if (bi >= 0) return pair_result(p[bi], p[bj]);

    // Otherwise the support is a triple whose circumcircle covers the rest.
    Point2 best[3];
    bool have = false;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            for (int k = j + 1; k < n; ++k) {
                const int o = orient2d(p[i], p[j], p[k]);
                if (o == 0) continue;
                bool ok = true;
                for (int m = 0; m < n && ok; ++m) {
                    if (m == i || m == j || m == k) continue;
                    if (o * detail::incircle_sign(p[i], p[j], p[k], p[m]) < 0) ok = false;
                }
                if (!ok) continue;
                Point2 cand[3] = {p[i], p[j], p[k]};
                if (!have || compare_circumradius(cand, best) < 0) {
                    best[0] = p[i];
                    best[1] = p[j];
                    best[2] = p[k];
                    have = true;
                }
            }
        }
    }
    if (!have) throw DegenerateInputError("sec_of_up_to_4: no valid support");
    SecResult r;
    r.circle = circle_from_triple(best[0], best[1], best[2]);
    r.support_size = 3;
    r.support[0] = best[0];
    r.support[1] = best[1];
    r.support[2] = best[2];
    return r;
}

Circle detail::sec_of_up_to_4(std::span<const Point2> points) {
    return sec_support_of_up_to_4(points).circle;
}

Circle smallest_enclosing_circle(std::span<const Point2> points) {
    if (points.empty())
        throw UsageError("smallest_enclosing_circle: empty point list");
    if (points.size() <= 4) return detail::sec_of_up_to_4(points);
    std::vector<Point2> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end(), points_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    // Fixed-seed shuffle keeps the expected-linear behaviour of the recursion
    // while staying a pure function of the input multiset.
    uint64_t state = 0x5bd1e995u;
    for (std::size_t i = pts.size(); i > 1; --i)
        std::swap(pts[i - 1], pts[splitmix64(state) % i]);
    std::vector<Point2> support = welzl_support(pts, pts.size(), {});
    return circle_from_support(support);
}

Point2 torus_displacement(const Point2& a, const Point2& b) {
    auto wrap = [](double d) {
        double r = d - std::floor(d + 0.5);
        if (r == 0.5) r = -0.5; // ties at exactly 1/2 resolve to -1/2
        return r;
    };
    return Point2{wrap(b.x - a.x), wrap(b.y - a.y)};
}

double torus_dist(const Point2& a, const Point2& b) {
    const Point2 d = torus_displacement(a, b);
    return std::sqrt(d.x * d.x + d.y * d.y);
}

} // namespace chroma
