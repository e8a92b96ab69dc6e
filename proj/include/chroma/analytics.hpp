#pragma once

namespace chroma {

// Lower incomplete gamma for half-integer order k in {1/2, 1, 3/2, 2, 5/2, 3},
// evaluated in closed form (erf plus the downward recurrence); relative error
// well below 1e-10. x may be +infinity.
double lower_incomplete_gamma(double k, double x);

// Expected moments of critical cells of the Delaunay radius function for a
// stationary planar Poisson process: interval type (ell <= k) with only the
// critical-edge (1<=1) and critical-triangle (2<=2) planar cases supported.
struct MomentFormula {
    int ell = 1;
    int k = 1;
    int power = 0;       // 0: count, 1: sum of radii, 2: sum of squared radii
    double intensity = 1; // points per unit area
};

double expected_moment(const MomentFormula& f, double r0);

// Same moment when the enclosing circle only needs to be empty with
// probability eta in (0, 1].
double eta_moment(const MomentFormula& f, double eta, double r0);

// Boundary-effect bounds: expected number / radius sums of critical cells
// whose enclosing circles cross the unit-square boundary, plus the
// half-probability variants used for points restricted to the square.
struct BoundaryBounds {
    double n1, f1, n2, f2;                     // <= 8 sqrt(n), 16/pi, 6 sqrt(n), 16/pi
    double n1_half, f1_half, n2_half, f2_half; // <= sqrt(512 n), 64/pi, sqrt(1152 n), 128/pi
};

BoundaryBounds boundary_bounds(double n);

// The lower-bound computation for the spanning tree constant: the envelope
// threshold x = ln 2 (expected n critical edges, length coefficient
// 0.2912...), and the surplus threshold x = 1 where the critical edges exceed
// the critical triangles by n in expectation and by 0.31445... sqrt(n) in
// radius sum, doubling to the 0.6289... lower bound.
struct LowerBoundPipeline {
    double x_envelope;
    double envelope_count_coeff;  // E[N1]/n at the envelope threshold
    double envelope_length_coeff; // E[F1]/sqrt(n)
    double x;
    double surplus_count_coeff;  // (E[N1] - E[N2])/n
    double surplus_length_coeff; // (E[F1] - E[F2])/sqrt(n)
    double lower_bound;          // twice the surplus length coefficient
};

LowerBoundPipeline theorem31_pipeline();

// Bounds for the lunar tree constant implied by bounds on the spanning tree
// constant: (sqrt(2)-1) c_lower and sqrt(2) c_upper - 1/2.
struct ClBounds {
    double lower;
    double upper;
};

ClBounds cl_bounds(double c_lower, double c_upper);

} // namespace chroma
