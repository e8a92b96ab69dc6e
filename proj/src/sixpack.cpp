#include "chroma/sixpack.hpp"
#include "chroma/errors.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace chroma {

namespace {

constexpr double kEps = 1e-9;

// cok1 and ker1 exceed their homological values by the birth radius of the
// essential relative class, so negativity beyond tolerance is always a bug.
void check_hard(double v, const char* name, NegativePolicy policy) {
    if (v < -kEps)
        throw InconsistencyError(std::string("derive_norms: ") + name +
                                 " is negative beyond tolerance; upstream bug or pruning failure");
    if (v < 0.0 && policy == NegativePolicy::Throw)
        throw InconsistencyError(std::string("derive_norms: ") + name + " is slightly negative");
}

// ker0 and im1 fall short of their homological values by essential-class
// birth radii, which at small n can legitimately outweigh them; diagnose
// rather than fail.
void check_soft(double v, const char* name, NegativePolicy policy) {
    if (v >= -kEps) return;
    if (policy == NegativePolicy::Throw)
        throw InconsistencyError(std::string("derive_norms: ") + name + " is negative");
    std::fprintf(stderr,
                 "warning: derive_norms: %s = %.3e is negative (essential-class correction "
                 "at small n, or an upstream bug)\n",
                 name, v);
}

} // namespace

SixPackNorms derive_norms(const NormInputs& in, NegativePolicy policy) {
    if (in.dom0 < 0 || in.dom1 < 0 || in.cod0 < 0 || in.cod1 < 0 || in.rel1 < 0)
        throw UsageError("derive_norms: inputs must be nonnegative");
    SixPackNorms n;
    n.dom0 = in.dom0;
    n.dom1 = in.dom1;
    n.cod0 = in.cod0;
    n.cod1 = in.cod1;
    n.rel1 = in.rel1;
    n.im0 = in.cod0; // degree-0 image equals the codomain diagram
    n.ker0 = in.dom0 - n.im0;
    n.cok1 = in.rel1 - n.ker0;
    n.im1 = in.cod1 - n.cok1;
    n.ker1 = in.dom1 - n.im1;
    n.rel2 = n.ker1;
    check_soft(n.ker0, "ker0", policy);
    check_hard(n.cok1, "cok1", policy);
    check_soft(n.im1, "im1", policy);
    check_hard(n.ker1, "ker1", policy);
    return n;
}

ConstantTable table1_constants(double c, double cl) {
    const double rt2 = std::sqrt(2.0);
    ConstantTable t{};
    t.ker0 = 0.5 * (rt2 - 1.0) * c;
    t.rel1 = 0.5 * cl;
    t.cok1 = 0.5 * cl - 0.5 * (rt2 - 1.0) * c;
    t.ker1 = 0.5 * cl - 0.25 * (rt2 - 1.0);
    t.rel2 = t.ker1;
    t.dom0 = 0.5 * rt2 * c;
    t.im0 = 0.5 * c;
    t.cod0 = 0.5 * c;
    t.dom1 = rt2 * (0.5 * c - 0.25);
    t.im1 = 0.5 * rt2 * c - 0.25 - 0.5 * cl;
    t.cod1 = 0.5 * c - 0.25;
    return t;
}

bool ordering_check(double c) {
    if (!(c >= 0.6289 && c <= 0.7072))
        throw UsageError("ordering_check: c outside the strip [0.6289, 0.7072]");
    const ConstantTable t = table1_constants(c, 0.0);
    // The middle comparison is tight at the upper end of the strip; allow the
    // slack that the printed 4-digit bound introduces over sqrt(2)/2.
    const double slack = 1e-4;
    return t.cod1 < t.dom1 && t.dom1 <= t.ker0 + slack && t.ker0 < t.im0 && t.im0 == t.cod0 &&
           t.cod0 < t.dom0;
}

} // namespace chroma
