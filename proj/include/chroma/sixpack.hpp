#pragma once

namespace chroma {

// The eleven possibly nonzero 1-norms of the chromatic persistence diagrams
// of one instance; rel0, cok0 and everything in degree 2 other than rel2
// vanish by construction.
struct SixPackNorms {
    double dom0 = 0, dom1 = 0;
    double cod0 = 0, cod1 = 0;
    double rel1 = 0, rel2 = 0;
    double ker0 = 0, ker1 = 0;
    double im0 = 0, im1 = 0;
    double cok1 = 0;
};

struct NormInputs {
    double dom0 = 0; // sum of the two mono-chromatic degree-0 norms
    double dom1 = 0;
    double cod0 = 0; // bi-chromatic norms
    double cod1 = 0;
    double rel1 = 0; // half the lunar tree cost
};

enum class NegativePolicy { Warn, Throw };

// Chain the short-exact-sequence relations: im0 = cod0, ker0 = dom0 - im0,
// cok1 = rel1 - ker0, im1 = cod1 - cok1, ker1 = dom1 - im1, rel2 = ker1.
//
// cok1 or ker1 below -1e-9 always throws: those two dominate their
// homological counterparts, so a real negative is an upstream bug. ker0 and
// im1 trail theirs by essential-class birth radii and may dip below zero on
// small instances; under the default policy that only warns, while
// NegativePolicy::Throw escalates every negative for debugging.
SixPackNorms derive_norms(const NormInputs& in, NegativePolicy policy = NegativePolicy::Warn);

// Closed forms of the asymptotic 1-norm constants in terms of the spanning
// tree constant c and the lunar tree constant cl.
struct ConstantTable {
    double ker0, rel1, cok1, ker1, rel2;
    double dom0, im0, cod0;
    double dom1, im1, cod1;
};

ConstantTable table1_constants(double c, double cl);

// Verify the total order cod1 < dom1 <= ker0 < im0 = cod0 < dom0 that holds
// for c inside the known bounds [0.6289, 0.7072].
bool ordering_check(double c);

} // namespace chroma
