#include "chroma/analytics.hpp"
#include "chroma/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace chroma {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double interval_constant(int ell, int k) {
    if (ell == 1 && k == 1) return 2.0;
    if (ell == 2 && k == 2) return 1.0;
    throw UsageError("expected_moment: only the (1<=1) and (2<=2) planar interval types are supported");
}

double gamma_complete(double k) {
    // k in half-integer steps from 1/2 to 7/2 is all we ever need.
    if (k == 0.5) return std::sqrt(kPi);
    if (k == 1.0) return 1.0;
    if (k == 1.5) return 0.5 * std::sqrt(kPi);
    if (k == 2.0) return 1.0;
    if (k == 2.5) return 0.75 * std::sqrt(kPi);
    if (k == 3.0) return 2.0;
    return std::tgamma(k);
}

} // namespace

double lower_incomplete_gamma(double k, double x) {
    if (x < 0.0) throw UsageError("lower_incomplete_gamma: x must be nonnegative");
    if (std::isinf(x)) return gamma_complete(k);
    if (k == 1.0) return -std::expm1(-x);
    if (k == 2.0) return 1.0 - (1.0 + x) * std::exp(-x);
    if (k == 3.0) return 2.0 - (x * x + 2.0 * x + 2.0) * std::exp(-x);
    const double s = std::sqrt(x);
    if (k == 0.5) return std::sqrt(kPi) * std::erf(s);
    if (k == 1.5) return 0.5 * std::sqrt(kPi) * std::erf(s) - s * std::exp(-x);
    if (k == 2.5)
        return 1.5 * (0.5 * std::sqrt(kPi) * std::erf(s) - s * std::exp(-x)) -
               x * s * std::exp(-x);
    throw UsageError("lower_incomplete_gamma: unsupported order");
}

double expected_moment(const MomentFormula& f, double r0) {
    if (r0 < 0.0) throw UsageError("expected_moment: r0 must be nonnegative");
    if (f.intensity <= 0.0) throw UsageError("expected_moment: intensity must be positive");
    if (f.power < 0 || f.power > 2) throw UsageError("expected_moment: power must be 0, 1 or 2");
    const double c = interval_constant(f.ell, f.k);
    const double k = static_cast<double>(f.k);
    const double x = std::isinf(r0) ? kInf : f.intensity * kPi * r0 * r0;
    const double base = c * f.intensity / gamma_complete(k);
    switch (f.power) {
    case 0: return base * lower_incomplete_gamma(k, x);
    case 1: return base / std::sqrt(f.intensity * kPi) * lower_incomplete_gamma(k + 0.5, x);
    default: return base / (f.intensity * kPi) * lower_incomplete_gamma(k + 1.0, x);
    }
}

double eta_moment(const MomentFormula& f, double eta, double r0) {
    if (!(eta > 0.0 && eta <= 1.0)) throw UsageError("eta_moment: eta must lie in (0, 1]");
    const double k = static_cast<double>(f.k) + 0.5 * f.power;
    const double scale = std::pow(eta, -k);
    if (r0 == 0.0) return 0.0;
    const double x = std::isinf(r0) ? kInf : f.intensity * kPi * r0 * r0;
    const double ratio = std::isinf(x)
                             ? 1.0
                             : lower_incomplete_gamma(k, eta * x) / lower_incomplete_gamma(k, x);
    return scale * ratio * expected_moment(f, r0);
}

BoundaryBounds boundary_bounds(double n) {
    if (n <= 0.0) throw UsageError("boundary_bounds: intensity must be positive");
    BoundaryBounds b{};
    b.n1 = 8.0 * std::sqrt(n);
    b.f1 = 16.0 / kPi;
    b.n2 = 6.0 * std::sqrt(n);
    b.f2 = 16.0 / kPi;
    b.n1_half = std::sqrt(512.0 * n);
    b.f1_half = 64.0 / kPi;
    b.n2_half = std::sqrt(1152.0 * n);
    b.f2_half = 128.0 / kPi;
    return b;
}

LowerBoundPipeline theorem31_pipeline() {
    LowerBoundPipeline p{};
    p.x_envelope = std::log(2.0);
    p.envelope_count_coeff = 2.0 * lower_incomplete_gamma(1.0, p.x_envelope);
    p.envelope_length_coeff = 2.0 / std::sqrt(kPi) * lower_incomplete_gamma(1.5, p.x_envelope);
    p.x = 1.0;
    p.surplus_count_coeff =
        2.0 * lower_incomplete_gamma(1.0, p.x) - lower_incomplete_gamma(2.0, p.x);
    p.surplus_length_coeff = (2.0 * lower_incomplete_gamma(1.5, p.x) -
                              lower_incomplete_gamma(2.5, p.x)) /
                             std::sqrt(kPi);
    p.lower_bound = 2.0 * p.surplus_length_coeff;
    return p;
}

ClBounds cl_bounds(double c_lower, double c_upper) {
    if (!(c_lower > 0.0 && c_lower <= c_upper))
        throw UsageError("cl_bounds: need 0 < c_lower <= c_upper");
    return ClBounds{(std::sqrt(2.0) - 1.0) * c_lower, std::sqrt(2.0) * c_upper - 0.5};
}

} // namespace chroma
