#include "llab/landau.hpp"

#include <cmath>
#include <stdexcept>

#include "llab/special.hpp"

namespace llab {

double gauge_phase_exponent(double b, Vec2 x) { return 0.25 * b * x.norm2(); }

complexd basis_value(int k, int q, double b, Vec2 x) {
    return basis_value(BasisPoint{k, q, b, x});
}

complexd basis_value(const BasisPoint& bp) {
    const int k = bp.k, q = bp.q;
    const double b = bp.b;
    if (k < 0 || q < 0) throw std::invalid_argument("basis_value: indices must be non-negative");
    if (b <= 0.0) throw std::invalid_argument("basis_value: b must be positive");
    if (k + q > kBasisIndexCap) throw std::invalid_argument("basis_value: k+q above index cap");

    const double rho2 = bp.point.norm2();
    const double t = 0.5 * b * rho2;
    const int m = k - q;          // angular momentum
    const int lo = std::min(k, q);
    const int hi = std::max(k, q);

    // |value| = sqrt(b/2pi) * sqrt(lo!/hi!) * (b rho^2/2)^{|m|/2} * |L_lo^{|m|}(t)| * e^{-t/2}
    double ln_mag;
    if (rho2 == 0.0) {
        if (m != 0) return {0.0, 0.0};
        ln_mag = 0.5 * std::log(b / (2.0 * M_PI));
        double phase_arg = -0.5 * M_PI * q;  // (-i)^q
        return std::exp(ln_mag) * complexd{std::cos(phase_arg), std::sin(phase_arg)};
    }
    ln_mag = 0.5 * std::log(b / (2.0 * M_PI)) + 0.5 * (std::lgamma(lo + 1) - std::lgamma(hi + 1)) +
             0.5 * std::abs(m) * std::log(t) - 0.5 * t;
    double lag = laguerre(lo, std::abs(m), t);

    double theta = std::atan2(bp.point.y, bp.point.x);
    // phase: (-i)^q for k >= q, additionally (-1)^{q-k} for k < q
    double phase_arg = -0.5 * M_PI * q + m * theta;
    double sign = (m < 0 && ((q - k) % 2 != 0)) ? -1.0 : 1.0;
    return sign * lag * std::exp(ln_mag) * complexd{std::cos(phase_arg), std::sin(phase_arg)};
}

LadderAction ladder_apply(LadderDirection dir, int /*k*/, int q, double b) {
    if (q < 0) throw std::invalid_argument("ladder_apply: q must be non-negative");
    if (b <= 0.0) throw std::invalid_argument("ladder_apply: b must be positive");
    if (dir == LadderDirection::raise) return {std::sqrt(2.0 * b * (q + 1)), q + 1};
    if (q == 0) return {0.0, 0};
    return {std::sqrt(2.0 * b * q), q - 1};
}

}  // namespace llab
