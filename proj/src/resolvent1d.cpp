#include "llab/resolvent1d.hpp"

#include <cmath>
#include <stdexcept>
#include <memory>
#include <vector>

#include "llab/special.hpp"

namespace llab {

Cutoff1D Cutoff1D::indicator(double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("cutoff: need lo < hi");
    Cutoff1D c;
    c.eval_ = [lo, hi](double x) { return (x >= lo && x <= hi) ? 1.0 : 0.0; };
    c.lo_ = lo;
    c.hi_ = hi;
    c.tag_ = "indicator";
    return c;
}

Cutoff1D Cutoff1D::gaussian(double center, double width) {
    if (width <= 0.0) throw std::invalid_argument("cutoff: width must be positive");
    Cutoff1D c;
    c.eval_ = [center, width](double x) {
        double u = (x - center) / width;
        return std::exp(-0.5 * u * u);
    };
    c.lo_ = center - 9.0 * width;  // numerically negligible beyond
    c.hi_ = center + 9.0 * width;
    c.tag_ = "gaussian";
    return c;
}

Cutoff1D Cutoff1D::bump(double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("cutoff: need lo < hi");
    Cutoff1D c;
    double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    c.eval_ = [mid, half](double x) {
        double u = (x - mid) / half;
        if (std::fabs(u) >= 1.0) return 0.0;
        return std::exp(1.0 - 1.0 / (1.0 - u * u));
    };
    c.lo_ = lo;
    c.hi_ = hi;
    c.tag_ = "bump";
    return c;
}

Cutoff1D Cutoff1D::sampled(std::vector<double> values, double lo, double hi) {
    if (values.size() < 2 || !(lo < hi)) throw std::invalid_argument("cutoff: bad samples");
    for (double v : values)
        if (v < 0.0 || v > 1.0) throw std::invalid_argument("cutoff: values must lie in [0,1]");
    Cutoff1D c;
    auto vals = std::make_shared<std::vector<double>>(std::move(values));
    c.eval_ = [vals, lo, hi](double x) {
        if (x <= lo || x >= hi) return 0.0;
        double s = (x - lo) / (hi - lo) * (vals->size() - 1);
        size_t i = std::min(static_cast<size_t>(s), vals->size() - 2);
        double f = s - i;
        return (*vals)[i] * (1.0 - f) + (*vals)[i + 1] * f;
    };
    c.lo_ = lo;
    c.hi_ = hi;
    c.tag_ = "sampled";
    return c;
}

double Cutoff1D::l2_norm_sq() const {
    std::vector<double> xs, ws;
    gauss_legendre_on(256, lo_, hi_, xs, ws);
    double acc = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        double v = eval_(xs[i]);
        acc += ws[i] * v * v;
    }
    return acc;
}

complexd kernel_value(const KernelSpec& spec, const Cutoff1D& cutoff, double x, double xp) {
    if (spec.E == 0.0) throw std::invalid_argument("kernel_value: E must be nonzero");
    double w = cutoff(x) * cutoff(xp);
    double d = std::fabs(x - xp);
    double root = std::sqrt(std::fabs(spec.E));
    complexd core;
    if (spec.E < 0.0)
        core = complexd{std::exp(-root * d), 0.0};
    else
        core = std::exp(complexd{0.0, -root * d});
    if (spec.variant == KernelVariant::plain) {
        complexd pref = (spec.E < 0.0) ? complexd{1.0 / (2.0 * root), 0.0}
                                       : complexd{0.0, -1.0 / (2.0 * root)};
        return pref * w * core;
    }
    double sgn = (x > xp) ? 1.0 : (x < xp ? -1.0 : 0.0);  // sign(0) = 0
    return -0.5 * sgn * w * core;
}

HsNormResult hs_norm(const KernelSpec& spec, const Cutoff1D& cutoff, int order) {
    if (spec.E == 0.0) throw std::invalid_argument("hs_norm: E must be nonzero");
    const double lo = cutoff.support_lo(), hi = cutoff.support_hi();
    const double root = std::sqrt(std::fabs(spec.E));
    const double pref = (spec.variant == KernelVariant::plain) ? 1.0 / (4.0 * std::fabs(spec.E)) : 0.25;

    // |K|^2 = pref * w(x)^2 w(y)^2 * e^{-2 root |x-y|} (E<0) or * 1 (E>0);
    // integrate the two triangles x>y and x<y separately so the |x-y| kink
    // never crosses a quadrature cell.
    std::vector<double> xs, ws;
    gauss_legendre_on(order, lo, hi, xs, ws);
    double acc = 0.0;
    std::vector<double> ys, wy;
    for (int i = 0; i < order; ++i) {
        double wx = cutoff(xs[i]);
        if (wx == 0.0) continue;
        gauss_legendre_on(order, lo, xs[i], ys, wy);
        for (int j = 0; j < order; ++j) {
            double wyv = cutoff(ys[j]);
            if (wyv == 0.0) continue;
            double damp = (spec.E < 0.0) ? std::exp(-2.0 * root * (xs[i] - ys[j])) : 1.0;
            acc += ws[i] * wy[j] * wx * wx * wyv * wyv * damp;
        }
    }
    HsNormResult r;
    r.norm = std::sqrt(2.0 * pref * acc);  // both triangles by symmetry
    double l2 = cutoff.l2_norm_sq();
    r.bound = (spec.variant == KernelVariant::plain) ? l2 / (2.0 * root) : 0.5 * l2;
    return r;
}

}  // namespace llab
