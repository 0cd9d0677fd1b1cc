#pragma once

#include <functional>
#include <string>

#include "llab/common.hpp"

namespace llab {

// Longitudinal cutoff omega4 with values in [0,1].  Closed-form tags keep
// the Hilbert-Schmidt quadrature exact; sampled grids are also accepted.
class Cutoff1D {
  public:
    static Cutoff1D indicator(double lo, double hi);
    static Cutoff1D gaussian(double center, double width);  // exp(-(x-c)^2/(2 w^2))
    static Cutoff1D bump(double lo, double hi);             // C_0^infty bump on (lo,hi)
    static Cutoff1D sampled(std::vector<double> values, double lo, double hi);

    double operator()(double x) const { return eval_(x); }
    double support_lo() const { return lo_; }
    double support_hi() const { return hi_; }
    // integral of omega4^2
    double l2_norm_sq() const;
    const std::string& tag() const { return tag_; }

  private:
    std::function<double(double)> eval_;
    double lo_ = 0.0, hi_ = 1.0;
    std::string tag_;
};

enum class KernelVariant { plain, tilde };

struct KernelSpec {
    double E = -1.0;  // != 0
    KernelVariant variant = KernelVariant::plain;
};

// Sandwiched free-resolvent kernel value.  E < 0 gives the real exponential
// branch, E > 0 the oscillatory one; the tilde kernel carries the factor
// -sign(x-x')/2 with sign(0) = 0.
complexd kernel_value(const KernelSpec& spec, const Cutoff1D& cutoff, double x, double xp);

struct HsNormResult {
    double norm = 0.0;   // Hilbert-Schmidt norm by 2D quadrature of |kernel|^2
    double bound = 0.0;  // (2 sqrt|E|)^-1 ||w||^2 (plain) or ||w||^2 / 2 (tilde)
    bool converged = true;
};

HsNormResult hs_norm(const KernelSpec& spec, const Cutoff1D& cutoff, int order = 64);

}  // namespace llab
