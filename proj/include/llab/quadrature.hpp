#pragma once

#include <functional>

#include "llab/common.hpp"
#include "llab/geometry.hpp"

namespace llab {

struct QuadConfig {
    double abs_tol = 1e-10;
    int max_depth = 18;
    // Half-width of the integration box around `box_center` for whole-plane
    // integrals (Gaussian-weighted integrands); callers that know the basis
    // indices pick this from the envelope radius.
    double box_halfwidth = 12.0;
    Vec2 box_center{0.0, 0.0};
};

struct QuadResult {
    complexd value{0.0, 0.0};
    double error_estimate = 0.0;
    bool converged = true;
};

// Adaptive 2D quadrature on [ax,bx] x [ay,by] (global refinement of the
// worst cells until the summed local error estimate is below abs_tol).
QuadResult adaptive_quad_2d(const std::function<complexd(double, double)>& f,
                            double ax, double bx, double ay, double by,
                            double abs_tol, int max_depth = 18);

// Quadrature node with weight; nodes for a set integrate smooth functions
// over the region exactly up to the generator's order.
struct QuadNode {
    Vec2 p;
    double w;
};

// Product-type nodes covering a region variant (disk -> polar, axis-aligned
// rectangle -> tensor Gauss-Legendre, polygon -> fan triangles, union ->
// concatenation of disjoint members, affine -> transformed base).
// `order` scales the per-direction node counts.
std::vector<QuadNode> region_quad_nodes(const PlanarSet& set, int order);

}  // namespace llab
