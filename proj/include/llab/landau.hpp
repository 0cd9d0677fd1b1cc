#pragma once

#include "llab/common.hpp"

namespace llab {

// Angular-momentum eigenfunctions of the planar magnetic Hamiltonian with
// constant field b > 0.  Index k is the angular index, q the level.
//
// The level-q functions are generated from the level-0 ones by normalized
// powers of the creation operator; evaluation goes through the equivalent
// associated-Laguerre closed form (phase convention fixed by that ladder
// definition), with every factorial in the log-gamma domain.
struct BasisPoint {
    int k = 0;
    int q = 0;
    double b = 1.0;
    Vec2 point;
};

// Largest admissible k+q; far above anything the rest of the code asks for.
inline constexpr int kBasisIndexCap = 10000;

complexd basis_value(const BasisPoint& bp);
complexd basis_value(int k, int q, double b, Vec2 x);

// Gauge phase exponent b|x|^2/4 (the scalar sharing the letter phi in the
// operator calculus; housed separately to avoid collision with the basis).
double gauge_phase_exponent(double b, Vec2 x);

enum class LadderDirection { raise, lower };

struct LadderAction {
    double coefficient;
    int new_q;
};

// Creation/annihilation coefficients: raise -> sqrt(2b(q+1)) at level q+1,
// lower -> sqrt(2bq) at level q-1, and zero on the lowest level.
LadderAction ladder_apply(LadderDirection dir, int k, int q, double b);

}  // namespace llab
