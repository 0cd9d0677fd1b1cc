#pragma once

#include <utility>
#include <vector>

namespace llab {

// Regularized lower incomplete gamma P(a,x) = gamma(a,x)/Gamma(a).
double reg_gamma_p(double a, double x);

// ln P(a,x) evaluated directly in the log domain; usable for huge a where
// P itself underflows.
double ln_reg_gamma_p(double a, double x);

// Associated Laguerre polynomial L_q^(m)(t) = sum_{j<=q} C(q+m,q-j)(-t)^j/j!.
double laguerre(int q, int m, double t);

// Gauss-Legendre nodes/weights on [-1,1]; results are cached per n.
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n);

// Nodes/weights mapped to [lo,hi].
void gauss_legendre_on(int n, double lo, double hi,
                       std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace llab
