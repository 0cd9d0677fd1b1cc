#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "llab/geometry.hpp"
#include "llab/quadrature.hpp"

namespace llab {

// Overlap <V phi_{k,m}, phi_{l,s}> by adaptive 2D quadrature.  The
// integration box defaults to the basis envelope around config.box_center
// when config.box_halfwidth <= 0.
QuadResult overlap_element(const std::function<complexd(double, double)>& V, int m, int s, int k,
                           int l, double b, QuadConfig config = {});

struct TruncatedOperator {
    int q = 0;
    double b = 1.0;
    int K = 0;                 // indices 0..K
    Eigen::MatrixXcd entries;  // Hermitian (K+1)x(K+1)
    std::string symbol_descriptor;
    bool quad_converged = true;
};

// Compression of the indicator of `set` to level q, truncated at K.  Entries
// are assembled as a Gram matrix of the basis restricted to the set, on
// product quadrature nodes aligned to the set geometry, so the truncation is
// Hermitian and PSD by construction.
TruncatedOperator toeplitz_matrix(const PlanarSet& set, int q, double b, int K, int order = -1);

struct SpectralSequence {
    std::vector<double> nu;      // non-increasing
    std::vector<double> log_nu;  // log-domain copy (usable below 1e-300 via log routes)
    int q = 0;
    double b = 1.0;
    std::string descriptor;
    int certified = 0;  // leading entries converged w.r.t. truncation (K >= J + margin)
};

// Dense Hermitian eigendecomposition; leading K+1-margin eigenvalues are
// certified against truncation.
SpectralSequence spectrum(const TruncatedOperator& op, int margin = 20);

// Deep spectrum in the log domain: one-sided Jacobi SVD of the quadrature
// factor.  Column norms never get squared before the rotations have
// converged, so eigenvalues are produced with relative accuracy far below
// the dense-solver floor (graded-matrix Jacobi accuracy).
std::vector<double> log_spectrum(const PlanarSet& set, int q, double b, int K, int order = -1);

// Independent eigenvalue oracle for centered disks: 1D quadrature of the
// radial density; the lowest level reduces to the regularized incomplete
// gamma closed form.
double radial_disk_eigenvalue(double r, int q, double b, int k);
// Log-domain variant, stable for k in the thousands.
double radial_disk_log_eigenvalue(double r, int q, double b, int k);

struct CapacityFromSpectrum {
    double cap = 0.0;
    double slope = 0.0;  // fitted ln(b cap^2 / 2)
    double rms = 0.0;
    bool reliable = true;
};

// Fits ln(k! nu_k) ~ a + k ln(b cap^2/2) over [k_lo, k_hi] (log-domain input).
CapacityFromSpectrum capacity_from_spectrum(const std::vector<double>& log_nu, double b, int k_lo,
                                            int k_hi);

}  // namespace llab
