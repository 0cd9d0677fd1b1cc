#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "llab/common.hpp"
#include "llab/geometry.hpp"

namespace llab {

// Smooth transverse/longitudinal cutoff sampled on a uniform grid over
// [-Lx/2,Lx/2) x [-Ly/2,Ly/2) x [-Lz/2,Lz/2); values must have decayed below
// 1e-14 at the grid boundary.  Layout: (iz*nx + ix)*ny + iy.
struct CutoffField {
    int nx = 128, ny = 128, nz = 129;
    double Lx = 12.0, Ly = 12.0, Lz = 12.0;
    std::vector<double> values;
    double b = 1.0;
    int q = 0;

    double hx() const { return Lx / nx; }
    double hy() const { return Ly / ny; }
    double hz() const { return Lz / nz; }
    double x(int ix) const { return -0.5 * Lx + ix * hx(); }
    double y(int iy) const { return -0.5 * Ly + iy * hy(); }
    double z(int iz) const { return -0.5 * Lz + iz * hz(); }
};

CutoffField sample_cutoff(const std::function<double(double, double, double)>& omega, int nx,
                          int ny, int nz, double Lx, double Ly, double Lz, double b, int q);

// Longitudinal integrals w_jk(x_perp) of conj(omega_j) omega_k, with
//   omega_0 = Lambda_q omega - (3D Laplacian) omega   (spectral)
//   omega_1 = -2i d(omega)/d(conj zeta), omega_2 = -2i d(omega)/d(zeta)
struct WeightMatrixField {
    int nx = 0, ny = 0;
    double Lx = 0.0, Ly = 0.0;
    double b = 1.0;
    int q = 0;
    std::array<std::array<std::vector<complexd>, 3>, 3> w;  // w[j][k], layout ix*ny+iy

    double hx() const { return Lx / nx; }
    double hy() const { return Ly / ny; }
    double x(int ix) const { return -0.5 * Lx + ix * hx(); }
    double y(int iy) const { return -0.5 * Ly + iy * hy(); }
};

WeightMatrixField weight_fields(const CutoffField& cutoff);

struct Grid2 {
    int nx = 0, ny = 0;
    double Lx = 0.0, Ly = 0.0;
    std::vector<double> v;  // ix*ny + iy

    double hx() const { return Lx / nx; }
    double hy() const { return Ly / ny; }
    double x(int ix) const { return -0.5 * Lx + ix * hx(); }
    double y(int iy) const { return -0.5 * Ly + iy * hy(); }
};

struct ComplexGrid2 {
    int nx = 0, ny = 0;
    double Lx = 0.0, Ly = 0.0;
    std::vector<complexd> v;

    double hx() const { return Lx / nx; }
    double hy() const { return Ly / ny; }
    double x(int ix) const { return -0.5 * Lx + ix * hx(); }
    double y(int iy) const { return -0.5 * Ly + iy * hy(); }
};

ComplexGrid2 sample_field(const std::function<complexd(double, double)>& f, int nx, int ny,
                          double Lx, double Ly);

// Laguerre-of-Laplacian Fourier multiplier L_n^(m)(-Delta/2b) on a
// periodic-padded grid (padding factor 2).
ComplexGrid2 laguerre_multiplier(const ComplexGrid2& f, int n, int m, double b);

// Wirtinger derivative d/dzeta = (d/dx - i d/dy)/2 (spectral); `power` = 1 or 2.
ComplexGrid2 zeta_derivative(const ComplexGrid2& f, int power);

// Effective potential: six-term Laguerre-multiplier combination of the
// weights (three terms survive on the lowest level).  The assembled field
// must be real; an imaginary residue above 1e-10 throws.
Grid2 effective_potential(const WeightMatrixField& weights, int q, double b);

// Grid maximum with 3-point parabolic refinement; throws if non-positive.
double potential_max(const Grid2& upsilon);

// Relative discrepancy between the level-q quadratic form built from ladder
// shifts of the weights and the compressed effective-potential form on the
// lowest level, maximized over seeded random coefficient vectors.
double form_equivalence_gap(const CutoffField& cutoff, int q, double b, int K, int n_vectors = 32,
                            std::uint64_t seed = 1);

// Dual-path identity gaps (quadrature with shifted levels vs multiplier then
// lowest-level quadrature), maximized over k,l <= Kc.
double multiplier_identity_gap(const ComplexGrid2& V, int m, double b, int Kc);
double ladder_identity_gap(const ComplexGrid2& V, int q, double b, int Kc);
double second_derivative_identity_gap(const ComplexGrid2& V, int q, double b, int Kc);

// Column length of the obstacle along the field axis.
double shadow(const Domain3D& dom, Vec2 x_perp, double tol = 1e-12);

}  // namespace llab
