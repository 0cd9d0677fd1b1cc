#include "llab/effective.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fftw3.h>

#include "llab/landau.hpp"
#include "llab/special.hpp"

namespace llab {

namespace {

// In-place complex FFT helpers (plan reused on an owned aligned buffer).
class Fft2 {
  public:
    Fft2(int nx, int ny) : nx_(nx), ny_(ny) {
        buf_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * nx * ny));
        fwd_ = fftw_plan_dft_2d(nx, ny, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft_2d(nx, ny, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~Fft2() {
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
        fftw_free(buf_);
    }
    Fft2(const Fft2&) = delete;
    Fft2& operator=(const Fft2&) = delete;

    void forward(std::vector<complexd>& v) { run(v, fwd_, 1.0); }
    void backward(std::vector<complexd>& v) { run(v, bwd_, 1.0 / (nx_ * ny_)); }

  private:
    void run(std::vector<complexd>& v, fftw_plan plan, double scale) {
        auto* b = reinterpret_cast<complexd*>(buf_);
        std::copy(v.begin(), v.end(), b);
        fftw_execute(plan);
        for (size_t i = 0; i < v.size(); ++i) v[i] = scale * b[i];
    }
    int nx_, ny_;
    fftw_complex* buf_;
    fftw_plan fwd_, bwd_;
};

double freq(int i, int n, double L) {
    int j = (i <= n / 2) ? i : i - n;
    return 2.0 * M_PI * j / L;
}

// First-derivative multiplier frequency (Nyquist zeroed).
double dfreq(int i, int n, double L) {
    if (n % 2 == 0 && i == n / 2) return 0.0;
    return freq(i, n, L);
}

}  // namespace

CutoffField sample_cutoff(const std::function<double(double, double, double)>& omega, int nx,
                          int ny, int nz, double Lx, double Ly, double Lz, double b, int q) {
    if (b <= 0.0 || q < 0) throw std::invalid_argument("sample_cutoff: need b>0, q>=0");
    CutoffField f;
    f.nx = nx;
    f.ny = ny;
    f.nz = nz;
    f.Lx = Lx;
    f.Ly = Ly;
    f.Lz = Lz;
    f.b = b;
    f.q = q;
    f.values.resize(static_cast<size_t>(nx) * ny * nz);
    double vmax = 0.0, bmax = 0.0;
    for (int iz = 0; iz < nz; ++iz)
        for (int ix = 0; ix < nx; ++ix)
            for (int iy = 0; iy < ny; ++iy) {
                double v = omega(f.x(ix), f.y(iy), f.z(iz));
                f.values[(static_cast<size_t>(iz) * nx + ix) * ny + iy] = v;
                vmax = std::max(vmax, std::fabs(v));
                if (ix == 0 || iy == 0 || iz == 0 || ix == nx - 1 || iy == ny - 1 || iz == nz - 1)
                    bmax = std::max(bmax, std::fabs(v));
            }
    if (bmax > 1e-14 * std::max(1.0, vmax))
        throw std::invalid_argument("sample_cutoff: field has not decayed at the grid boundary");
    return f;
}

WeightMatrixField weight_fields(const CutoffField& c) {
    const int nx = c.nx, ny = c.ny, nz = c.nz;
    const double lambda_q = c.b * (2 * c.q + 1);

    // second longitudinal derivative, spectral per column
    std::vector<double> d2z(c.values.size());
    {
        fftw_complex* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * nz));
        fftw_plan fwd = fftw_plan_dft_1d(nz, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
        fftw_plan bwd = fftw_plan_dft_1d(nz, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
        auto* cb = reinterpret_cast<complexd*>(buf);
        for (int ix = 0; ix < nx; ++ix)
            for (int iy = 0; iy < ny; ++iy) {
                for (int iz = 0; iz < nz; ++iz)
                    cb[iz] = c.values[(static_cast<size_t>(iz) * nx + ix) * ny + iy];
                fftw_execute(fwd);
                for (int iz = 0; iz < nz; ++iz) {
                    double k = freq(iz, nz, c.Lz);
                    cb[iz] *= -k * k / nz;
                }
                fftw_execute(bwd);
                for (int iz = 0; iz < nz; ++iz)
                    d2z[(static_cast<size_t>(iz) * nx + ix) * ny + iy] = cb[iz].real();
            }
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_free(buf);
    }

    WeightMatrixField out;
    out.nx = nx;
    out.ny = ny;
    out.Lx = c.Lx;
    out.Ly = c.Ly;
    out.b = c.b;
    out.q = c.q;
    for (auto& row : out.w)
        for (auto& f : row) f.assign(static_cast<size_t>(nx) * ny, complexd{0.0, 0.0});

    Fft2 fft(nx, ny);
    std::vector<complexd> slice(static_cast<size_t>(nx) * ny);
    std::vector<complexd> hat(static_cast<size_t>(nx) * ny);
    std::vector<complexd> dx(slice.size()), dy(slice.size()), lap2(slice.size());
    std::array<std::vector<complexd>, 3> fj;
    for (auto& f : fj) f.resize(slice.size());

    double spec_tail = 0.0, spec_max = 0.0;
    for (int iz = 0; iz < nz; ++iz) {
        const double* src = &c.values[static_cast<size_t>(iz) * nx * ny];
        for (size_t i = 0; i < slice.size(); ++i) slice[i] = src[i];
        hat = slice;
        fft.forward(hat);
        for (int ix = 0; ix < nx; ++ix)
            for (int iy = 0; iy < ny; ++iy) {
                size_t i = static_cast<size_t>(ix) * ny + iy;
                double m = std::abs(hat[i]);
                spec_max = std::max(spec_max, m);
                if (std::abs(ix - nx / 2) <= nx / 8 || std::abs(iy - ny / 2) <= ny / 8)
                    spec_tail = std::max(spec_tail, m);
            }
        for (int ix = 0; ix < nx; ++ix)
            for (int iy = 0; iy < ny; ++iy) {
                size_t i = static_cast<size_t>(ix) * ny + iy;
                double kx = freq(ix, nx, c.Lx), ky = freq(iy, ny, c.Ly);
                double kdx = dfreq(ix, nx, c.Lx), kdy = dfreq(iy, ny, c.Ly);
                dx[i] = complexd{0.0, kdx} * hat[i];
                dy[i] = complexd{0.0, kdy} * hat[i];
                lap2[i] = -(kx * kx + ky * ky) * hat[i];
            }
        fft.backward(dx);
        fft.backward(dy);
        fft.backward(lap2);
        for (size_t i = 0; i < slice.size(); ++i) {
            fj[0][i] = lambda_q * slice[i] - (lap2[i] + d2z[static_cast<size_t>(iz) * nx * ny + i]);
            fj[1][i] = complexd{0.0, -1.0} * dx[i] + dy[i];  // -2i d/d(conj zeta)
            fj[2][i] = complexd{0.0, -1.0} * dx[i] - dy[i];  // -2i d/d(zeta)
        }
        // trapezoid along z (endpoint values are already ~0)
        double wz = c.hz();
        if (iz == 0 || iz == nz - 1) wz *= 0.5;
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (size_t i = 0; i < slice.size(); ++i)
                    out.w[j][k][i] += wz * std::conj(fj[j][i]) * fj[k][i];
    }
    if (spec_tail > 1e-10 * std::max(spec_max, 1e-300))
        throw std::runtime_error("weight_fields: spectral tail above tolerance, grid too coarse");
    return out;
}

ComplexGrid2 sample_field(const std::function<complexd(double, double)>& f, int nx, int ny,
                          double Lx, double Ly) {
    ComplexGrid2 g;
    g.nx = nx;
    g.ny = ny;
    g.Lx = Lx;
    g.Ly = Ly;
    g.v.resize(static_cast<size_t>(nx) * ny);
    for (int ix = 0; ix < nx; ++ix)
        for (int iy = 0; iy < ny; ++iy)
            g.v[static_cast<size_t>(ix) * ny + iy] = f(g.x(ix), g.y(iy));
    return g;
}

namespace {

// Apply multiplier(kx, ky) on the 2x zero-padded grid and crop back.
ComplexGrid2 padded_multiplier(const ComplexGrid2& f,
                               const std::function<complexd(double, double)>& mult) {
    const int nx = f.nx, ny = f.ny;
    const int px = 2 * nx, py = 2 * ny;
    const double PLx = 2.0 * f.Lx, PLy = 2.0 * f.Ly;
    std::vector<complexd> pad(static_cast<size_t>(px) * py, complexd{0.0, 0.0});
    // center the field inside the padded box so wrap-around stays in the far tail
    const int ox = nx / 2, oy = ny / 2;
    for (int ix = 0; ix < nx; ++ix)
        for (int iy = 0; iy < ny; ++iy)
            pad[static_cast<size_t>(ix + ox) * py + (iy + oy)] = f.v[static_cast<size_t>(ix) * ny + iy];
    Fft2 fft(px, py);
    fft.forward(pad);
    for (int ix = 0; ix < px; ++ix)
        for (int iy = 0; iy < py; ++iy) {
            double kx = freq(ix, px, PLx), ky = freq(iy, py, PLy);
            pad[static_cast<size_t>(ix) * py + iy] *= mult(kx, ky);
        }
    fft.backward(pad);
    ComplexGrid2 out;
    out.nx = nx;
    out.ny = ny;
    out.Lx = f.Lx;
    out.Ly = f.Ly;
    out.v.resize(static_cast<size_t>(nx) * ny);
    for (int ix = 0; ix < nx; ++ix)
        for (int iy = 0; iy < ny; ++iy)
            out.v[static_cast<size_t>(ix) * ny + iy] = pad[static_cast<size_t>(ix + ox) * py + (iy + oy)];
    return out;
}

ComplexGrid2 from_weights(const WeightMatrixField& w, int j, int k) {
    ComplexGrid2 g;
    g.nx = w.nx;
    g.ny = w.ny;
    g.Lx = w.Lx;
    g.Ly = w.Ly;
    g.v = w.w[j][k];
    return g;
}

}  // namespace

ComplexGrid2 laguerre_multiplier(const ComplexGrid2& f, int n, int m, double b) {
    return padded_multiplier(f, [n, m, b](double kx, double ky) {
        return complexd{laguerre(n, m, (kx * kx + ky * ky) / (2.0 * b)), 0.0};
    });
}

ComplexGrid2 zeta_derivative(const ComplexGrid2& f, int power) {
    if (power != 1 && power != 2) throw std::invalid_argument("zeta_derivative: power must be 1 or 2");
    return padded_multiplier(f, [power](double kx, double ky) {
        complexd d = 0.5 * complexd{ky, kx};  // (i kx + ky)/2
        return power == 1 ? d : d * d;
    });
}

Grid2 effective_potential(const WeightMatrixField& w, int q, double b) {
    if (q < 0 || b <= 0.0) throw std::invalid_argument("effective_potential: need q>=0, b>0");
    const size_t n = w.w[0][0].size();
    std::vector<complexd> acc(n, complexd{0.0, 0.0});

    auto add = [&](const ComplexGrid2& g, double coef) {
        for (size_t i = 0; i < n; ++i) acc[i] += coef * g.v[i];
    };
    add(laguerre_multiplier(from_weights(w, 0, 0), q, 0, b), 1.0);
    add(laguerre_multiplier(from_weights(w, 1, 1), q + 1, 0, b), 2.0 * b * (q + 1));
    if (q >= 1) add(laguerre_multiplier(from_weights(w, 2, 2), q - 1, 0, b), 2.0 * b * q);

    std::vector<double> real_terms(n, 0.0);
    {
        ComplexGrid2 t5 = laguerre_multiplier(zeta_derivative(from_weights(w, 0, 1), 1), q, 1, b);
        for (size_t i = 0; i < n; ++i) real_terms[i] += -4.0 * t5.v[i].imag();
    }
    if (q >= 1) {
        ComplexGrid2 t4 = laguerre_multiplier(zeta_derivative(from_weights(w, 2, 1), 2), q - 1, 2, b);
        ComplexGrid2 t6 = laguerre_multiplier(zeta_derivative(from_weights(w, 2, 0), 1), q - 1, 1, b);
        for (size_t i = 0; i < n; ++i) {
            real_terms[i] += -8.0 * t4.v[i].real();
            real_terms[i] += -4.0 * t6.v[i].imag();
        }
    }

    double max_mag = 0.0, max_imag = 0.0;
    for (size_t i = 0; i < n; ++i) {
        max_mag = std::max(max_mag, std::abs(acc[i]) + std::fabs(real_terms[i]));
        max_imag = std::max(max_imag, std::fabs(acc[i].imag()));
    }
    if (max_imag > 1e-10 * std::max(1.0, max_mag))
        throw std::runtime_error(
            "effective_potential: imaginary residue above tolerance (derivative convention bug)");

    Grid2 out;
    out.nx = w.nx;
    out.ny = w.ny;
    out.Lx = w.Lx;
    out.Ly = w.Ly;
    out.v.resize(n);
    for (size_t i = 0; i < n; ++i) out.v[i] = acc[i].real() + real_terms[i];
    return out;
}

double potential_max(const Grid2& u) {
    int best = 0;
    for (size_t i = 1; i < u.v.size(); ++i)
        if (u.v[i] > u.v[best]) best = static_cast<int>(i);
    int bx = best / u.ny, by = best % u.ny;

    // Maximize the trigonometric interpolant: the grid fields are spectrally
    // resolved, so off-grid evaluation through the Fourier sum is accurate to
    // the tail tolerance.  Grid-level parabolic refinement is not enough when
    // the maximum sits on a radially degenerate ridge.
    std::vector<complexd> hat(u.v.size());
    for (size_t i = 0; i < u.v.size(); ++i) hat[i] = u.v[i];
    Fft2 fft(u.nx, u.ny);
    fft.forward(hat);
    const double norm = 1.0 / (static_cast<double>(u.nx) * u.ny);
    std::vector<complexd> ex(u.nx), ey(u.ny);
    auto eval = [&](double x, double y) {
        for (int ix = 0; ix < u.nx; ++ix)
            ex[ix] = std::exp(complexd{0.0, freq(ix, u.nx, u.Lx) * (x + 0.5 * u.Lx)});
        for (int iy = 0; iy < u.ny; ++iy)
            ey[iy] = std::exp(complexd{0.0, freq(iy, u.ny, u.Ly) * (y + 0.5 * u.Ly)});
        complexd acc{0.0, 0.0};
        for (int ix = 0; ix < u.nx; ++ix) {
            complexd row{0.0, 0.0};
            const complexd* h = &hat[static_cast<size_t>(ix) * u.ny];
            for (int iy = 0; iy < u.ny; ++iy) row += h[iy] * ey[iy];
            acc += ex[ix] * row;
        }
        return acc.real() * norm;
    };

    double cx = u.x(bx), cy = u.y(by);
    double fbest = u.v[best];
    double span = std::max(u.hx(), u.hy());
    for (int round = 0; round < 10; ++round) {
        for (int dim = 0; dim < 2; ++dim) {
            double lo = (dim == 0 ? cx : cy) - span, hi = (dim == 0 ? cx : cy) + span;
            for (int it = 0; it < 40; ++it) {
                double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
                double f1 = dim == 0 ? eval(m1, cy) : eval(cx, m1);
                double f2 = dim == 0 ? eval(m2, cy) : eval(cx, m2);
                if (f1 < f2)
                    lo = m1;
                else
                    hi = m2;
            }
            double c = 0.5 * (lo + hi);
            double fc = dim == 0 ? eval(c, cy) : eval(cx, c);
            if (fc > fbest) {
                fbest = fc;
                (dim == 0 ? cx : cy) = c;
            }
        }
        span *= 0.5;
    }
    if (fbest <= 0.0) throw std::runtime_error("potential_max: non-positive maximum");
    return fbest;
}

namespace {

// Overlap matrices by grid sums: H(l,k) = sum_i w_i V(x_i) phi_{k,m}(x_i) conj(phi_{l,s}(x_i)).
Eigen::MatrixXcd grid_overlap(const ComplexGrid2& V, int m, int s, double b, int K) {
    const double cellw = V.hx() * V.hy();
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(K + 1, K + 1);
    std::vector<std::vector<complexd>> phim(K + 1), phis(K + 1);
    for (int k = 0; k <= K; ++k) {
        phim[k].resize(V.v.size());
        phis[k].resize(V.v.size());
    }
    for (int ix = 0; ix < V.nx; ++ix)
        for (int iy = 0; iy < V.ny; ++iy) {
            size_t i = static_cast<size_t>(ix) * V.ny + iy;
            Vec2 p{V.x(ix), V.y(iy)};
            for (int k = 0; k <= K; ++k) {
                phim[k][i] = basis_value(k, m, b, p);
                phis[k][i] = (s == m) ? phim[k][i] : basis_value(k, s, b, p);
            }
        }
    for (int k = 0; k <= K; ++k)
        for (int l = 0; l <= K; ++l) {
            complexd acc{0.0, 0.0};
            for (size_t i = 0; i < V.v.size(); ++i) acc += V.v[i] * phim[k][i] * std::conj(phis[l][i]);
            H(l, k) = cellw * acc;
        }
    return H;
}

}  // namespace

double form_equivalence_gap(const CutoffField& cutoff, int q, double b, int K, int n_vectors,
                            std::uint64_t seed) {
    if (K > 16) throw std::invalid_argument("form_equivalence_gap: K capped at 16 for cost");
    WeightMatrixField wf = weight_fields(cutoff);
    Grid2 ups = effective_potential(wf, q, b);

    // ladder data: g_0 -> level q (coef 1), g_1 -> level q+1, g_2 -> level q-1
    const int levels[3] = {q, q + 1, q - 1};
    const double coefs[3] = {1.0, std::sqrt(2.0 * b * (q + 1)), q >= 1 ? std::sqrt(2.0 * b * q) : 0.0};

    Eigen::MatrixXcd H6 = Eigen::MatrixXcd::Zero(K + 1, K + 1);
    for (int j = 0; j < 3; ++j)
        for (int jp = 0; jp < 3; ++jp) {
            if (coefs[j] == 0.0 || coefs[jp] == 0.0) continue;
            Eigen::MatrixXcd part = grid_overlap(from_weights(wf, j, jp), levels[jp], levels[j], b, K);
            H6 += coefs[j] * coefs[jp] * part;
        }

    ComplexGrid2 upsc;
    upsc.nx = ups.nx;
    upsc.ny = ups.ny;
    upsc.Lx = ups.Lx;
    upsc.Ly = ups.Ly;
    upsc.v.assign(ups.v.begin(), ups.v.end());
    Eigen::MatrixXcd H7 = grid_overlap(upsc, 0, 0, b, K);

    Rng rng(seed);
    double gap = 0.0;
    for (int t = 0; t < n_vectors; ++t) {
        Eigen::VectorXcd u(K + 1);
        for (int i = 0; i <= K; ++i) u(i) = complexd{rng.gaussian(), rng.gaussian()};
        complexd f6 = (u.adjoint() * H6 * u)(0);
        complexd f7 = (u.adjoint() * H7 * u)(0);
        gap = std::max(gap, std::abs(f6 - f7) / u.squaredNorm());
    }
    return gap;
}

double multiplier_identity_gap(const ComplexGrid2& V, int m, double b, int Kc) {
    Eigen::MatrixXcd lhs = grid_overlap(V, m, m, b, Kc);
    Eigen::MatrixXcd rhs = grid_overlap(laguerre_multiplier(V, m, 0, b), 0, 0, b, Kc);
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

double ladder_identity_gap(const ComplexGrid2& V, int q, double b, int Kc) {
    Eigen::MatrixXcd lhs =
        std::sqrt(2.0 * b * (q + 1)) * grid_overlap(V, q + 1, q, b, Kc);
    ComplexGrid2 dV = zeta_derivative(V, 1);
    Eigen::MatrixXcd rhs =
        complexd{0.0, 2.0} * grid_overlap(laguerre_multiplier(dV, q, 1, b), 0, 0, b, Kc);
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

double second_derivative_identity_gap(const ComplexGrid2& V, int q, double b, int Kc) {
    if (q < 1) throw std::invalid_argument("second_derivative_identity_gap: need q >= 1");
    Eigen::MatrixXcd lhs =
        2.0 * b * std::sqrt(static_cast<double>(q) * (q + 1)) * grid_overlap(V, q + 1, q - 1, b, Kc);
    ComplexGrid2 d2V = zeta_derivative(V, 2);
    Eigen::MatrixXcd rhs = -4.0 * grid_overlap(laguerre_multiplier(d2V, q - 1, 2, b), 0, 0, b, Kc);
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

double shadow(const Domain3D& dom, Vec2 x_perp, double tol) {
    if (x_perp.x < dom.box_lo.x || x_perp.x > dom.box_hi.x || x_perp.y < dom.box_lo.y ||
        x_perp.y > dom.box_hi.y)
        return 0.0;
    const double z0 = dom.box_lo.z, z1 = dom.box_hi.z;
    const int n = 2048;
    auto inside = [&](double z) { return dom.inside({x_perp.x, x_perp.y, z}); };
    double h = (z1 - z0) / n;
    double total = 0.0;
    bool prev = inside(z0);
    double entry = prev ? z0 : 0.0;
    for (int i = 1; i <= n; ++i) {
        double z = z0 + i * h;
        bool cur = (i == n) ? false : inside(z);
        if (cur == prev) continue;
        // bisect the crossing
        double lo = z - h, hi = z;
        while (hi - lo > tol) {
            double mid = 0.5 * (lo + hi);
            (inside(mid) == prev ? lo : hi) = mid;
        }
        double crossing = 0.5 * (lo + hi);
        if (prev)
            total += crossing - entry;
        else
            entry = crossing;
        prev = cur;
    }
    return total;
}

}  // namespace llab
