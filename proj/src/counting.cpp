#include "llab/counting.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace llab {

CountingResult count(double s, const std::vector<double>& eigenvalues) {
    if (s <= 0.0) throw std::invalid_argument("count: s must be positive");
    CountingResult r{s, 0, 0};
    for (double l : eigenvalues) {
        if (l > s) ++r.n_plus;
        if (l < -s) ++r.n_minus;
    }
    return r;
}

std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& T) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(T, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("hermitian_eigenvalues: solver failed");
    std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + T.rows());
    return out;
}

bool weyl_check(const Eigen::MatrixXcd& T1, const Eigen::MatrixXcd& T2, double s1, double s2) {
    if (T1.rows() != T2.rows()) throw std::invalid_argument("weyl_check: dimension mismatch");
    auto e1 = hermitian_eigenvalues(T1);
    auto e2 = hermitian_eigenvalues(T2);
    auto es = hermitian_eigenvalues(T1 + T2);
    auto cs = count(s1 + s2, es);
    auto c1 = count(s1, e1);
    auto c2 = count(s2, e2);
    return cs.n_plus <= c1.n_plus + c2.n_plus && cs.n_minus <= c1.n_minus + c2.n_minus;
}

std::pair<int, double> chebyshev_bound(const Eigen::MatrixXcd& T, double s, double p) {
    if (s <= 0.0 || p < 1.0) throw std::invalid_argument("chebyshev_bound: need s>0, p>=1");
    auto ev = hermitian_eigenvalues(T);
    auto c = count(s, ev);
    double norm_p = 0.0;
    for (double l : ev) norm_p += std::pow(std::fabs(l), p);
    return {c.n_plus + c.n_minus, norm_p / std::pow(s, p)};
}

namespace {

// Real generalized eigenvalues t of det(A + t B) = 0 via LAPACK's QZ on
// (A, -B); infinite and genuinely complex eigenvalues are dropped.
bool pencil_real_roots(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B,
                       std::vector<double>& roots) {
    const int n = static_cast<int>(A.rows());
    Eigen::MatrixXcd a = A;
    Eigen::MatrixXcd mb = -B;
    std::vector<std::complex<double>> alpha(n), beta(n);
    int info = LAPACKE_zggev(LAPACK_COL_MAJOR, 'N', 'N', n, a.data(), n, mb.data(), n,
                             alpha.data(), beta.data(), nullptr, 1, nullptr, 1);
    if (info != 0) return false;
    roots.clear();
    for (int i = 0; i < n; ++i) {
        complexd al = alpha[i];
        complexd be = beta[i];
        double scale = std::abs(al) + std::abs(be);
        if (scale == 0.0) return false;  // singular pencil
        if (std::abs(be) <= 1e-14 * scale) continue;  // eigenvalue at infinity
        complexd t = al / be;
        if (std::fabs(t.imag()) <= 1e-9 * (1.0 + std::fabs(t.real()))) roots.push_back(t.real());
    }
    std::sort(roots.begin(), roots.end());
    return true;
}

int count_at(const HermitianPair& pair, double t, double s, Sign sign) {
    Eigen::MatrixXcd m = pair.re_part + t * pair.im_part;
    auto ev = hermitian_eigenvalues(m);
    auto c = count(s, ev);
    return sign == Sign::plus ? c.n_plus : c.n_minus;
}

}  // namespace

AveragedCountResult averaged_count(const HermitianPair& pair, double s, Sign sign) {
    if (s <= 0.0) throw std::invalid_argument("averaged_count: s must be positive");
    if (pair.re_part.rows() != pair.im_part.rows())
        throw std::invalid_argument("averaged_count: dimension mismatch");
    AveragedCountResult res;
    {
        auto im_ev = hermitian_eigenvalues(pair.im_part);
        res.im_psd = *std::min_element(im_ev.begin(), im_ev.end()) >= -1e-12;
    }
    const int n = static_cast<int>(pair.re_part.rows());
    double im_norm = pair.im_part.cwiseAbs().maxCoeff();
    if (im_norm < 1e-14) {
        // integrand is constant in t
        res.value = static_cast<double>(count_at(pair, 0.0, s, sign));
        return res;
    }

    double shift = (sign == Sign::plus) ? -s : s;
    Eigen::MatrixXcd A = pair.re_part + shift * Eigen::MatrixXcd::Identity(n, n);
    std::vector<double> roots;
    if (pencil_real_roots(A, pair.im_part, roots)) {
        // exact: sum the staircase against arctan increments
        std::vector<double> breaks;
        for (double r : roots) breaks.push_back(r);
        double acc = 0.0;
        double prev_theta = -0.5 * M_PI;
        for (size_t i = 0; i <= breaks.size(); ++i) {
            double theta_hi = (i < breaks.size()) ? std::atan(breaks[i]) : 0.5 * M_PI;
            if (theta_hi <= prev_theta) continue;
            double t_mid;
            if (i == 0 && breaks.empty()) t_mid = 0.0;
            else if (i == 0) t_mid = breaks[0] - 1.0;
            else if (i == breaks.size()) t_mid = breaks.back() + 1.0;
            else t_mid = 0.5 * (breaks[i - 1] + breaks[i]);
            acc += count_at(pair, t_mid, s, sign) * (theta_hi - prev_theta);
            prev_theta = theta_hi;
        }
        res.value = acc / M_PI;
        return res;
    }

    // singular pencil: dense sampling in theta = arctan t, flagged
    res.exact = false;
    res.flagged = true;
    const int N = 20000;
    double acc = 0.0;
    for (int i = 0; i < N; ++i) {
        double theta = -0.5 * M_PI + (i + 0.5) * (M_PI / N);
        acc += count_at(pair, std::tan(theta), s, sign);
    }
    res.value = acc / N;
    return res;
}

HermitianPair model_pair(const Eigen::MatrixXcd& M, double lambda) {
    if (lambda == 0.0) throw std::invalid_argument("model_pair: lambda must be nonzero");
    const int n = static_cast<int>(M.rows());
    double denom = 2.0 * std::sqrt(std::fabs(lambda));
    HermitianPair pair;
    if (lambda < 0.0) {
        // iota = 1: the pair is self-adjoint and non-positive
        pair.re_part = -M / denom;
        pair.im_part = Eigen::MatrixXcd::Zero(n, n);
    } else {
        // iota = -i: purely imaginary, Re part vanishes
        pair.re_part = Eigen::MatrixXcd::Zero(n, n);
        pair.im_part = M / denom;
    }
    return pair;
}

double closed_form_average(const Eigen::MatrixXcd& M, double lambda, double s, Sign sign) {
    if (lambda == 0.0) throw std::invalid_argument("closed_form_average: lambda must be nonzero");
    if (s <= 0.0) throw std::invalid_argument("closed_form_average: s must be positive");
    auto ev = hermitian_eigenvalues(M);
    if (lambda < 0.0) {
        if (sign == Sign::plus) return 0.0;
        double thr = 2.0 * s * std::sqrt(-lambda);
        return static_cast<double>(count(thr, ev).n_plus);
    }
    double denom = 2.0 * s * std::sqrt(lambda);
    double acc = 0.0;
    for (double l : ev) acc += std::atan(l / denom);
    return acc / M_PI;
}

TrArctanResult tr_arctan(const std::vector<double>& eigenvalues, double scale) {
    if (scale <= 0.0) throw std::invalid_argument("tr_arctan: scale must be positive");
    TrArctanResult r;
    for (double l : eigenvalues) {
        if (l < 0.0) throw std::invalid_argument("tr_arctan: eigenvalues must be non-negative");
        r.direct += std::atan(l / scale);
    }
    // staircase path: n_+(s) is i on (mu_{i+1}, mu_i) for the sorted ratios
    std::vector<double> mu(eigenvalues);
    for (double& m : mu) m /= scale;
    std::sort(mu.begin(), mu.end(), std::greater<double>());
    double acc = 0.0;
    for (size_t i = 0; i < mu.size(); ++i) {
        double hi = std::atan(mu[i]);
        double lo = (i + 1 < mu.size()) ? std::atan(mu[i + 1]) : 0.0;
        acc += static_cast<double>(i + 1) * (hi - lo);
    }
    r.staircase = acc;
    return r;
}

bool averaged_count_bound_check(const Eigen::MatrixXcd& T1, const Eigen::MatrixXcd& T2, double s,
                                Sign sign) {
    double lhs = averaged_count(HermitianPair{T1, T2}, s, sign).value;
    auto e1 = hermitian_eigenvalues(T1);
    auto c1 = count(0.5 * s, e1);
    double trace_norm = 0.0;
    for (double l : hermitian_eigenvalues(T2)) trace_norm += std::fabs(l);
    double rhs = (sign == Sign::plus ? c1.n_plus : c1.n_minus) + 2.0 / (M_PI * s) * trace_norm;
    return lhs <= rhs + 1e-10;
}

}  // namespace llab
