#include "llab/special.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace llab {

namespace {

// Series for the lower incomplete gamma, returns ln(P(a,x)).
double ln_p_series(double a, double x) {
    double sum = 1.0, term = 1.0;
    for (int n = 1; n < 10000; ++n) {
        term *= x / (a + n);
        sum += term;
        if (term < sum * 1e-17) break;
    }
    return a * std::log(x) - x - std::lgamma(a + 1.0) + std::log(sum);
}

// Continued fraction for Q(a,x) = 1 - P(a,x), Lentz's method.
double q_cont_frac(double a, double x) {
    const double tiny = 1e-300;
    double f = x + 1.0 - a, C = f, D = 0.0;
    if (f == 0.0) f = tiny;
    for (int i = 1; i < 10000; ++i) {
        double an = -i * (i - a);
        double bn = x + 2.0 * i + 1.0 - a;
        D = bn + an * D;
        if (D == 0.0) D = tiny;
        C = bn + an / C;
        if (C == 0.0) C = tiny;
        D = 1.0 / D;
        double delta = C * D;
        f *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(a * std::log(x) - x - std::lgamma(a)) / f;
}

}  // namespace

double reg_gamma_p(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw std::invalid_argument("reg_gamma_p: need a>0, x>=0");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return std::exp(ln_p_series(a, x));
    return 1.0 - q_cont_frac(a, x);
}

double ln_reg_gamma_p(double a, double x) {
    if (a <= 0.0 || x <= 0.0) throw std::invalid_argument("ln_reg_gamma_p: need a>0, x>0");
    if (x < a + 1.0) return ln_p_series(a, x);
    return std::log(1.0 - q_cont_frac(a, x));
}

double laguerre(int q, int m, double t) {
    if (q < 0 || m < 0) throw std::invalid_argument("laguerre: indices must be non-negative");
    if (q == 0) return 1.0;
    if (q <= 8) {
        // direct sum; binomial built by a running product so no factorial overflow
        double sum = 0.0;
        double binom = 1.0;  // C(q+m, q-j) starting at j=0: C(q+m, q)
        for (int i = 0; i < q; ++i) binom *= static_cast<double>(m + q - i) / (q - i);
        double tj = 1.0;  // (-t)^j / j!
        for (int j = 0; j <= q; ++j) {
            sum += binom * tj;
            if (j < q) {
                binom *= static_cast<double>(q - j) / (m + j + 1);
                tj *= -t / (j + 1);
            }
        }
        return sum;
    }
    // upward three-term recurrence in the degree
    double lm1 = 1.0;
    double l = 1.0 + m - t;
    for (int n = 1; n < q; ++n) {
        double lp1 = ((2.0 * n + 1.0 + m - t) * l - (n + m) * lm1) / (n + 1.0);
        lm1 = l;
        l = lp1;
    }
    return l;
}

const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n) {
    static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<double> x(n), w(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Newton from the Chebyshev-angle initial guess
        double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (t * p1 - p0) / (t * t - 1.0);
            double dt = p1 / pp;
            t -= dt;
            if (std::fabs(dt) < 1e-15) break;
        }
        x[i] = -t;
        x[n - 1 - i] = t;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - t * t) * pp * pp);
    }
    auto [pos, ok] = cache.emplace(n, std::make_pair(std::move(x), std::move(w)));
    return pos->second;
}

void gauss_legendre_on(int n, double lo, double hi,
                       std::vector<double>& nodes, std::vector<double>& weights) {
    const auto& [x, w] = gauss_legendre(n);
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < n; ++i) {
        nodes[i] = 0.5 * (hi - lo) * x[i] + 0.5 * (hi + lo);
        weights[i] = 0.5 * (hi - lo) * w[i];
    }
}

}  // namespace llab
