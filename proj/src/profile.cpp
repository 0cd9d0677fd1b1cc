#include "llab/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace llab {

AsymptoticProfile profile(double lambda_or_log, bool is_log) {
    AsymptoticProfile p;
    if (is_log) {
        if (lambda_or_log >= 0.0) throw std::invalid_argument("profile: need ln(lambda) < 0");
        p.log_lambda = lambda_or_log;
        if (lambda_or_log > -700.0) {
            p.lambda = std::exp(lambda_or_log);
            p.has_direct_lambda = true;
        }
    } else {
        if (!(lambda_or_log > 0.0 && lambda_or_log < 1.0))
            throw std::invalid_argument("profile: lambda must lie in (0,1)");
        p.lambda = lambda_or_log;
        p.has_direct_lambda = true;
        p.log_lambda = std::log(lambda_or_log);
    }
    p.abs_ln_lambda = -p.log_lambda;
    p.valid_ln2 = p.abs_ln_lambda > 1.0;
    if (p.valid_ln2) {
        p.ln2 = std::log(p.abs_ln_lambda);
        p.phi0 = p.abs_ln_lambda / p.ln2;
        p.valid_ln3 = p.ln2 > 1.0;
        if (p.valid_ln3) p.ln3 = std::log(p.ln2);
    }
    return p;
}

double three_term_profile(const AsymptoticProfile& p, double C) {
    if (!p.valid_ln3)
        throw std::invalid_argument("three_term_profile: profile invalid (need lambda < e^-e)");
    return p.phi0 * (1.0 + p.ln3 / p.ln2 + C / p.ln2);
}

double threshold_constant(double b, double cap) {
    if (b <= 0.0 || cap <= 0.0) throw std::invalid_argument("threshold_constant: need b>0, cap>0");
    return 1.0 + std::log(b * cap * cap);
}

XlogxInverse xlogx_inverse(double C, double y) {
    double branch_min = -std::exp(C - 1.0);
    if (y <= branch_min)
        throw std::invalid_argument(
            "xlogx_inverse: y below the branch minimum -e^{C-1}; the increasing branch x > e^{C-1} "
            "has no preimage");
    XlogxInverse out;
    double lny = y > 1.0 ? std::log(y) : 0.0;
    if (y > std::exp(1.0)) {
        double lnlny = std::log(lny);
        out.expansion = y / lny + y * lnlny / (lny * lny) + C * y / (lny * lny);
    } else {
        out.expansion = std::exp(C - 1.0) + 1.0;  // no useful expansion this close to the branch point
    }
    double x = std::max(out.expansion, std::exp(C - 1.0) * (1.0 + 1e-8));
    for (int it = 0; it < 200; ++it) {
        double f = x * std::log(x) - C * x - y;
        double fp = std::log(x) + 1.0 - C;
        double step = f / fp;
        double xn = x - step;
        if (xn <= std::exp(C - 1.0)) xn = 0.5 * (x + std::exp(C - 1.0));
        if (std::fabs(xn - x) <= 1e-14 * std::fabs(xn)) {
            x = xn;
            break;
        }
        x = xn;
    }
    out.value = x;
    out.residual = std::fabs(out.value - out.expansion);
    return out;
}

SsfPrediction ssf_predict(int q, Side side, BoundaryCondition bc, const AsymptoticProfile& prof,
                          double b, double cap, const std::string& cap_provenance) {
    if (q < 0) throw std::invalid_argument("ssf_predict: q must be >= 0");
    SsfPrediction pred;
    pred.q = q;
    pred.side = side;
    pred.boundary = bc;
    pred.constant_used = threshold_constant(b, cap);
    pred.cap_provenance = cap_provenance;
    if (side == Side::below && bc == BoundaryCondition::dirichlet) {
        pred.bounded_flag = true;
        pred.value = 0.0;
        return pred;
    }
    double phi1 = three_term_profile(prof, pred.constant_used);
    if (side == Side::below) {
        pred.value = -0.5 * phi1;  // neumann
    } else {
        pred.value = (bc == BoundaryCondition::dirichlet) ? 0.25 * phi1 : -0.25 * phi1;
    }
    return pred;
}

namespace {

double half_log_threshold(double c, double log_lambda) { return std::log(c) + 0.5 * log_lambda; }

}  // namespace

std::vector<RatioRow> counting_ratio_table(const std::vector<double>& log_nu, double c, double b,
                                           double cap, const std::vector<double>& log_lambdas) {
    if (c <= 0.0) throw std::invalid_argument("counting_ratio_table: c must be positive");
    double C = threshold_constant(b, cap);
    std::vector<RatioRow> rows;
    for (double ll : log_lambdas) {
        AsymptoticProfile p = profile(ll, true);
        RatioRow row;
        row.lambda_log = ll;
        row.prediction = 0.5 * three_term_profile(p, C);
        double thr = half_log_threshold(c, ll);
        // log_nu is non-increasing: count entries above the threshold
        auto it = std::lower_bound(log_nu.begin(), log_nu.end(), thr, std::greater<double>());
        row.statistic = static_cast<double>(it - log_nu.begin());
        row.truncated = !(log_nu.back() < thr);  // sequence must reach below the threshold
        row.ratio = row.statistic / row.prediction;
        rows.push_back(row);
    }
    return rows;
}

std::vector<RatioRow> arctan_ratio_table(const std::vector<double>& log_nu, double c, double b,
                                         double cap, const std::vector<double>& log_lambdas) {
    if (c <= 0.0) throw std::invalid_argument("arctan_ratio_table: c must be positive");
    double C = threshold_constant(b, cap);
    std::vector<RatioRow> rows;
    for (double ll : log_lambdas) {
        AsymptoticProfile p = profile(ll, true);
        RatioRow row;
        row.lambda_log = ll;
        row.prediction = 0.25 * three_term_profile(p, C);
        double thr = half_log_threshold(c, ll);
        double acc = 0.0;
        for (double lv : log_nu) {
            double d = lv - thr;  // ln(nu / (c sqrt(lambda)))
            if (d > 35.0)
                acc += 0.5 * M_PI - std::atan(std::exp(-d));
            else if (d > -700.0)
                acc += std::atan(std::exp(d));
        }
        row.statistic = acc / M_PI;
        row.truncated = !(log_nu.back() < thr - 35.0);
        row.ratio = row.statistic / row.prediction;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace llab
