#pragma once

#include <string>
#include <vector>

#include "llab/common.hpp"

namespace llab {

// Iterated-logarithm bundle for lambda in (0,1).  Below lambda ~ 1e-300 the
// value itself is not representable and callers must pass ln(lambda)
// directly; all profile math runs on the log.
struct AsymptoticProfile {
    double log_lambda = 0.0;     // ln(lambda) < 0
    double abs_ln_lambda = 0.0;  // |ln lambda|
    double ln2 = 0.0;            // ln|ln lambda|     (valid_ln2)
    double ln3 = 0.0;            // ln ln|ln lambda|  (valid_ln3)
    double phi0 = 0.0;           // |ln lambda| / ln2
    bool valid_ln2 = false;
    bool valid_ln3 = false;
    bool has_direct_lambda = false;
    double lambda = 0.0;  // only when representable
};

AsymptoticProfile profile(double lambda_or_log, bool is_log);

// Three-term profile phi0 * (1 + ln3/ln2 + C/ln2); requires valid_ln3.
double three_term_profile(const AsymptoticProfile& p, double C);

// Threshold constant 1 + ln(b cap^2).
double threshold_constant(double b, double cap);

struct XlogxInverse {
    double value = 0.0;      // Newton solution of x ln x - C x = y on the increasing branch
    double expansion = 0.0;  // three-term expansion y/ln y + y lnln y/ln^2 y + C y/ln^2 y
    double residual = 0.0;   // |value - expansion|
};

// Inverse of F_C(x) = x ln x - C x on the branch x > e^{C-1}; y must exceed
// the branch minimum F_C(e^{C-1}) = -e^{C-1}.
XlogxInverse xlogx_inverse(double C, double y);

enum class Side { below, above };
enum class BoundaryCondition { dirichlet, neumann };

struct SsfPrediction {
    int q = 0;
    Side side = Side::below;
    BoundaryCondition boundary = BoundaryCondition::dirichlet;
    double value = 0.0;
    bool bounded_flag = false;  // true exactly for (below, dirichlet): O(1), value 0
    double constant_used = 0.0;
    std::string cap_provenance;
};

// Leading spectral-shift prediction near the level threshold:
//   (below, dirichlet) -> bounded;      (below, neumann) -> -1/2 * phi1
//   (above, dirichlet) -> +1/4 * phi1;  (above, neumann) -> -1/4 * phi1
// Independent of q.
SsfPrediction ssf_predict(int q, Side side, BoundaryCondition bc, const AsymptoticProfile& prof,
                          double b, double cap, const std::string& cap_provenance = "caller");

struct RatioRow {
    double lambda_log = 0.0;
    double statistic = 0.0;   // n_plus or (1/pi) Tr arctan
    double prediction = 0.0;  // phi1/2 or phi1/4
    double ratio = 0.0;
    bool truncated = false;  // sequence not deep enough for this lambda
};

// Counting-ratio table: n_+(c sqrt(lambda)) vs phi1/2, on a log-domain
// eigenvalue list (non-increasing).
std::vector<RatioRow> counting_ratio_table(const std::vector<double>& log_nu, double c, double b,
                                           double cap, const std::vector<double>& log_lambdas);

// Tr-arctan table: (1/pi) Tr arctan(nu/(c sqrt(lambda))) vs phi1/4, arctan
// evaluated log-safely (saturates at pi/2, tiny ratios as the ratio itself).
std::vector<RatioRow> arctan_ratio_table(const std::vector<double>& log_nu, double c, double b,
                                         double cap, const std::vector<double>& log_lambdas);

}  // namespace llab
