#pragma once

#include <Eigen/Dense>
#include <vector>

#include "llab/common.hpp"

namespace llab {

enum class Sign { plus, minus };

struct CountingResult {
    double s = 0.0;
    int n_plus = 0;
    int n_minus = 0;
};

// n_+(s) = #{lambda > s}, n_-(s) = #{lambda < -s}; strictly, eigenvalues
// exactly equal to +-s are not counted.
CountingResult count(double s, const std::vector<double>& eigenvalues);

std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& T);

// n_+-(s1+s2; T1+T2) <= n_+-(s1;T1) + n_+-(s2;T2) for both signs.
bool weyl_check(const Eigen::MatrixXcd& T1, const Eigen::MatrixXcd& T2, double s1, double s2);

// Returns (n_+(s)+n_-(s), s^-p sum |lambda|^p); the caller asserts lhs <= rhs.
std::pair<int, double> chebyshev_bound(const Eigen::MatrixXcd& T, double s, double p);

struct HermitianPair {
    Eigen::MatrixXcd re_part;
    Eigen::MatrixXcd im_part;
};

struct AveragedCountResult {
    double value = 0.0;
    bool exact = true;     // crossing-based evaluation succeeded
    bool flagged = false;  // fell back to dense sampling
    bool im_psd = false;   // metadata: whether the imaginary part was PSD
};

// (1/pi) Int_R n_{sign}(s; Re + t Im) dt/(1+t^2).  The integrand is a step
// function of t; its breakpoints are the real generalized eigenvalues of the
// pencil (Re -+ s, -Im), so the integral is a finite sum of arctan
// differences.  A singular pencil falls back to dense theta-sampling and
// flags the result.
AveragedCountResult averaged_count(const HermitianPair& pair, double s, Sign sign);

// Closed forms for the averaged count of the model pair built from a PSD
// matrix M and a nonzero spectral offset lambda:
//   lambda < 0: sign + -> 0; sign - -> n_+(2 s sqrt|lambda|; M)
//   lambda > 0: either sign -> (1/pi) Tr arctan(M/(2 s sqrt(lambda)))
double closed_form_average(const Eigen::MatrixXcd& M, double lambda, double s, Sign sign);

// Builds the model pair (Re, Im) of -iota(lambda)/(2 sqrt|lambda|) * M with
// iota = 1 for lambda<0 and -i for lambda>0.
HermitianPair model_pair(const Eigen::MatrixXcd& M, double lambda);

struct TrArctanResult {
    double direct = 0.0;     // sum of arctan(lambda_i/scale)
    double staircase = 0.0;  // integral of the counting staircase, same value
};

// Tr arctan(T/scale) two ways for nonnegative eigenvalue lists.
TrArctanResult tr_arctan(const std::vector<double>& eigenvalues, double scale);

// Averaged count of (T1, T2) at s versus n_{sign}(s/2; T1) + (2/(pi s))||T2||_1.
bool averaged_count_bound_check(const Eigen::MatrixXcd& T1, const Eigen::MatrixXcd& T2, double s,
                                Sign sign);

}  // namespace llab
