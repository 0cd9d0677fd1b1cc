#include <doctest.h>

#include <cmath>

#include "llab/landau.hpp"
#include "llab/suites.hpp"
#include "llab/toeplitz.hpp"

using namespace llab;

TEST_CASE("basis value at the origin") {
    double b = 2.0;
    complexd v = basis_value(0, 0, b, {0.0, 0.0});
    CHECK(v.real() == doctest::Approx(std::sqrt(b / (2.0 * M_PI))).epsilon(1e-15));
    CHECK(v.imag() == doctest::Approx(0.0));
    // nonzero angular momentum vanishes at the origin
    CHECK(std::abs(basis_value(3, 1, b, {0.0, 0.0})) == 0.0);
    CHECK_THROWS(basis_value(9000, 2000, b, {0.0, 0.0}));  // index cap
    CHECK_THROWS(basis_value(0, 0, -1.0, {0.0, 0.0}));
}

TEST_CASE("normalization and orthogonality by quadrature") {
    const double b = 2.0;
    auto one = [](double, double) { return complexd{1.0, 0.0}; };
    for (int k : {0, 1, 2})
        for (int q : {0, 1, 2}) {
            auto r = overlap_element(one, q, q, k, k, b, {1e-11, 18});
            CHECK(r.converged);
            CHECK(std::abs(r.value - complexd{1.0, 0.0}) < 1e-10);
        }
    auto r01 = overlap_element(one, 0, 0, 1, 0, b, {1e-11, 18});
    CHECK(std::abs(r01.value) < 1e-10);
    // distinct levels are orthogonal even at equal angular momentum offset
    auto rq = overlap_element(one, 1, 0, 0, 1, b, {1e-11, 18});
    CHECK(std::abs(rq.value) < 1e-10);
}

TEST_CASE("ladder coefficients") {
    auto up = ladder_apply(LadderDirection::raise, 0, 0, 2.0);
    CHECK(up.coefficient == doctest::Approx(2.0).epsilon(1e-15));  // sqrt(2*2*1)
    CHECK(up.new_q == 1);
    auto down0 = ladder_apply(LadderDirection::lower, 5, 0, 2.0);
    CHECK(down0.coefficient == 0.0);
    CHECK(down0.new_q == 0);
    // lower then raise multiplies by 2 b q
    for (int q : {1, 2, 5}) {
        double bfield = 1.7;
        auto dn = ladder_apply(LadderDirection::lower, 0, q, bfield);
        auto upq = ladder_apply(LadderDirection::raise, 0, dn.new_q, bfield);
        CHECK(dn.coefficient * upq.coefficient ==
              doctest::Approx(2.0 * bfield * q).epsilon(1e-14));
    }
}

TEST_CASE("finite-difference ladder action and gram identity") {
    SuiteReport rep = suite_ladder();
    for (const auto& c : rep.checks) {
        INFO(c.name, " worst ", c.worst);
        CHECK(c.passed);
    }
}

TEST_CASE("gauge phase exponent") {
    CHECK(gauge_phase_exponent(2.0, {1.0, 1.0}) == doctest::Approx(1.0));
    CHECK(gauge_phase_exponent(4.0, {0.0, 0.0}) == 0.0);
}
