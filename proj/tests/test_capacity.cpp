#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "llab/capacity.hpp"

using namespace llab;

namespace {

std::vector<Vec2> roots_of_unity(int n, double radius = 1.0) {
    std::vector<Vec2> pts(n);
    for (int i = 0; i < n; ++i) {
        double a = 2.0 * M_PI * i / n;
        pts[i] = {radius * std::cos(a), radius * std::sin(a)};
    }
    return pts;
}

}  // namespace

TEST_CASE("discrete diameter closed values") {
    CHECK(discrete_diameter({{0.0, 0.0}, {1.0, 0.0}}) == doctest::Approx(1.0).epsilon(1e-15));
    // roots of unity: product formula gives d_n = n^{1/(n-1)}
    for (int n : {8, 64}) {
        double expect = std::pow(static_cast<double>(n), 1.0 / (n - 1));
        CHECK(discrete_diameter(roots_of_unity(n)) == doctest::Approx(expect).epsilon(1e-12));
    }
    // the sequence decreases toward the unit-circle capacity 1
    double d64 = discrete_diameter(roots_of_unity(64));
    double d256 = discrete_diameter(roots_of_unity(256));
    double d1024 = discrete_diameter(roots_of_unity(1024));
    CHECK(d64 > d256);
    CHECK(d256 > d1024);
    CHECK(d1024 - 1.0 < 8e-3);
    // homogeneity under scaling (negative scale allowed)
    auto pts = roots_of_unity(16);
    auto scaled = pts;
    for (auto& p : scaled) p = -2.5 * p;
    CHECK(discrete_diameter(scaled) ==
          doctest::Approx(2.5 * discrete_diameter(pts)).epsilon(1e-13));
    CHECK_THROWS(discrete_diameter({{0.0, 0.0}}));
    CHECK_THROWS(discrete_diameter({{0.0, 0.0}, {0.0, 5e-15}}));
}

TEST_CASE("fekete points: three points on a circle form an equilateral triangle") {
    FeketeConfig cfg;
    cfg.seed = 3;
    auto fr = fekete_points(PlanarSet::disk({0.0, 0.0}, 1.0), 3, cfg);
    REQUIRE(fr.points.size() == 3);
    // brute-force oracle over angle parametrizations (first point pinned)
    double best = -1e300;
    const int g = 240;
    for (int i = 1; i < g; ++i)
        for (int j = i + 1; j < g; ++j) {
            double a1 = 2.0 * M_PI * i / g, a2 = 2.0 * M_PI * j / g;
            Vec2 p0{1.0, 0.0}, p1{std::cos(a1), std::sin(a1)}, p2{std::cos(a2), std::sin(a2)};
            double e = std::log(dist(p0, p1)) + std::log(dist(p0, p2)) + std::log(dist(p1, p2));
            best = std::max(best, e);
        }
    CHECK(fr.log_energy >= best - 1e-9);
    for (int i = 0; i < 3; ++i)
        CHECK(dist(fr.points[i], fr.points[(i + 1) % 3]) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-6));
}

TEST_CASE("fekete points on a segment include the endpoints") {
    Vec2 a{-2.0, 0.0}, b{2.0, 0.0};
    FeketeConfig cfg;
    cfg.seed = 11;
    auto fr = fekete_points(PlanarSet::segment(a, b), 8, cfg);
    double da = 1e300, db = 1e300;
    for (auto& p : fr.points) {
        da = std::min(da, dist(p, a));
        db = std::min(db, dist(p, b));
    }
    CHECK(da < 1e-6);
    CHECK(db < 1e-6);
    // moving the point at an endpoint inward lowers the energy
    size_t ia = 0;
    for (size_t i = 0; i < fr.points.size(); ++i)
        if (dist(fr.points[i], a) < 1e-6) ia = i;
    auto perturbed = fr.points;
    perturbed[ia].x += 1e-4;
    double e0 = 0.0, e1 = 0.0;
    for (size_t i = 0; i < fr.points.size(); ++i)
        for (size_t j = i + 1; j < fr.points.size(); ++j) {
            e0 += std::log(dist(fr.points[i], fr.points[j]));
            e1 += std::log(dist(perturbed[i], perturbed[j]));
        }
    CHECK(e1 < e0);
}

TEST_CASE("disk and its boundary circle give the same diameter") {
    FeketeConfig cfg;
    cfg.seed = 5;
    auto on_disk = fekete_points(PlanarSet::disk({0.0, 0.0}, 1.0), 32, cfg);
    auto on_circle = fekete_points(
        PlanarSet::curve([](double t) { return Vec2{std::cos(2 * M_PI * t), std::sin(2 * M_PI * t)}; },
                         256),
        32, cfg);
    CHECK(discrete_diameter(on_disk.points) ==
          doctest::Approx(discrete_diameter(on_circle.points)).epsilon(1e-9));
}

TEST_CASE("capacity golden values") {
    FeketeConfig cfg;
    cfg.seed = 1;
    auto disk = capacity(PlanarSet::disk({0.0, 0.0}, 1.0), {64, 96, 128, 160, 200}, cfg);
    CHECK(std::fabs(disk.value - 1.0) < 0.01);
    CHECK(disk.monotone);
    CHECK(disk.extrapolated);
    CHECK_FALSE(disk.optimizer_warning);

    auto seg = capacity(PlanarSet::segment({-2.0, 0.0}, {2.0, 0.0}), {64, 96, 128, 160, 200}, cfg);
    CHECK(std::fabs(seg.value - 1.0) < 0.02);

    // cross-check: optimized diameters dominate the Chebyshev-extrema configuration
    for (auto& [n, d] : seg.diameters) {
        std::vector<Vec2> cheb(n);
        for (int i = 0; i < n; ++i) cheb[i] = {2.0 * std::cos(M_PI * i / (n - 1)), 0.0};
        CHECK(d >= discrete_diameter(cheb) - 1e-9);
    }
}

TEST_CASE("capacity scaling and monotonicity") {
    FeketeConfig cfg;
    cfg.seed = 9;
    std::vector<int> sched{32, 64};
    auto base = capacity(PlanarSet::disk({0.0, 0.0}, 1.0), sched, cfg);
    Rng rng(17);
    for (int i = 0; i < 6; ++i) {
        double alpha = rng.uniform(0.3, 3.0) * (i % 2 ? -1.0 : 1.0);
        auto scaled =
            capacity(PlanarSet::affine(PlanarSet::disk({0.0, 0.0}, 1.0), alpha, {0.4, -0.2}), sched, cfg);
        CHECK(std::fabs(scaled.value - std::fabs(alpha) * base.value) < 1e-8 * std::fabs(alpha));
    }
    // nesting: smaller disk has no larger capacity
    auto small = capacity(PlanarSet::disk({0.0, 0.0}, 0.7), sched, cfg);
    CHECK(small.value <= base.value + 1e-6);
}

TEST_CASE("capacity input validation") {
    CHECK_THROWS(capacity(PlanarSet::disk({0.0, 0.0}, 1.0), {4, 16}, {}));
    CHECK_THROWS(capacity(PlanarSet::disk({0.0, 0.0}, 1.0), {16, 16}, {}));
    CHECK_THROWS(capacity(PlanarSet::disk({0.0, 0.0}, 1.0), {64}, {}));
    CHECK_THROWS(fekete_points(PlanarSet::disk({0.0, 0.0}, 1.0), 1, {}));
}

TEST_CASE("curve schedule: disks shrink to circles with matching capacities") {
    std::vector<std::string> notices;
    auto curves = curve_schedule(PlanarSet::disk({0.0, 0.0}, 1.0), {0.2, 0.1, 0.05}, &notices);
    REQUIRE(curves.size() == 3);
    FeketeConfig cfg;
    cfg.seed = 2;
    double expect[] = {0.8, 0.9, 0.95};
    double prev = 0.0;
    for (size_t i = 0; i < curves.size(); ++i) {
        auto est = capacity(curves[i], {32, 64, 96}, cfg);
        CHECK(std::fabs(est.value - expect[i]) < 0.02 * expect[i]);
        CHECK(est.value >= prev - 1e-6);  // non-decreasing along the schedule
        prev = est.value;
        Vec2 p = boundary_curves(curves[i])[0].eval(0.25);
        CHECK(p.norm() == doctest::Approx(expect[i]).epsilon(1e-9));
    }
    // too-large offset is skipped with a notice
    auto collapsed = curve_schedule(PlanarSet::disk({0.0, 0.0}, 1.0), {1.5, 0.1}, &notices);
    CHECK(collapsed.size() == 1);
    CHECK(!notices.empty());
}

TEST_CASE("curve schedule: square offsets approach the square capacity") {
    PlanarSet square = PlanarSet::rectangle({-0.5, -0.5}, {0.5, 0.5});
    FeketeConfig cfg;
    cfg.seed = 4;
    auto curves = curve_schedule(square, {0.05, 0.02, 0.01});
    REQUIRE(curves.size() == 3);
    auto direct = capacity(square, {48, 96, 144}, cfg);
    auto last = capacity(curves.back(), {48, 96, 144}, cfg);
    CHECK(std::fabs(last.value - direct.value) < 0.05 * direct.value);
}

TEST_CASE("outer thickening") {
    // disks are exact
    auto t = outer_thickening(PlanarSet::disk({0.3, -0.1}, 1.0), 0.5);
    const auto* d = std::get_if<Disk>(&t.shape);
    REQUIRE(d != nullptr);
    CHECK(d->radius == doctest::Approx(1.5));
    CHECK(d->center.x == doctest::Approx(0.3));

    // thickened square contains the square and its capacity converges downward
    PlanarSet square = PlanarSet::rectangle({-0.5, -0.5}, {0.5, 0.5});
    FeketeConfig cfg;
    cfg.seed = 6;
    double cap_square = capacity(square, {48, 96, 144}, cfg).value;
    double prev_err = 1e300, prev_cap = 1e300;
    for (double delta : {0.2, 0.1, 0.05}) {
        PlanarSet thick = outer_thickening(square, delta);
        for (Vec2 p : {Vec2{0.5, 0.5}, Vec2{-0.5, 0.49}, Vec2{0.5 + 0.9 * delta, 0.0}})
            CHECK(thick.contains(p));
        double cap = capacity(thick, {48, 96, 144}, cfg).value;
        CHECK(cap >= cap_square - 0.01);          // containment: no smaller capacity
        CHECK(cap <= prev_cap + 1e-6);            // monotone in delta
        CHECK(std::fabs(cap - cap_square) < prev_err + 1e-6);  // converges to cap(square)
        prev_err = std::fabs(cap - cap_square);
        prev_cap = cap;
    }
    CHECK(prev_err < 0.08);
    CHECK_THROWS(outer_thickening(square, -0.1));
}
