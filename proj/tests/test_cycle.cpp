#include "lyaplab/cycle.hpp"
#include "lyaplab/orbit.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace lyaplab;

namespace {

// real root of 0.3 e^x = x on [0, 1] by bisection
double bisect_exp_fixed_point() {
    auto g = [](double x) { return 0.3 * std::exp(x) - x; };
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (g(lo) * g(mid) <= 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("detect: superattracting fixed point of z^2") {
    CycleSearchResult res = detect_attracting_cycle(MapSpec::poly(2, {0.0, 0.0}), 8, 10000);
    REQUIRE(res.status == CycleSearchStatus::Found);
    CHECK(res.cycle->period == 1);
    CHECK(std::abs(res.cycle->points[0]) < 1e-12);
    CHECK(std::abs(res.cycle->multiplier) < 1e-12);
    CHECK(res.cycle->residual < 1e-12);
}

TEST_CASE("detect: superattracting 2-cycle of z^2-1") {
    CycleSearchResult res = detect_attracting_cycle(MapSpec::poly(2, {-1.0, 0.0}), 8, 10000);
    REQUIRE(res.status == CycleSearchStatus::Found);
    CHECK(res.cycle->period == 2);
    std::vector<double> pts;
    for (const cplx& p : res.cycle->points) pts.push_back(p.real());
    std::sort(pts.begin(), pts.end());
    CHECK(std::abs(pts[0] - (-1.0)) < 1e-10);
    CHECK(std::abs(pts[1]) < 1e-10);
    CHECK(std::abs(res.cycle->multiplier) < 1e-10);
}

TEST_CASE("detect: attracting fixed point of z^2-0.6 matches the quadratic formula") {
    CycleSearchResult res = detect_attracting_cycle(MapSpec::poly(2, {-0.6, 0.0}), 8, 10000);
    REQUIRE(res.status == CycleSearchStatus::Found);
    CHECK(res.cycle->period == 1);
    const double z_star = (1.0 - std::sqrt(3.4)) / 2.0; // root of z^2 - z - 0.6
    CHECK(res.cycle->points[0].real() == doctest::Approx(z_star).epsilon(1e-12));
    CHECK(std::abs(res.cycle->points[0].imag()) < 1e-12);
    CHECK(std::abs(res.cycle->multiplier) == doctest::Approx(std::abs(2.0 * z_star)).epsilon(1e-12));
    CHECK(std::abs(res.cycle->multiplier) < 1.0);
}

TEST_CASE("detect: parabolic c=1/4 is reported ambiguous, never attracting") {
    CycleSearchResult res = detect_attracting_cycle(MapSpec::poly(2, {0.25, 0.0}), 8, 100000);
    CHECK(res.status == CycleSearchStatus::Ambiguous);
    REQUIRE(res.cycle.has_value());
    CHECK(std::abs(std::abs(res.cycle->multiplier) - 1.0) < 1e-6);
}

TEST_CASE("detect: Misiurewicz c=i has no sink (repelling cycle rejected)") {
    CycleSearchResult res = detect_attracting_cycle(MapSpec::poly(2, {0.0, 1.0}), 8, 20000);
    CHECK(res.status == CycleSearchStatus::None);
    CHECK(!res.escaped);
}

TEST_CASE("detect: escaping critical orbit yields none") {
    CycleSearchResult res = detect_attracting_cycle(MapSpec::poly(2, {0.3, 0.0}), 8, 10000);
    CHECK(res.status == CycleSearchStatus::None);
    CHECK(res.escaped);
}

TEST_CASE("refine: period-2 root near 0 for c=-1") {
    RefineResult res = refine_cycle(MapSpec::poly(2, {-1.0, 0.0}), {0.01, 0.0}, 2, 1e-12);
    REQUIRE(res.status == RefineStatus::Converged);
    CHECK(std::abs(res.cycle.points[0]) < 1e-10);
    CHECK(res.cycle.residual < 1e-12);
}

TEST_CASE("refine: fixed point for c=-0.6 from a rough guess") {
    RefineResult res = refine_cycle(MapSpec::poly(2, {-0.6, 0.0}), {-0.4, 0.0}, 1, 1e-12);
    REQUIRE(res.status == RefineStatus::Converged);
    CHECK(res.cycle.points[0].real() ==
          doctest::Approx((1.0 - std::sqrt(3.4)) / 2.0).epsilon(1e-12));
}

TEST_CASE("refine: exponential fixed point matches bisection oracle") {
    RefineResult res = refine_cycle(MapSpec::exponential({0.3, 0.0}), {0.5, 0.0}, 1, 1e-12);
    REQUIRE(res.status == RefineStatus::Converged);
    const double oracle = bisect_exp_fixed_point();
    CHECK(res.cycle.points[0].real() == doctest::Approx(oracle).epsilon(1e-9));
    // DE = E, so the multiplier is the fixed point itself
    CHECK(std::abs(res.cycle.multiplier - res.cycle.points[0]) < 1e-9);
}

TEST_CASE("refine: singular derivative reported") {
    // Df = 2z = 1 exactly at z = 0.5 for c = 0, so Df^1 - 1 = 0
    RefineResult res = refine_cycle(MapSpec::poly(2, {0.0, 0.0}), {0.5, 0.0}, 1, 1e-12);
    CHECK(res.status == RefineStatus::DerivativeSingular);
}

TEST_CASE("emitted cycles recertify: residual and multiplier recomputed") {
    for (double cr : {0.0, -1.0, -0.6, 0.2, -0.5}) {
        CycleSearchResult res = detect_attracting_cycle(MapSpec::poly(2, {cr, 0.0}), 8, 50000);
        if (res.status != CycleSearchStatus::Found) continue;
        const MapSpec map = MapSpec::poly(2, {cr, 0.0});
        const CycleRecord& rec = *res.cycle;
        cplx mult{1.0, 0.0};
        for (const cplx& p : rec.points) mult *= derivative_at(map, p);
        CHECK(std::abs(mult - rec.multiplier) < 1e-12);
        CHECK(std::abs(mult) < 1.0);
        for (const cplx& p : rec.points) {
            cplx w = p;
            for (int i = 0; i < rec.period; ++i) w = apply_map(map, w);
            CHECK(std::abs(w - p) <= rec.residual + 1e-15);
        }
    }
}

TEST_CASE("period minimality: divisor periods are reduced") {
    // c=-0.6 converges through near-period-2 windows but the true period is 1
    CycleSearchResult res = detect_attracting_cycle(MapSpec::poly(2, {-0.6, 0.0}), 8, 10000);
    REQUIRE(res.status == CycleSearchStatus::Found);
    CHECK(res.cycle->period == 1);
    // and c=-1 must stay at its true period 2, not a proper divisor
    CycleSearchResult two = detect_attracting_cycle(MapSpec::poly(2, {-1.0, 0.0}), 8, 10000);
    REQUIRE(two.status == CycleSearchStatus::Found);
    CHECK(two.cycle->period == 2);
}

TEST_CASE("in_basin: immediate basin membership and escape") {
    MapSpec map = MapSpec::poly(2, {0.0, 0.0});
    CycleSearchResult res = detect_attracting_cycle(map, 8, 1000);
    REQUIRE(res.status == CycleSearchStatus::Found);
    CHECK(in_basin(map, {0.5, 0.0}, *res.cycle, 1000).entered);
    CHECK(!in_basin(map, {3.0, 0.0}, *res.cycle, 1000).entered);
}

TEST_CASE("in_basin: point attracted to the 2-cycle of z^2-1") {
    MapSpec map = MapSpec::poly(2, {-1.0, 0.0});
    CycleSearchResult res = detect_attracting_cycle(map, 8, 1000);
    REQUIRE(res.status == CycleSearchStatus::Found);
    CHECK(in_basin(map, {-0.99, 0.0}, *res.cycle, 1000).entered);

    // direct-iteration oracle: the orbit really approaches {0, -1}
    cplx w{-0.99, 0.0};
    double best = 1e300;
    for (int k = 0; k < 100; ++k) {
        best = std::min({best, std::abs(w), std::abs(w + cplx{1.0, 0.0})});
        w = apply_map(map, w);
    }
    CHECK(best < 1e-6);
}

TEST_CASE("detect: exponential map with an attracting fixed point") {
    CycleSearchResult res = detect_attracting_cycle(MapSpec::exponential({0.3, 0.0}), 8, 10000);
    REQUIRE(res.status == CycleSearchStatus::Found);
    CHECK(res.cycle->period == 1);
    CHECK(std::abs(res.cycle->multiplier) < 1.0);
}
