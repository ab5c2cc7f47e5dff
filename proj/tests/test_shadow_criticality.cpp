#include "lyaplab/criticality.hpp"
#include "lyaplab/rng.hpp"
#include "lyaplab/shadow.hpp"

#include <doctest.h>

#include <cmath>

using namespace lyaplab;

namespace {

// direct coverage counting, one pass per (n, j) pair
std::vector<long> cover_brute(const std::vector<double>& phi, double K) {
    const long m = static_cast<long>(phi.size()) - 1;
    std::vector<long> cover(static_cast<std::size_t>(m), 0);
    for (long n = 1; n <= m; ++n)
        for (long j = 0; j <= m; ++j) {
            double p = phi[static_cast<std::size_t>(j)];
            if (p > 0.0 && static_cast<double>(n) > static_cast<double>(j) &&
                static_cast<double>(n) <= static_cast<double>(j) + K * p)
                ++cover[static_cast<std::size_t>(n - 1)];
        }
    return cover;
}

std::vector<double> random_phi(SplitMix64& rng, long m) {
    std::vector<double> phi;
    for (long j = 0; j <= m; ++j) {
        double u = rng.next_unit();
        if (u < 0.05)
            phi.push_back(rng.next_in(5.0, 30.0)); // rare deep approach
        else
            phi.push_back(rng.next_in(-2.0, 4.0));
    }
    return phi;
}

} // namespace

TEST_CASE("shadows: orbit far from the critical point has none") {
    OrbitTrace trace = iterate(MapSpec::poly(2, {-2.0, 0.0}), {2.0, 0.0}, 100);
    ShadowTable t = shadow_table(trace, 1.0, 0);
    for (long c : t.cover_count) CHECK(c == 0);
    CHECK(t.density_A == 1.0);
    CHECK(t.c_g_fit == 0.0);
    CHECK(t.coverage_bound_ok);
}

TEST_CASE("shadows: a single phi(5)=2 with K=1 covers exactly {6,7}") {
    std::vector<double> phi(11, -1.0);
    phi[5] = 2.0;
    ShadowTable t = build_shadow_table(phi, 1.0, 0);
    for (long n = 1; n <= 10; ++n) {
        long expect = (n == 6 || n == 7) ? 1 : 0;
        CHECK(t.cover_count[static_cast<std::size_t>(n - 1)] == expect);
    }
}

TEST_CASE("shadows: stabbing equals brute-force coverage counting") {
    SplitMix64 rng(515);
    for (int trial = 0; trial < 40; ++trial) {
        long m = 50 + static_cast<long>(rng.next_below(950));
        std::vector<double> phi = random_phi(rng, m);
        double K = rng.next_in(0.1, 3.0);
        ShadowTable t = build_shadow_table(phi, K, 3);
        CHECK(t.cover_count == cover_brute(phi, K));
    }
}

TEST_CASE("shadows: A(N,K) membership is monotone in N and antitone in K") {
    SplitMix64 rng(616);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> phi = random_phi(rng, 300);
        ShadowTable t1 = build_shadow_table(phi, 0.7, 2);
        ShadowTable t2 = build_shadow_table(phi, 1.9, 2);
        std::vector<char> a_n = a_membership(t1, 2);
        std::vector<char> a_n1 = a_membership(t1, 3);
        for (std::size_t i = 0; i < a_n.size(); ++i) {
            if (a_n[i]) CHECK(a_n1[i]); // A(N) subset of A(N+1)
            if (t2.in_A[i]) CHECK(t1.in_A[i]); // bigger K only shrinks A
        }
    }
}

TEST_CASE("shadows: coverage density bound holds with the fitted constant") {
    SplitMix64 rng(717);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> phi = random_phi(rng, 500);
        double K = rng.next_in(0.2, 2.0);
        int N = 1 + static_cast<int>(rng.next_below(5));
        ShadowTable t = build_shadow_table(phi, K, N);
        CHECK(t.coverage_bound_ok);
    }
    // and on a real orbit
    OrbitTrace trace = iterate(MapSpec::poly(2, {0.0, 1.0}), {0.0, 1.0}, 1000);
    ShadowTable t = shadow_table(trace, 1.0, 3);
    CHECK(t.density_A >= 1.0 - t.c_g_fit / 3.0 - 1e-12);
    CHECK(t.coverage_bound_ok);
}

TEST_CASE("shadows: exact critical hit truncates with a report") {
    OrbitTrace trace = iterate(MapSpec::poly(2, {-1.0, 0.0}), {1.0, 0.0}, 20); // 1 -> 0 -> -1 ...
    ShadowTable t = shadow_table(trace, 1.0, 1);
    REQUIRE(t.hit_critical.has_value());
    CHECK(*t.hit_critical == 1);
}

// --- criticality counts -----------------------------------------------------

TEST_CASE("criticality: certified pullback along the Chebyshev fixed orbit") {
    MapSpec map = MapSpec::poly(2, {-2.0, 0.0});
    OrbitTrace trace = iterate(map, {2.0, 0.0}, 30);
    CriticalityReport rep =
        criticality_count(map, trace, 20, 0.1, CriticalityMode::CertifiedPullback);
    CHECK(rep.certified);
    CHECK(rep.count == 0);
    REQUIRE(rep.pullback_radii.size() == 21);
    // radii shrink geometrically away from the target
    CHECK(rep.pullback_radii[0] < rep.pullback_radii[20]);
    CHECK(rep.pullback_radii[0] < 1e-10);
}

TEST_CASE("criticality: the empty composition has count 0") {
    MapSpec map = MapSpec::poly(2, {0.0, 1.0});
    OrbitTrace trace = iterate(map, {0.0, 1.0}, 10);
    CriticalityReport rep = criticality_count(map, trace, 0, 0.1, CriticalityMode::ShadowProxy);
    CHECK(rep.count == 0);
}

TEST_CASE("criticality: proxy dominates certified on the c=i orbit") {
    MapSpec map = MapSpec::poly(2, {0.0, 1.0});
    OrbitTrace trace = iterate(map, {0.0, 1.0}, 60);
    CriticalityReport proxy = criticality_count(map, trace, 50, 0.05, CriticalityMode::ShadowProxy);
    CriticalityReport cert =
        criticality_count(map, trace, 50, 0.05, CriticalityMode::CertifiedPullback);
    REQUIRE(cert.certified);
    CHECK(proxy.count >= cert.count);
}

TEST_CASE("criticality: certification loss falls back to the proxy") {
    // inside the superattracting basin of z^2 the pullback disks grow toward
    // the unit circle; a tight cap forces the fallback
    MapSpec map = MapSpec::poly(2, {0.0, 0.0});
    OrbitTrace trace = iterate(map, {0.5, 0.0}, 12);
    CriticalityParams params;
    params.radius_cap = 0.5;
    CriticalityReport rep =
        criticality_count(map, trace, 12, 0.2, CriticalityMode::CertifiedPullback, params);
    CHECK(!rep.certified);
}

TEST_CASE("criticality: degenerate steps are counted as upper bounds") {
    // same run without the cap: every step is degenerate (targets contain 0),
    // so the certified count is n, a valid upper bound
    MapSpec map = MapSpec::poly(2, {0.0, 0.0});
    OrbitTrace trace = iterate(map, {0.5, 0.0}, 12);
    CriticalityParams params;
    params.radius_cap = 10.0;
    CriticalityReport rep =
        criticality_count(map, trace, 12, 0.2, CriticalityMode::CertifiedPullback, params);
    CHECK(rep.certified);
    CHECK(rep.count == 12);
}

TEST_CASE("telescope fit: certified radii obey the fitted geometric envelope") {
    MapSpec map = MapSpec::poly(2, {-2.0, 0.0});
    OrbitTrace trace = iterate(map, {2.0, 0.0}, 64);
    const double lambda = 2.0, r = 0.1;
    double C = fit_telescope_constant(map, trace, 40, r, lambda);
    REQUIRE(C > 0.0);
    CHECK(C < 1e3);
    // the constant fitted at s=40 transfers to other hyperbolic times
    for (long s : {10L, 20L, 30L}) {
        CriticalityParams params;
        params.radius_cap = 10.0 * escape_radius(map);
        CriticalityReport rep =
            criticality_count(map, trace, s, r, CriticalityMode::CertifiedPullback, params);
        REQUIRE(rep.certified);
        for (long i = 0; i <= s; ++i) {
            double bound = C * r * std::pow(lambda, -static_cast<double>(s - i));
            CHECK(rep.pullback_radii[static_cast<std::size_t>(i)] <= bound * (1.0 + 1e-9));
        }
    }
}

// --- density report ---------------------------------------------------------

TEST_CASE("density report: constant expansion gives density 1") {
    DensityReport rep =
        hyperbolic_density_report(MapSpec::poly(2, {-2.0, 0.0}), {2.0, 0.0}, 1.5, 0.1, 1000);
    REQUIRE(rep.hypothesis_ok);
    CHECK(rep.chi_m == doctest::Approx(std::log(4.0)).epsilon(1e-12));
    CHECK(rep.H_density == 1.0);
    CHECK(rep.violations.empty());
}

TEST_CASE("density report: contracting orbit fails the hypothesis") {
    DensityReport rep =
        hyperbolic_density_report(MapSpec::poly(2, {0.0, 0.0}), {0.5, 0.0}, 1.5, 0.1, 1000);
    CHECK(!rep.hypothesis_ok);
}

TEST_CASE("density report: c=i holds at least half the Pliss density") {
    DensityReport rep =
        hyperbolic_density_report(MapSpec::poly(2, {0.0, 1.0}), {0.0, 1.0}, 1.2, 0.1, 10000);
    REQUIRE(rep.hypothesis_ok);
    CHECK(rep.H_density >= rep.theta / 2.0);
    CHECK(rep.violations.empty());
}
