#include "lyaplab/hyperbolic.hpp"
#include "lyaplab/pliss.hpp"
#include "lyaplab/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace lyaplab;

namespace {

// direct O(r^2) check of the definition, independent of the prefix-sum scan
std::vector<long> pliss_brute(const PlissInput& in) {
    std::vector<long> out;
    const long r = static_cast<long>(in.a.size());
    for (long k = 1; k <= r; ++k) {
        bool ok = true;
        for (long n = 0; n < k && ok; ++n) {
            double sum = 0.0;
            for (long i = n + 1; i <= k; ++i) sum += in.a[static_cast<std::size_t>(i - 1)];
            if (!(sum >= in.b1 * static_cast<double>(k - n))) ok = false;
        }
        if (ok) out.push_back(k);
    }
    return out;
}

std::vector<long> hyp_brute(const std::vector<double>& S, double lambda) {
    std::vector<long> out;
    const double L = std::log(lambda);
    for (long m = 1; m < static_cast<long>(S.size()); ++m) {
        bool ok = true;
        for (long i = 0; i < m && ok; ++i)
            if (!(S[static_cast<std::size_t>(m)] - S[static_cast<std::size_t>(i)] >=
                  static_cast<double>(m - i) * L))
                ok = false;
        if (ok) out.push_back(m);
    }
    return out;
}

PlissInput random_pliss_input(SplitMix64& rng) {
    PlissInput in;
    in.B = rng.next_in(0.5, 2.0);
    in.b2 = in.B * rng.next_in(0.3, 1.0);
    in.b1 = in.b2 * rng.next_in(0.1, 0.9);
    long r = 1 + static_cast<long>(rng.next_below(32));
    bool force_hypothesis = rng.next_unit() < 0.5;
    for (long j = 0; j < r; ++j) {
        double lo = force_hypothesis ? in.b2 - 0.2 * (in.B - in.b2) : -1.0;
        in.a.push_back(rng.next_in(lo, in.B));
    }
    return in;
}

} // namespace

TEST_CASE("pliss: worked example {1,2,3}") {
    PlissInput in{{2.0, 0.5, 0.5}, 2.0, 0.5, 1.0};
    PlissResult res = pliss_times(in);
    CHECK(res.times == std::vector<long>{1, 2, 3});
    CHECK(res.hypothesis_ok); // sum = 3 >= b2 r = 3
    CHECK(res.theta == doctest::Approx(1.0 / 3.0));
    CHECK(static_cast<double>(res.times.size()) > res.theta * 3.0);
}

TEST_CASE("pliss: constant sequence at b2 gives every index") {
    PlissInput in{std::vector<double>(12, 0.5), 1.0, 0.25, 0.5};
    PlissResult res = pliss_times(in);
    CHECK(res.times.size() == 12);
    CHECK(res.hypothesis_ok);
}

TEST_CASE("pliss: leading shortfall excludes index 1") {
    PlissInput in{{0.0, 2.0}, 2.0, 0.5, 1.0};
    PlissResult res = pliss_times(in);
    CHECK(res.times == std::vector<long>{2});
}

TEST_CASE("pliss: hypothesis violation is reported, result still returned") {
    PlissInput in{{0.0, 0.0, 0.1}, 1.0, 0.25, 0.5};
    PlissResult res = pliss_times(in);
    CHECK(!res.hypothesis_ok);
}

TEST_CASE("pliss: scan equals brute force on seeded random inputs") {
    SplitMix64 rng(4242);
    for (int trial = 0; trial < 1000; ++trial) {
        PlissInput in = random_pliss_input(rng);
        PlissResult res = pliss_times(in);
        CHECK(res.times == pliss_brute(in));
        if (res.hypothesis_ok)
            CHECK(static_cast<double>(res.times.size()) >
                  res.theta * static_cast<double>(in.a.size()));
    }
}

TEST_CASE("hyperbolic times: constant expansion above and below the rate") {
    OrbitTrace trace = iterate(MapSpec::poly(2, {-2.0, 0.0}), {2.0, 0.0}, 100);
    HyperbolicTimeSet all = hyperbolic_times(trace, 3.0, 100);
    CHECK(all.times.size() == 100);
    CHECK(all.density == 1.0);
    HyperbolicTimeSet none = hyperbolic_times(trace, 5.0, 100);
    CHECK(none.times.empty());
}

TEST_CASE("hyperbolic times: scan equals the O(m^2) definition") {
    SplitMix64 rng(808);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> S{0.0};
        for (int k = 0; k < 512; ++k) S.push_back(S.back() + rng.next_in(-1.0, 1.5));
        for (double lambda : {1.05, 1.2, 2.0}) {
            HyperbolicTimeSet fast = hyperbolic_times_from_logsums(S, lambda);
            CHECK(fast.times == hyp_brute(S, lambda));
        }
    }
}

TEST_CASE("hyperbolic times on real orbits match the definition too") {
    SplitMix64 rng(909);
    for (int trial = 0; trial < 10; ++trial) {
        MapSpec map = MapSpec::poly(2, {rng.next_in(-2.0, -1.4), 0.0});
        OrbitTrace trace = iterate(map, {rng.next_in(-1.0, 1.0), 0.0}, 512);
        if (trace.horizon() < 512 || trace.cum_logderiv.back() == kMinusInf) continue;
        HyperbolicTimeSet fast = hyperbolic_times(trace, 1.1, 512);
        CHECK(fast.times == hyp_brute(trace.cum_logderiv, 1.1));
    }
}

TEST_CASE("hyperbolic times: vanished derivative in the window is an error state") {
    OrbitTrace trace = iterate(MapSpec::poly(2, {-1.0, 0.0}), {0.0, 0.0}, 20);
    HyperbolicTimeSet set = hyperbolic_times(trace, 1.5, 20);
    CHECK(set.status == HypTimesStatus::MinusInfinityInWindow);
    CHECK(set.times.empty());
}

TEST_CASE("hyperbolic times: c=i density meets the Pliss bound from the series average") {
    OrbitTrace trace = iterate(MapSpec::poly(2, {0.0, 1.0}), {0.0, 1.0}, 1000);
    const double lambda = 2.0;
    HyperbolicTimeSet set = hyperbolic_times(trace, lambda, 1000);

    // theta computed from the cocycle increments
    double b1 = std::log(lambda);
    double b2 = trace.cum_logderiv[1000] / 1000.0;
    double B = b2;
    for (int k = 0; k < 1000; ++k)
        B = std::max(B, trace.cum_logderiv[k + 1] - trace.cum_logderiv[k]);
    REQUIRE(b2 > b1); // hypothesis holds for this orbit
    double theta = (b2 - b1) / (B - b1);
    CHECK(set.density >= theta);
}
