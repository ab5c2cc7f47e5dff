#include "lyaplab/areascan.hpp"
#include "lyaplab/porosity.hpp"
#include "lyaplab/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace lyaplab;

TEST_CASE("area scan: identical seeds give identical measures") {
    MapSpec map = MapSpec::poly(2, {-2.0, 0.0});
    Disk window{{0.0, 0.0}, 2.5};
    AreaScan a = area_scan_En(map, 0.1, {20, 30}, window, 20000, 7, true);
    AreaScan b = area_scan_En(map, 0.1, {20, 30}, window, 20000, 7, true);
    CHECK(a.hits == b.hits);
    CHECK(a.fractions == b.fractions);
    AreaScan c = area_scan_En(map, 0.1, {20, 30}, window, 20000, 8, true);
    CHECK(a.seed != c.seed);
}

TEST_CASE("area scan: z^2 fractions match the exact disk geometry") {
    // E_n hits for c=0 are exactly |z| < exp(-2 alpha n / 2^n), essentially
    // the unit disk, whose area fraction of B(0, 2.5) is 1/6.25
    MapSpec map = MapSpec::poly(2, {0.0, 0.0});
    Disk window{{0.0, 0.0}, 2.5};
    AreaScan scan = area_scan_En(map, 0.1, {30}, window, 200000, 3, true);
    const double expect = 1.0 / 6.25;
    CHECK(std::abs(scan.fractions[0] - expect) < 0.01);
}

TEST_CASE("area scan: c=-2 fractions vanish and never increase") {
    MapSpec map = MapSpec::poly(2, {-2.0, 0.0});
    Disk window{{0.0, 0.0}, 2.5};
    AreaScan scan = area_scan_En(map, 0.1, {20, 30, 40, 50}, window, 100000, 7, true);
    for (std::size_t i = 1; i < scan.fractions.size(); ++i)
        CHECK(scan.fractions[i] <= scan.fractions[i - 1]);
    CHECK(scan.fractions.back() < 1e-3);
}

TEST_CASE("area scan: return gaps only shrink the recorded minimum") {
    MapSpec map = MapSpec::poly(2, {-2.0, 0.0});
    Disk window{{0.0, 0.0}, 2.5};
    AreaScan scan = area_scan_En(map, 0.1, {20}, window, 100000, 7, true);
    const ReturnStat& rs = scan.return_stats[0];
    CHECK(rs.eps == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
    if (rs.events > 0) {
        CHECK(rs.min_return >= 1);
        CHECK(rs.k_emp > 0.0);
    }
}

TEST_CASE("area scan: n below the window floor is rejected") {
    MapSpec map = MapSpec::poly(2, {-2.0, 0.0});
    Disk tiny{{0.0, 0.0}, 0.01}; // diam 0.02, n_min = ln(50)/0.2
    CHECK(area_scan_n_min(0.1, tiny) > 1);
    CHECK_THROWS_AS(area_scan_En(map, 0.1, {1}, tiny, 100, 1, false), std::invalid_argument);
}

TEST_CASE("porosity: circle Julia set leaves a half-size hole") {
    // J(z^2) is the unit circle; inside B(1, 1/8) the largest escaping ball
    // hugs the outside of the circle with radius about half the scale
    PorosityProbe probe =
        porosity_probe(MapSpec::poly(2, {0.0, 0.0}), {1.0, 0.0}, {3}, 65, 100, true);
    CHECK(probe.hole_radii[0] == doctest::Approx(0.5).epsilon(0.15));
}

TEST_CASE("porosity: segment Julia set likewise") {
    PorosityProbe probe =
        porosity_probe(MapSpec::poly(2, {-2.0, 0.0}), {0.5, 0.0}, {4}, 65, 200, true);
    CHECK(probe.hole_radii[0] == doctest::Approx(0.5).epsilon(0.15));
}

TEST_CASE("porosity: grid=1 degenerates to 0 or 1 and is flagged") {
    PorosityProbe inside =
        porosity_probe(MapSpec::poly(2, {0.0, 0.0}), {1.0, 0.0}, {3}, 1, 100, false);
    CHECK(inside.low_resolution);
    CHECK((inside.hole_radii[0] == 0.0 || inside.hole_radii[0] == 1.0));
    // |z|=1 never escapes under z^2, so the single sample is a hit: rho = 0
    CHECK(inside.hole_radii[0] == 0.0);

    PorosityProbe outside =
        porosity_probe(MapSpec::poly(2, {0.0, 0.0}), {3.0, 0.0}, {3}, 1, 100, false);
    CHECK(outside.hole_radii[0] == 1.0);
}

TEST_CASE("porosity: refining the sample set never grows a certified hole") {
    MapSpec map = MapSpec::poly(2, {-2.0, 0.0});
    const cplx z{0.5, 0.0};
    const double R = std::pow(2.0, -3.0);
    const long budget = 200;

    auto collect = [&](long g, std::vector<cplx>& pts, std::vector<cplx>& hits) {
        for (long iy = 0; iy < g; ++iy)
            for (long ix = 0; ix < g; ++ix) {
                double x = -R + 2.0 * R * static_cast<double>(ix) / (g - 1);
                double y = -R + 2.0 * R * static_cast<double>(iy) / (g - 1);
                if (x * x + y * y > R * R) continue;
                cplx p = z + cplx{x, y};
                pts.push_back(p);
                if (!escapes_within(map, p, budget)) hits.push_back(p);
            }
    };

    std::vector<cplx> coarse_pts, coarse_hits, fine_pts, fine_hits;
    collect(33, coarse_pts, coarse_hits);
    collect(65, fine_pts, fine_hits); // nested refinement of the 33-grid

    double with_coarse = largest_hole_radius(coarse_hits, coarse_pts, z, R);
    double with_fine = largest_hole_radius(fine_hits, coarse_pts, z, R);
    CHECK(with_fine <= with_coarse + 1e-15);
}
