#include "lyaplab/areascan.hpp"
#include "lyaplab/campaign.hpp"
#include "lyaplab/porosity.hpp"

#include <doctest.h>

using namespace lyaplab;

// The OpenMP kernels must reproduce the serial reference bit for bit: every
// task draws from its own seed stream and merges are order-independent.

TEST_CASE("return campaign: serial reference equals the parallel kernel") {
    ReturnCampaignParams params;
    params.map = MapSpec::poly(2, {-2.0, 0.0});
    params.target = cplx{-2.0, 0.0};
    params.delta = 1e-2;
    params.lambda = 1.05;
    params.n_events = 400;
    params.seed = 3;
    params.region = SampleRegion::segment(-2.0, 2.0);

    ReturnCampaignResult serial = run_return_campaign(params, false);
    ReturnCampaignResult parallel = run_return_campaign(params, true);
    CHECK(serial.events == parallel.events);
    CHECK(serial.passes == parallel.passes);
    CHECK(serial.failures == parallel.failures);
    CHECK(serial.no_event == parallel.no_event);
    CHECK(serial.min_slack == parallel.min_slack);
}

TEST_CASE("close-return campaign: serial reference equals the parallel kernel") {
    CloseReturnCampaignParams params;
    params.map = MapSpec::poly(2, {-2.0, 0.0});
    params.delta0 = 0.05;
    params.lambda = 1.05;
    params.n_samples = 300;
    params.orbit_length = 500;
    params.seed = 9;
    params.region = SampleRegion::segment(-2.0, 2.0);

    CloseReturnCampaignResult serial = run_close_return_campaign(params, false);
    CloseReturnCampaignResult parallel = run_close_return_campaign(params, true);
    CHECK(serial.checks == parallel.checks);
    CHECK(serial.passes == parallel.passes);
    CHECK(serial.failures == parallel.failures);
    CHECK(serial.min_slack == parallel.min_slack);
    CHECK(serial.failures == 0);
    CHECK(serial.checks > 0);
}

TEST_CASE("area scan: serial reference equals the parallel kernel") {
    MapSpec map = MapSpec::poly(2, {-2.0, 0.0});
    Disk window{{0.0, 0.0}, 2.5};
    AreaScan serial = area_scan_En(map, 0.1, {20, 30, 40}, window, 30000, 7, false);
    AreaScan parallel = area_scan_En(map, 0.1, {20, 30, 40}, window, 30000, 7, true);
    CHECK(serial.hits == parallel.hits);
    CHECK(serial.fractions == parallel.fractions);
    for (std::size_t i = 0; i < serial.return_stats.size(); ++i) {
        CHECK(serial.return_stats[i].min_return == parallel.return_stats[i].min_return);
        CHECK(serial.return_stats[i].events == parallel.return_stats[i].events);
    }
}

TEST_CASE("porosity: serial reference equals the parallel kernel") {
    MapSpec map = MapSpec::poly(2, {0.0, 0.0});
    PorosityProbe serial = porosity_probe(map, {1.0, 0.0}, {2, 3, 4}, 33, 100, false);
    PorosityProbe parallel = porosity_probe(map, {1.0, 0.0}, {2, 3, 4}, 33, 100, true);
    CHECK(serial.hole_radii == parallel.hole_radii);
}

TEST_CASE("backward seed sweep: serial equals parallel and stays above the floor") {
    MapSpec map = MapSpec::poly(2, {-2.0, 0.0});
    BackwardSeedSweep serial = backward_seed_sweep(map, 40, 1, 100, false);
    BackwardSeedSweep parallel = backward_seed_sweep(map, 40, 1, 100, true);
    CHECK(serial.chi == parallel.chi);
    CHECK(serial.min_chi == parallel.min_chi);
    CHECK(serial.min_chi >= -0.05);
}
