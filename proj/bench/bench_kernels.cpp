// Wall-time comparison of the serial reference paths against the OpenMP
// kernels. Outputs are checked for equality while timing, so a speedup
// never comes at the cost of a changed result.

#include "lyaplab/areascan.hpp"
#include "lyaplab/campaign.hpp"
#include "lyaplab/porosity.hpp"

#include <chrono>
#include <cstdio>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace lyaplab;

namespace {

double time_ms(const std::function<void()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

void row(const char* name, double serial_ms, double parallel_ms, bool equal) {
    std::printf("%-24s %10.1f ms %10.1f ms %8.2fx   %s\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, equal ? "outputs equal" : "OUTPUTS DIFFER");
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (OpenMP disabled)\n");
#endif
    std::printf("%-24s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    {
        MapSpec map = MapSpec::poly(2, {-2.0, 0.0});
        Disk window{{0.0, 0.0}, 2.5};
        AreaScan s, p;
        double ts = time_ms([&] { s = area_scan_En(map, 0.1, {20, 30, 40, 50}, window, 1000000, 7, false); });
        double tp = time_ms([&] { p = area_scan_En(map, 0.1, {20, 30, 40, 50}, window, 1000000, 7, true); });
        row("area-scan 1e6", ts, tp, s.hits == p.hits && s.fractions == p.fractions);
    }
    {
        ReturnCampaignParams params;
        params.map = MapSpec::poly(2, {-2.0, 0.0});
        params.target = cplx{0.0, 0.0};
        params.delta = 1e-2;
        params.lambda = 1.05;
        params.n_events = 10000;
        params.seed = 1;
        params.region = SampleRegion::segment(-2.0, 2.0);
        ReturnCampaignResult s, p;
        double ts = time_ms([&] { s = run_return_campaign(params, false); });
        double tp = time_ms([&] { p = run_return_campaign(params, true); });
        row("return campaign 1e4", ts, tp,
            s.passes == p.passes && s.failures == p.failures && s.min_slack == p.min_slack);
    }
    {
        CloseReturnCampaignParams params;
        params.map = MapSpec::poly(2, {-2.0, 0.0});
        params.delta0 = 0.05;
        params.lambda = 1.05;
        params.n_samples = 4000;
        params.orbit_length = 1000;
        params.seed = 9;
        params.region = SampleRegion::segment(-2.0, 2.0);
        CloseReturnCampaignResult s, p;
        double ts = time_ms([&] { s = run_close_return_campaign(params, false); });
        double tp = time_ms([&] { p = run_close_return_campaign(params, true); });
        row("close-return 4e3", ts, tp, s.checks == p.checks && s.min_slack == p.min_slack);
    }
    {
        MapSpec map = MapSpec::poly(2, {-2.0, 0.0});
        PorosityProbe s, p;
        double ts = time_ms([&] { s = porosity_probe(map, {0.5, 0.0}, {2, 3, 4, 5}, 129, 300, false); });
        double tp = time_ms([&] { p = porosity_probe(map, {0.5, 0.0}, {2, 3, 4, 5}, 129, 300, true); });
        row("porosity grid 129", ts, tp, s.hole_radii == p.hole_radii);
    }
    {
        MapSpec map = MapSpec::poly(2, {-2.0, 0.0});
        BackwardSeedSweep s, p;
        double ts = time_ms([&] { s = backward_seed_sweep(map, 5000, 1, 400, false); });
        double tp = time_ms([&] { p = backward_seed_sweep(map, 5000, 1, 400, true); });
        row("backward seeds 400", ts, tp, s.chi == p.chi);
    }
    return 0;
}
