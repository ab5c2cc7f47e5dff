#pragma once

#include "lyaplab/disk.hpp"
#include "lyaplab/map.hpp"

#include <cstdint>
#include <vector>

namespace lyaplab {

// Per-n return-time statistic harvested alongside the scan: the smallest
// observed gap s between two visits of one orbit to B(0, eps_n),
// eps_n = e^{-alpha n}, held against the K log(1/eps) lower-bound shape.
struct ReturnStat {
    long n_ref = 0;
    double eps = 0.0;
    long min_return = -1; // -1: no double visit observed
    long events = 0;      // number of observed gaps
    double k_emp = 0.0;   // min_return / log(1/eps), 0 when no data
};

// Monte-Carlo fractions of window points with |f^n(z)| < e^{-2 alpha n},
// one fraction per requested n. Deterministic for a fixed seed: sample i
// draws from its own stream regardless of thread count.
struct AreaScan {
    double alpha = 0.0;
    std::vector<long> n_values;
    std::vector<long> hits;
    std::vector<double> fractions;
    long samples = 0;
    std::uint64_t seed = 0;
    Disk window;
    std::vector<ReturnStat> return_stats;
};

// The serial reference and the OpenMP kernel produce identical results; the
// parallel flag only selects the execution path.
AreaScan area_scan_En(const MapSpec& map, double alpha, std::vector<long> n_list,
                      const Disk& window, long samples, std::uint64_t seed, bool parallel = true);

// Smallest admissible n for a window: e^{-2 alpha n} must not exceed the
// window diameter, or the fraction is dominated by the window itself.
long area_scan_n_min(double alpha, const Disk& window);

} // namespace lyaplab
