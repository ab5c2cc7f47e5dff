#include "lyaplab/areascan.hpp"

#include "lyaplab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lyaplab {

namespace {

cplx sample_in_disk(SplitMix64& rng, const Disk& window) {
    for (;;) {
        double x = rng.next_in(-window.radius, window.radius);
        double y = rng.next_in(-window.radius, window.radius);
        if (x * x + y * y <= window.radius * window.radius)
            return window.center + cplx{x, y};
    }
}

struct SampleOutcome {
    std::vector<char> hit;        // per n_list entry
    std::vector<long> min_gap;    // per n_list entry, -1 = none
    std::vector<long> gap_events; // per n_list entry
};

SampleOutcome run_sample(const MapSpec& map, double alpha, const std::vector<long>& n_list,
                         const std::vector<double>& eps_entry, const Disk& window,
                         std::uint64_t stream) {
    SampleOutcome out;
    out.hit.assign(n_list.size(), 0);
    out.min_gap.assign(n_list.size(), -1);
    out.gap_events.assign(n_list.size(), 0);

    SplitMix64 rng(stream);
    cplx z = sample_in_disk(rng, window);
    const long n_max = *std::max_element(n_list.begin(), n_list.end());
    std::vector<long> last_entry(n_list.size(), -1);

    for (long n = 1; n <= n_max; ++n) {
        if (point_escaped(map, z)) return out;
        z = apply_map(map, z);
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return out;
        double az = std::abs(z);

        for (std::size_t i = 0; i < n_list.size(); ++i) {
            if (n == n_list[i] && az < std::exp(-2.0 * alpha * static_cast<double>(n)))
                out.hit[i] = 1;
            if (az < eps_entry[i]) {
                if (last_entry[i] >= 0) {
                    long gap = n - last_entry[i];
                    if (out.min_gap[i] < 0 || gap < out.min_gap[i]) out.min_gap[i] = gap;
                    ++out.gap_events[i];
                }
                last_entry[i] = n;
            }
        }
    }
    return out;
}

} // namespace

long area_scan_n_min(double alpha, const Disk& window) {
    double diam = 2.0 * window.radius;
    if (diam >= 1.0) return 1;
    return std::max<long>(1, static_cast<long>(
                                 std::ceil(std::log(1.0 / diam) / (2.0 * alpha))));
}

AreaScan area_scan_En(const MapSpec& map, double alpha, std::vector<long> n_list,
                      const Disk& window, long samples, std::uint64_t seed, bool parallel) {
    if (!(alpha > 0.0)) throw std::invalid_argument("area_scan: alpha must be > 0");
    if (n_list.empty()) throw std::invalid_argument("area_scan: empty n list");
    if (samples < 1) throw std::invalid_argument("area_scan: samples must be >= 1");
    if (!(window.radius > 0.0)) throw std::invalid_argument("area_scan: window radius must be > 0");
    const long n_min = area_scan_n_min(alpha, window);
    for (long n : n_list)
        if (n < n_min)
            throw std::invalid_argument("area_scan: n below n_min for this window");

    AreaScan scan;
    scan.alpha = alpha;
    scan.n_values = n_list;
    scan.samples = samples;
    scan.seed = seed;
    scan.window = window;

    std::vector<double> eps_entry(n_list.size());
    for (std::size_t i = 0; i < n_list.size(); ++i)
        eps_entry[i] = std::exp(-alpha * static_cast<double>(n_list[i]));

    const std::size_t k = n_list.size();
    std::vector<long> hits(k, 0);
    std::vector<long> min_gap(k, -1);
    std::vector<long> events(k, 0);

    auto merge = [&](const SampleOutcome& out) {
        for (std::size_t i = 0; i < k; ++i) {
            hits[i] += out.hit[i];
            events[i] += out.gap_events[i];
            if (out.min_gap[i] >= 0 && (min_gap[i] < 0 || out.min_gap[i] < min_gap[i]))
                min_gap[i] = out.min_gap[i];
        }
    };

    if (parallel) {
#pragma omp parallel
        {
            std::vector<long> l_hits(k, 0), l_min(k, -1), l_events(k, 0);
#pragma omp for schedule(static) nowait
            for (long s = 0; s < samples; ++s) {
                SampleOutcome out = run_sample(map, alpha, n_list, eps_entry, window,
                                               stream_seed(seed, static_cast<std::uint64_t>(s)));
                for (std::size_t i = 0; i < k; ++i) {
                    l_hits[i] += out.hit[i];
                    l_events[i] += out.gap_events[i];
                    if (out.min_gap[i] >= 0 && (l_min[i] < 0 || out.min_gap[i] < l_min[i]))
                        l_min[i] = out.min_gap[i];
                }
            }
#pragma omp critical
            {
                for (std::size_t i = 0; i < k; ++i) {
                    hits[i] += l_hits[i];
                    events[i] += l_events[i];
                    if (l_min[i] >= 0 && (min_gap[i] < 0 || l_min[i] < min_gap[i]))
                        min_gap[i] = l_min[i];
                }
            }
        }
    } else {
        for (long s = 0; s < samples; ++s)
            merge(run_sample(map, alpha, n_list, eps_entry, window,
                             stream_seed(seed, static_cast<std::uint64_t>(s))));
    }

    scan.hits = hits;
    scan.fractions.resize(k);
    for (std::size_t i = 0; i < k; ++i)
        scan.fractions[i] = static_cast<double>(hits[i]) / static_cast<double>(samples);
    scan.return_stats.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        ReturnStat& rs = scan.return_stats[i];
        rs.n_ref = n_list[i];
        rs.eps = eps_entry[i];
        rs.min_return = min_gap[i];
        rs.events = events[i];
        rs.k_emp = (min_gap[i] > 0) ? static_cast<double>(min_gap[i]) / std::log(1.0 / rs.eps)
                                    : 0.0;
    }
    return scan;
}

} // namespace lyaplab
