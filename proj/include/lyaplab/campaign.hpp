#pragma once

#include "lyaplab/backward.hpp"
#include "lyaplab/returnlab.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace lyaplab {

// Where campaign starting points are drawn from.
struct SampleRegion {
    enum class Kind { RealSegment, DiskRegion };
    Kind kind = Kind::RealSegment;
    double lo = -2.0, hi = 2.0; // segment
    cplx center{0.0, 0.0};      // disk
    double radius = 2.0;

    static SampleRegion segment(double lo, double hi) {
        SampleRegion r;
        r.kind = Kind::RealSegment;
        r.lo = lo;
        r.hi = hi;
        return r;
    }
    static SampleRegion disk(cplx center, double radius) {
        SampleRegion r;
        r.kind = Kind::DiskRegion;
        r.center = center;
        r.radius = radius;
        return r;
    }
};

// Full reproduction data for a failed inequality check; campaigns never drop
// failures silently.
struct FailureArtifact {
    std::string kind; // "return-bound" | "close-return"
    std::string map_label;
    cplx z{0.0, 0.0};
    double delta = 0.0;
    double lambda = 1.0;
    long n = 0;
    std::uint64_t stream = 0;
    BoundCheck bound;
};

struct ReturnCampaignParams {
    MapSpec map;
    cplx target{0.0, 0.0};
    double delta = 1e-2;
    double lambda = 1.05;
    long n_events = 10000;
    long n_max_search = 20000; // orbit budget per event
    std::uint64_t seed = 1;
    SampleRegion region;
    int attempts_per_event = 64;
};

struct ReturnCampaignResult {
    long events = 0;
    long passes = 0;
    long failures = 0;
    long no_event = 0; // streams whose samples produced no first entry
    double min_slack = 0.0;
    std::vector<FailureArtifact> artifacts;
};

// Harvest first-entry events into B(target, delta) from seeded samples and
// check the guaranteed derivative bound per event. Serial and parallel paths
// produce identical results (per-event streams).
ReturnCampaignResult run_return_campaign(const ReturnCampaignParams& params, bool parallel = true);

struct CloseReturnCampaignParams {
    MapSpec map;
    double delta0 = 0.05;
    double lambda = 1.05;
    long n_samples = 1000;
    long orbit_length = 1000;
    std::uint64_t seed = 1;
    SampleRegion region;
};

struct CloseReturnCampaignResult {
    long checks = 0;
    long passes = 0;
    long failures = 0;
    double min_slack = 0.0;
    std::vector<FailureArtifact> artifacts;
};

// Harvest closest-return times (|f^n(z)| <= |f^j(z)| for all j < n, and
// <= delta0) along sampled orbits and check each against the closest-return
// bound.
CloseReturnCampaignResult run_close_return_campaign(const CloseReturnCampaignParams& params,
                                                    bool parallel = true);

struct BackwardSeedSweep {
    std::vector<std::uint64_t> seeds;
    std::vector<double> chi; // chi_n at the final depth per seed
    double min_chi = 0.0;
};

// chi_n of RandomSeeded backward orbits across many seeds; statements about
// backward exponents quantify over every branch choice, so one orbit is
// never evidence.
BackwardSeedSweep backward_seed_sweep(const MapSpec& map, long depth, std::uint64_t seed_lo,
                                      std::uint64_t seed_hi, bool parallel = true);

// Persist each failure as outdir/counterexamples/NNNNNN.json with full
// reproduction data. Returns the number written.
long write_failure_artifacts(const std::vector<FailureArtifact>& artifacts,
                             const std::filesystem::path& outdir);

} // namespace lyaplab
