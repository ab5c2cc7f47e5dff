#include "lyaplab/campaign.hpp"

#include "lyaplab/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace lyaplab {

namespace {

cplx draw_point(SplitMix64& rng, const SampleRegion& region) {
    if (region.kind == SampleRegion::Kind::RealSegment)
        return cplx{rng.next_in(region.lo, region.hi), 0.0};
    for (;;) {
        double x = rng.next_in(-region.radius, region.radius);
        double y = rng.next_in(-region.radius, region.radius);
        if (x * x + y * y <= region.radius * region.radius)
            return region.center + cplx{x, y};
    }
}

struct EventOutcome {
    bool have_event = false;
    bool passed = true;
    double slack = std::numeric_limits<double>::infinity();
    FailureArtifact artifact;
};

EventOutcome run_one_return_event(const ReturnCampaignParams& p, std::uint64_t stream) {
    EventOutcome out;
    SplitMix64 rng(stream_seed(p.seed, stream));
    const bool needs_outside = p.map.is_poly() && p.target == cplx{0.0, 0.0};
    for (int attempt = 0; attempt < p.attempts_per_event; ++attempt) {
        cplx z = draw_point(rng, p.region);
        if (needs_outside && std::abs(z) <= p.delta) continue;
        auto ev = first_entry(p.map, z, p.delta, p.target, p.n_max_search);
        if (!ev) continue;
        BoundCheck chk = check_return_bound(*ev, p.map, p.lambda);
        out.have_event = true;
        out.passed = chk.passed;
        out.slack = chk.slack;
        if (!chk.passed) {
            out.artifact = FailureArtifact{"return-bound", p.map.label(), z,      p.delta,
                                           p.lambda,       ev->n,         stream, chk};
        }
        return out;
    }
    return out;
}

} // namespace

ReturnCampaignResult run_return_campaign(const ReturnCampaignParams& params, bool parallel) {
    ReturnCampaignResult res;
    const long n = params.n_events;
    std::vector<char> have(static_cast<std::size_t>(n), 0);
    std::vector<char> pass(static_cast<std::size_t>(n), 1);
    std::vector<double> slack(static_cast<std::size_t>(n),
                              std::numeric_limits<double>::infinity());
    std::vector<FailureArtifact> artifacts(static_cast<std::size_t>(n));

    auto body = [&](long i) {
        EventOutcome out = run_one_return_event(params, static_cast<std::uint64_t>(i));
        have[static_cast<std::size_t>(i)] = out.have_event ? 1 : 0;
        pass[static_cast<std::size_t>(i)] = out.passed ? 1 : 0;
        slack[static_cast<std::size_t>(i)] = out.slack;
        if (out.have_event && !out.passed) artifacts[static_cast<std::size_t>(i)] = out.artifact;
    };

    if (parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (long i = 0; i < n; ++i) body(i);
    } else {
        for (long i = 0; i < n; ++i) body(i);
    }

    res.min_slack = std::numeric_limits<double>::infinity();
    for (long i = 0; i < n; ++i) {
        if (!have[static_cast<std::size_t>(i)]) {
            ++res.no_event;
            continue;
        }
        ++res.events;
        if (pass[static_cast<std::size_t>(i)]) {
            ++res.passes;
        } else {
            ++res.failures;
            res.artifacts.push_back(artifacts[static_cast<std::size_t>(i)]);
        }
        res.min_slack = std::min(res.min_slack, slack[static_cast<std::size_t>(i)]);
    }
    return res;
}

CloseReturnCampaignResult run_close_return_campaign(const CloseReturnCampaignParams& params,
                                                    bool parallel) {
    const long n = params.n_samples;
    struct PerSample {
        long checks = 0, passes = 0;
        double min_slack = std::numeric_limits<double>::infinity();
        std::vector<FailureArtifact> artifacts;
    };
    std::vector<PerSample> per(static_cast<std::size_t>(n));

    auto body = [&](long i) {
        PerSample& out = per[static_cast<std::size_t>(i)];
        SplitMix64 rng(stream_seed(params.seed, static_cast<std::uint64_t>(i)));
        cplx z = draw_point(rng, params.region);
        if (z == cplx{0.0, 0.0}) return; // excluded start

        OrbitTrace trace = iterate(params.map, z, params.orbit_length);
        double running_min = std::abs(z);
        for (long m = 1; m <= static_cast<long>(trace.horizon()); ++m) {
            double dist = std::abs(trace.points[static_cast<std::size_t>(m)]);
            if (dist <= running_min && dist <= params.delta0) {
                CloseReturnCheck chk =
                    check_close_return_bound(params.map, z, m, params.lambda, params.delta0);
                if (chk.status == CloseReturnStatus::Checked) {
                    ++out.checks;
                    out.min_slack = std::min(out.min_slack, chk.bound.slack);
                    if (chk.bound.passed) {
                        ++out.passes;
                    } else {
                        out.artifacts.push_back(FailureArtifact{
                            "close-return", params.map.label(), z, params.delta0, params.lambda,
                            m, static_cast<std::uint64_t>(i), chk.bound});
                    }
                }
            }
            running_min = std::min(running_min, dist);
        }
    };

    if (parallel) {
#pragma omp parallel for schedule(dynamic, 8)
        for (long i = 0; i < n; ++i) body(i);
    } else {
        for (long i = 0; i < n; ++i) body(i);
    }

    CloseReturnCampaignResult res;
    res.min_slack = std::numeric_limits<double>::infinity();
    for (const PerSample& s : per) {
        res.checks += s.checks;
        res.passes += s.passes;
        res.failures += s.checks - s.passes;
        res.min_slack = std::min(res.min_slack, s.min_slack);
        for (const FailureArtifact& a : s.artifacts) res.artifacts.push_back(a);
    }
    return res;
}

BackwardSeedSweep backward_seed_sweep(const MapSpec& map, long depth, std::uint64_t seed_lo,
                                      std::uint64_t seed_hi, bool parallel) {
    BackwardSeedSweep sweep;
    for (std::uint64_t s = seed_lo; s <= seed_hi; ++s) sweep.seeds.push_back(s);
    sweep.chi.assign(sweep.seeds.size(), 0.0);

    const long count = static_cast<long>(sweep.seeds.size());
    auto body = [&](long i) {
        BackwardOrbit orbit = backward_orbit(
            map, BranchPolicy::random_seeded(sweep.seeds[static_cast<std::size_t>(i)]), depth);
        sweep.chi[static_cast<std::size_t>(i)] =
            orbit.status == BackwardStatus::Completed
                ? orbit.chi(static_cast<std::size_t>(depth))
                : std::numeric_limits<double>::quiet_NaN();
    };

    if (parallel) {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < count; ++i) body(i);
    } else {
        for (long i = 0; i < count; ++i) body(i);
    }

    sweep.min_chi = std::numeric_limits<double>::infinity();
    for (double x : sweep.chi)
        if (!std::isnan(x)) sweep.min_chi = std::min(sweep.min_chi, x);
    return sweep;
}

long write_failure_artifacts(const std::vector<FailureArtifact>& artifacts,
                             const std::filesystem::path& outdir) {
    if (artifacts.empty()) return 0;
    std::filesystem::create_directories(outdir / "counterexamples");
    long idx = 0;
    for (const FailureArtifact& a : artifacts) {
        nlohmann::json j{{"kind", a.kind},
                         {"map", a.map_label},
                         {"z", {{"re", a.z.real()}, {"im", a.z.imag()}}},
                         {"delta", a.delta},
                         {"lambda", a.lambda},
                         {"n", a.n},
                         {"stream", a.stream},
                         {"log_lhs", a.bound.log_lhs},
                         {"log_rhs", a.bound.log_rhs},
                         {"slack", a.bound.slack}};
        char name[64];
        std::snprintf(name, sizeof(name), "counterexamples/%06ld.json", idx++);
        std::ofstream out(outdir / name, std::ios::binary);
        out << j.dump(2) << '\n';
    }
    return idx;
}

} // namespace lyaplab
