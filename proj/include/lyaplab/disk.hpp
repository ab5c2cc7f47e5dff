#pragma once

#include "lyaplab/map.hpp"

namespace lyaplab {

struct Disk {
    cplx center{0.0, 0.0};
    double radius = 0.0;

    bool contains(cplx z) const { return std::abs(z - center) <= radius; }
};

enum class PullbackStatus { Ok, DegenerateBranch };

struct PullbackResult {
    PullbackStatus status = PullbackStatus::Ok;
    Disk disk;
};

// Certified cover of the univalent-branch preimage component of `target`
// under f(z) = z^d + c, the branch selected by proximity to root_hint.
//
// The branch g(w) = (w - c)^{1/d} is holomorphic on the closed target disk
// whenever the critical value c stays outside it, so |g - center| attains its
// maximum on the boundary circle; the returned radius is the sampled boundary
// maximum plus a Lipschitz gap bound, hence the exact component is contained
// in the returned disk (up to last-ulp rounding, which is out of scope).
//
// DegenerateBranch when the closed target contains c (no univalent branch).
PullbackResult pullback_disk(const MapSpec& map, const Disk& target, cplx root_hint,
                             int boundary_samples = 512);

// Cover of the FULL preimage of `target` (all branches), valid even when the
// target contains the critical value: every preimage z has
// |z| <= (|center - c| + radius)^{1/d}.
Disk pullback_cover_full(const MapSpec& map, const Disk& target);

} // namespace lyaplab
