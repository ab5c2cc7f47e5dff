#pragma once

#include "lyaplab/orbit.hpp"

#include <cstdint>
#include <vector>

namespace lyaplab {

// Inverse-branch selection for backward orbits of 0 under z^d + c.
//   FixedAngle(k)    the root of argument (Arg w + 2 pi k)/d every step
//   RandomSeeded     uniform branch choice from a seeded stream
//   MinDerivative    adversarial: all d roots of w share one modulus, so the
//                    greedy picks the root closest to c, minimizing the next
//                    pullback's derivative factor d |x - c|^{(d-1)/d}
struct BranchPolicy {
    enum class Kind { FixedAngle, RandomSeeded, MinDerivative };
    Kind kind = Kind::FixedAngle;
    int angle_index = 0;
    std::uint64_t seed = 0;

    static BranchPolicy fixed_angle(int k) { return {Kind::FixedAngle, k, 0}; }
    static BranchPolicy random_seeded(std::uint64_t s) { return {Kind::RandomSeeded, 0, s}; }
    static BranchPolicy min_derivative() { return {Kind::MinDerivative, 0, 0}; }
};

enum class BackwardStatus { Completed, BranchPointHit };

// Backward orbit x_0 = 0, f(x_{-n}) = x_{-(n-1)}, with the cocycle
// S_n = log|Df^n(x_{-n})| = sum_{k=1..n} log|Df(x_{-k})|.
struct BackwardOrbit {
    BranchPolicy policy;
    std::vector<cplx> points;        // x_0, x_{-1}, ..., points[n] = x_{-n}
    std::vector<double> cum_logderiv; // S_0 = 0, S_1, ...
    BackwardStatus status = BackwardStatus::Completed;
    long hit_step = -1; // step where x_{-(n-1)} - c vanished, if any

    double chi(std::size_t n) const { return cum_logderiv.at(n) / static_cast<double>(n); }
    std::size_t depth() const { return points.empty() ? 0 : points.size() - 1; }
};

BackwardOrbit backward_orbit(const MapSpec& map, const BranchPolicy& policy, long n_max);

} // namespace lyaplab
