#include "lyaplab/backward.hpp"

#include "lyaplab/rng.hpp"

#include <cmath>
#include <numbers>

namespace lyaplab {

BackwardOrbit backward_orbit(const MapSpec& map, const BranchPolicy& policy, long n_max) {
    if (!map.is_poly()) throw std::invalid_argument("backward_orbit: polynomial family only");
    if (n_max < 0) throw std::invalid_argument("backward_orbit: n_max must be >= 0");

    const int d = map.degree;
    BackwardOrbit orbit;
    orbit.policy = policy;
    orbit.points.reserve(static_cast<std::size_t>(n_max) + 1);
    orbit.cum_logderiv.reserve(static_cast<std::size_t>(n_max) + 1);

    SplitMix64 rng(policy.seed);
    CompensatedSum acc;
    cplx x{0.0, 0.0};
    orbit.points.push_back(x);
    orbit.cum_logderiv.push_back(0.0);

    for (long n = 1; n <= n_max; ++n) {
        cplx w = x - map.c; // x_{-n}^d = x_{-(n-1)} - c
        if (w == cplx{0.0, 0.0}) {
            orbit.status = BackwardStatus::BranchPointHit;
            orbit.hit_step = n;
            return orbit;
        }
        const double mod = std::pow(std::abs(w), 1.0 / d);
        const double base_ang = std::arg(w) / d;

        int k = 0;
        switch (policy.kind) {
        case BranchPolicy::Kind::FixedAngle:
            k = ((policy.angle_index % d) + d) % d;
            break;
        case BranchPolicy::Kind::RandomSeeded:
            k = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(d)));
            break;
        case BranchPolicy::Kind::MinDerivative: {
            double best = std::numeric_limits<double>::infinity();
            for (int j = 0; j < d; ++j) {
                cplx cand = std::polar(mod, base_ang + 2.0 * std::numbers::pi * j / d);
                double dist = std::abs(cand - map.c);
                if (dist < best) {
                    best = dist;
                    k = j;
                }
            }
            break;
        }
        }

        x = std::polar(mod, base_ang + 2.0 * std::numbers::pi * k / d);
        acc.add(log_abs_derivative(map, x));
        orbit.points.push_back(x);
        orbit.cum_logderiv.push_back(acc.value());
    }
    return orbit;
}

} // namespace lyaplab
