#include "lyaplab/disk.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace lyaplab {

namespace {

// d-th root of u on the branch indexed by k (argument (Arg u + 2 pi k)/d).
cplx branch_root(cplx u, int d, int k) {
    double mod = std::pow(std::abs(u), 1.0 / d);
    double ang = (std::arg(u) + 2.0 * std::numbers::pi * k) / d;
    return std::polar(mod, ang);
}

int nearest_branch(cplx u, int d, cplx hint) {
    int best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int k = 0; k < d; ++k) {
        double dist = std::abs(branch_root(u, d, k) - hint);
        if (dist < best_dist) {
            best_dist = dist;
            best = k;
        }
    }
    return best;
}

} // namespace

PullbackResult pullback_disk(const MapSpec& map, const Disk& target, cplx root_hint,
                             int boundary_samples) {
    if (!map.is_poly()) throw std::invalid_argument("pullback_disk: polynomial family only");
    if (target.radius < 0.0) throw std::invalid_argument("pullback_disk: negative radius");

    const int d = map.degree;
    const cplx u0 = target.center - map.c;
    const double au0 = std::abs(u0);
    const double r = target.radius;

    if (au0 <= r) return {PullbackStatus::DegenerateBranch, Disk{}};

    const int k = nearest_branch(u0, d, root_hint);
    if (r == 0.0) return {PullbackStatus::Ok, Disk{branch_root(u0, d, k), 0.0}};

    const double rmin = std::pow(au0 - r, 1.0 / d);
    const double rmax = std::pow(au0 + r, 1.0 / d);
    const double theta = (std::arg(u0) + 2.0 * std::numbers::pi * k) / d;
    const cplx center = std::polar(0.5 * (rmin + rmax), theta);

    // |g'(w)| <= (1/d) (|u0|-r)^{1/d - 1} on the target, |w'(t)| = r.
    const double lip = (r / d) * std::pow(au0 - r, 1.0 / d - 1.0);

    const int m = std::max(boundary_samples, 16);
    const double arg_u0 = std::arg(u0);
    double max_dist = 0.0;
    for (int i = 0; i < m; ++i) {
        double t = 2.0 * std::numbers::pi * i / m;
        cplx w = u0 + std::polar(r, t);
        // relative argument stays in (-pi/2, pi/2) since |w/u0 - 1| < 1
        double psi = std::arg(w / u0);
        cplx g = std::polar(std::pow(std::abs(w), 1.0 / d),
                            (arg_u0 + psi + 2.0 * std::numbers::pi * k) / d);
        max_dist = std::max(max_dist, std::abs(g - center));
    }

    const double gap_pad = lip * std::numbers::pi / m;
    const double radius = (max_dist + gap_pad) * (1.0 + 1e-12) + 1e-300;
    return {PullbackStatus::Ok, Disk{center, radius}};
}

Disk pullback_cover_full(const MapSpec& map, const Disk& target) {
    if (!map.is_poly()) throw std::invalid_argument("pullback_cover_full: polynomial family only");
    double reach = std::abs(target.center - map.c) + target.radius;
    return Disk{cplx{0.0, 0.0}, std::pow(reach, 1.0 / map.degree) * (1.0 + 1e-12)};
}

} // namespace lyaplab
