#include "lyaplab/porosity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lyaplab {

bool escapes_within(const MapSpec& map, cplx z, long budget) {
    cplx w = z;
    for (long k = 0; k <= budget; ++k) {
        if (point_escaped(map, w)) return true;
        w = apply_map(map, w);
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) return true;
    }
    return false;
}

namespace {

double hole_radius_at(const std::vector<cplx>& julia_hits, cplx cand, cplx center, double R) {
    double room = R - std::abs(cand - center); // stay inside B(center, R)
    if (room <= 0.0) return 0.0;
    double nearest = room;
    for (const cplx& hit : julia_hits) {
        double d = std::abs(cand - hit);
        if (d < nearest) nearest = d;
    }
    return nearest;
}

} // namespace

double largest_hole_radius(const std::vector<cplx>& julia_hits,
                           const std::vector<cplx>& candidates, cplx center, double R) {
    double best = 0.0;
    const long n_cand = static_cast<long>(candidates.size());
#pragma omp parallel for schedule(static) reduction(max : best)
    for (long i = 0; i < n_cand; ++i)
        best = std::max(best,
                        hole_radius_at(julia_hits, candidates[static_cast<std::size_t>(i)],
                                       center, R));
    return best;
}

PorosityProbe porosity_probe(const MapSpec& map, cplx z, std::vector<long> j_list, long grid,
                             long escape_budget, bool parallel) {
    if (j_list.empty()) throw std::invalid_argument("porosity_probe: empty j list");
    if (grid < 1) throw std::invalid_argument("porosity_probe: grid must be >= 1");
    if (escape_budget < 1) throw std::invalid_argument("porosity_probe: budget must be >= 1");

    PorosityProbe probe;
    probe.z = z;
    probe.j_values = j_list;
    probe.grid = grid | 1; // odd, so the center line is sampled
    probe.escape_budget = escape_budget;
    probe.low_resolution = grid == 1;

    const long g = probe.grid;
    for (long j : j_list) {
        const double R = std::pow(2.0, -static_cast<double>(j));
        std::vector<cplx> pts;
        pts.reserve(static_cast<std::size_t>(g) * static_cast<std::size_t>(g));
        for (long iy = 0; iy < g; ++iy)
            for (long ix = 0; ix < g; ++ix) {
                double x = g == 1 ? 0.0 : -R + 2.0 * R * static_cast<double>(ix) / (g - 1);
                double y = g == 1 ? 0.0 : -R + 2.0 * R * static_cast<double>(iy) / (g - 1);
                if (x * x + y * y <= R * R) pts.push_back(z + cplx{x, y});
            }

        std::vector<char> esc(pts.size());
        const long n_pts = static_cast<long>(pts.size());
        if (parallel) {
#pragma omp parallel for schedule(static)
            for (long i = 0; i < n_pts; ++i)
                esc[static_cast<std::size_t>(i)] =
                    escapes_within(map, pts[static_cast<std::size_t>(i)], escape_budget) ? 1 : 0;
        } else {
            for (long i = 0; i < n_pts; ++i)
                esc[static_cast<std::size_t>(i)] =
                    escapes_within(map, pts[static_cast<std::size_t>(i)], escape_budget) ? 1 : 0;
        }

        std::vector<cplx> hits;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (!esc[i]) hits.push_back(pts[i]);

        double rho = largest_hole_radius(hits, pts, z, R) / R;
        probe.hole_radii.push_back(std::clamp(rho, 0.0, 1.0));
    }
    return probe;
}

} // namespace lyaplab
