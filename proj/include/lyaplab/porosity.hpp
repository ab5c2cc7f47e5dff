#pragma once

#include "lyaplab/map.hpp"

#include <vector>

namespace lyaplab {

// Escape-time indicator for the filled-in dynamics: true iff the orbit leaves
// the escape region within the budget. The complement (non-escape) is the
// "Julia-indicator hit" the porosity probe avoids.
bool escapes_within(const MapSpec& map, cplx z, long budget);

// For each scale j: the largest relative radius rho_j such that some ball of
// radius rho_j * 2^{-j} inside B(z, 2^{-j}) contains no non-escaping grid
// sample. Grid counts are forced odd so the center row/column is sampled.
struct PorosityProbe {
    cplx z{0.0, 0.0};
    std::vector<long> j_values;
    std::vector<double> hole_radii; // rho_j in [0, 1]
    long grid = 0;
    long escape_budget = 0;
    bool low_resolution = false; // grid == 1: rho degenerates to 0 or 1
};

PorosityProbe porosity_probe(const MapSpec& map, cplx z, std::vector<long> j_list, long grid,
                             long escape_budget, bool parallel = true);

// Largest hole radius achievable from the given candidate centers against
// the given non-escaping sample set, inside B(center, R). Exposed so the
// sample-refinement monotonicity can be exercised with a fixed center set.
double largest_hole_radius(const std::vector<cplx>& julia_hits,
                           const std::vector<cplx>& candidates, cplx center, double R);

} // namespace lyaplab
