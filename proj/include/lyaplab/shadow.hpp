#pragma once

#include "lyaplab/orbit.hpp"

#include <optional>
#include <span>
#include <vector>

namespace lyaplab {

// Shadow bookkeeping for an orbit: phi(j) = -log dist(f^j(z), Crit'), the
// shadow S(j, K) = (j, j + K phi(j)] (empty when phi(j) <= 0), and A(N, K) =
// times covered by at most N shadows. For unicritical polynomials
// Crit' = {0}, so the pruned sum drops at most one index.
struct ShadowTable {
    std::vector<double> phi; // phi[j], j = 0..m
    double K = 1.0;
    int N = 1;
    std::vector<long> cover_count; // cover_count[n-1] = #shadows containing n, n = 1..m
    std::vector<char> in_A;        // in_A[n-1], n = 1..m
    double density_A = 0.0;
    // Least C with pruned-prefix-sum of positive parts <= C n for all n <= m
    // (prune: the single largest positive phi in the prefix). Positive parts
    // are the shadow lengths / K, which is what the covering count sums.
    double c_g_fit = 0.0;
    bool coverage_bound_ok = false; // density_A >= 1 - c_g_fit * K / N
    std::optional<long> hit_critical; // phi = +inf at this index

    long m() const { return static_cast<long>(in_A.size()); }
};

ShadowTable build_shadow_table(std::span<const double> phi, double K, int N);

// phi from the orbit's distance to the critical point 0 (polynomial only).
// An exact critical hit truncates the table there and sets hit_critical.
ShadowTable shadow_table(const OrbitTrace& trace, double K, int N);

// Membership of A(N, K) recomputed for a different N from stored cover counts.
std::vector<char> a_membership(const ShadowTable& table, int N);

} // namespace lyaplab
