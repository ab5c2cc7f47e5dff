#include "lyaplab/shadow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lyaplab {

ShadowTable build_shadow_table(std::span<const double> phi, double K, int N) {
    if (!(K > 0.0)) throw std::invalid_argument("shadow_table: K must be > 0");
    if (N < 0) throw std::invalid_argument("shadow_table: N must be >= 0");
    if (phi.empty()) throw std::invalid_argument("shadow_table: empty phi");

    ShadowTable t;
    t.phi.assign(phi.begin(), phi.end());
    t.K = K;
    t.N = N;
    const long m = static_cast<long>(phi.size()) - 1;
    if (m < 1) {
        t.coverage_bound_ok = true;
        return t;
    }

    // interval stabbing by difference array over integer times 1..m
    std::vector<long> diff(static_cast<std::size_t>(m) + 2, 0);
    for (long j = 0; j <= m; ++j) {
        double p = phi[static_cast<std::size_t>(j)];
        if (!(p > 0.0)) continue; // empty shadow
        long lo = j + 1;
        long hi = std::min(static_cast<long>(std::floor(static_cast<double>(j) + K * p)), m);
        if (hi < lo) continue;
        diff[static_cast<std::size_t>(lo)] += 1;
        diff[static_cast<std::size_t>(hi) + 1] -= 1;
    }
    t.cover_count.resize(static_cast<std::size_t>(m));
    long running = 0;
    for (long n = 1; n <= m; ++n) {
        running += diff[static_cast<std::size_t>(n)];
        t.cover_count[static_cast<std::size_t>(n - 1)] = running;
    }

    t.in_A.resize(static_cast<std::size_t>(m));
    long in_a = 0;
    for (long n = 1; n <= m; ++n) {
        bool member = t.cover_count[static_cast<std::size_t>(n - 1)] <= N;
        t.in_A[static_cast<std::size_t>(n - 1)] = member ? 1 : 0;
        if (member) ++in_a;
    }
    t.density_A = static_cast<double>(in_a) / static_cast<double>(m);

    // pruned positive-part prefix fit
    double sum_pos = 0.0;
    double max_pos = 0.0;
    double fit = 0.0;
    for (long n = 1; n <= m; ++n) {
        double p = std::max(phi[static_cast<std::size_t>(n - 1)], 0.0);
        sum_pos += p;
        max_pos = std::max(max_pos, p);
        fit = std::max(fit, (sum_pos - max_pos) / static_cast<double>(n));
    }
    t.c_g_fit = fit;

    t.coverage_bound_ok = N > 0 ? (t.density_A >= 1.0 - t.c_g_fit * K / N - 1e-12)
                        : (t.density_A >= 0.0);
    return t;
}

ShadowTable shadow_table(const OrbitTrace& trace, double K, int N) {
    // Crit' = {0} for unicritical polynomials; exponential maps have no
    // critical point in the plane, so the shadow machinery is polynomial-only.
    std::vector<double> phi;
    phi.reserve(trace.points.size());
    std::optional<long> hit;
    for (std::size_t j = 0; j < trace.points.size(); ++j) {
        double dist = std::abs(trace.points[j]);
        if (dist == 0.0) {
            hit = static_cast<long>(j);
            break;
        }
        phi.push_back(-std::log(dist));
    }
    if (phi.empty()) phi.push_back(0.0);
    ShadowTable t = build_shadow_table(phi, K, N);
    t.hit_critical = hit;
    return t;
}

std::vector<char> a_membership(const ShadowTable& table, int N) {
    std::vector<char> in_a(table.cover_count.size());
    for (std::size_t i = 0; i < table.cover_count.size(); ++i)
        in_a[i] = table.cover_count[i] <= N ? 1 : 0;
    return in_a;
}

} // namespace lyaplab
