#pragma once

#include "lyaplab/map.hpp"

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace lyaplab {

inline constexpr double kMinusInf = -std::numeric_limits<double>::infinity();

// Neumaier compensated summation. Once a -inf term arrives the sum is pinned
// to -inf (a vanished derivative factor kills the whole cocycle product).
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;
    bool minus_inf = false;

    void add(double x) {
        if (minus_inf) return;
        if (x == kMinusInf) {
            minus_inf = true;
            return;
        }
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }

    double value() const { return minus_inf ? kMinusInf : sum + comp; }
};

// Forward orbit z0, f(z0), ..., together with the log-derivative cocycle
// S_k = sum_{i<k} log|Df(z_i)| (= log|Df^k(z0)|), accumulated compensated.
// points and cum_logderiv always have equal length.
struct OrbitTrace {
    cplx start{0.0, 0.0};
    std::vector<cplx> points;
    std::vector<double> cum_logderiv;
    std::optional<std::size_t> escaped_at;
    std::optional<std::size_t> hit_critical_at;

    std::size_t length() const { return points.size(); }
    // Largest n for which S_n (and z_n) exist.
    std::size_t horizon() const { return points.empty() ? 0 : points.size() - 1; }
};

// Iterates up to n steps, stopping early at escape. A non-finite iterate
// (overflow before formal escape) truncates the trace at the last finite
// point and marks it escaped; it never aborts.
OrbitTrace iterate(const MapSpec& map, cplx z0, long n);

void write_orbit_csv(const OrbitTrace& trace, const std::string& path);

} // namespace lyaplab
