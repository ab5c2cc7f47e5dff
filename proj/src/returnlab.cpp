#include "lyaplab/returnlab.hpp"

#include <cmath>
#include <limits>

namespace lyaplab {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kLog12 = 2.4849066497880004; // log 12
} // namespace

std::optional<ReturnEvent> first_entry(const MapSpec& map, cplx z, double delta, cplx target,
                                       long n_max) {
    if (!(delta > 0.0)) throw std::invalid_argument("first_entry: delta must be > 0");
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::invalid_argument("first_entry: z must be finite");

    OrbitTrace trace;
    trace.start = z;
    trace.points.push_back(z);
    trace.cum_logderiv.push_back(0.0);
    CompensatedSum acc;
    cplx w = z;
    for (long n = 1; n <= n_max; ++n) {
        if (point_escaped(map, w)) return std::nullopt;
        acc.add(log_abs_derivative(map, w));
        w = apply_map(map, w);
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) return std::nullopt;
        trace.points.push_back(w);
        trace.cum_logderiv.push_back(acc.value());
        if (std::abs(w - target) <= delta) {
            ReturnEvent ev;
            ev.z = z;
            ev.delta = delta;
            ev.n = n;
            ev.target = target;
            ev.orbit = std::move(trace);
            return ev;
        }
    }
    return std::nullopt;
}

BoundCheck check_return_bound(const ReturnEvent& event, const MapSpec& map, double lambda,
                              double tol) {
    if (!(lambda > 1.0)) throw std::invalid_argument("check_return_bound: lambda must be > 1");

    BoundCheck chk;
    chk.lambda = lambda;
    chk.log_lhs = event.orbit.cum_logderiv[static_cast<std::size_t>(event.n)];
    chk.log_b_entry = kNaN;
    chk.log_b_conformal = kNaN;
    chk.log_b_poly = kNaN;

    const double logl = std::log(lambda);
    const double n = static_cast<double>(event.n);
    const cplx zn = event.orbit.points[static_cast<std::size_t>(event.n)];
    const bool marked_target = event.target == marked_point(map);
    const bool poly_zero_target = map.is_poly() && event.target == cplx{0.0, 0.0};

    double rhs = -std::numeric_limits<double>::infinity();
    if (marked_target || !poly_zero_target) {
        // return disjunction around the event's target
        const double dist_end = std::abs(zn - event.target);
        const double dist_start = std::abs(event.z - event.target);
        chk.log_b_entry = -n * logl + std::log(dist_end) -
                          std::log(std::max(event.delta, dist_start));
        chk.log_b_conformal = std::log(dist_end) - kLog12 - std::log(dist_start);
        rhs = std::max(rhs, std::min(chk.log_b_entry, chk.log_b_conformal));
    }
    if (poly_zero_target) {
        const double az = std::abs(event.z);
        chk.log_b_poly = std::log(event.delta) - kLog12 - std::log(az) - n * logl;
        rhs = std::max(rhs, chk.log_b_poly);
    }

    chk.log_rhs = rhs;
    chk.slack = chk.log_lhs - rhs;
    chk.passed = chk.log_lhs >= rhs - tol;
    return chk;
}

CloseReturnCheck check_close_return_bound(const MapSpec& map, cplx z, long n, double lambda,
                                          double delta0, double tol) {
    if (!map.is_poly())
        throw std::invalid_argument("check_close_return_bound: polynomial family only");
    if (!(lambda > 1.0) || !(delta0 > 0.0) || n < 1)
        throw std::invalid_argument("check_close_return_bound: need lambda > 1, delta0 > 0, n >= 1");

    CloseReturnCheck res;
    if (z == cplx{0.0, 0.0}) return res; // starting at the critical point is excluded

    OrbitTrace trace = iterate(map, z, n);
    if (static_cast<long>(trace.horizon()) < n) return res; // escaped too early

    const double final_dist = std::abs(trace.points[static_cast<std::size_t>(n)]);
    if (final_dist > delta0) return res;
    for (long j = 0; j < n; ++j)
        if (final_dist > std::abs(trace.points[static_cast<std::size_t>(j)])) return res;

    res.status = CloseReturnStatus::Checked;
    BoundCheck& chk = res.bound;
    chk.lambda = lambda;
    chk.log_lhs = trace.cum_logderiv[static_cast<std::size_t>(n)];
    chk.log_b_entry = kNaN;
    chk.log_b_conformal = kNaN;
    chk.log_b_poly = std::min(std::log(delta0) - kLog12 - std::log(std::abs(z)), 0.0) -
                     static_cast<double>(n) * std::log(lambda);
    chk.log_rhs = chk.log_b_poly;
    chk.slack = chk.log_lhs - chk.log_rhs;
    chk.passed = chk.log_lhs >= chk.log_rhs - tol;
    return res;
}

} // namespace lyaplab
