#pragma once

#include "lyaplab/orbit.hpp"

#include <optional>

namespace lyaplab {

// First entry of the orbit of z into the closed ball B(target, delta):
// |f^n(z) - target| <= delta with n >= 1 minimal.
struct ReturnEvent {
    cplx z{0.0, 0.0};
    double delta = 0.0;
    long n = 0;
    cplx target{0.0, 0.0};
    OrbitTrace orbit; // through step n
};

std::optional<ReturnEvent> first_entry(const MapSpec& map, cplx z, double delta, cplx target,
                                       long n_max);

// Lower-bound check on |Df^n(z)| for a return event, in log scale.
//
// For entries into the marked point's ball the guaranteed bound is the
// disjunction of the two return alternatives
//     lambda^{-n} |f^n(z)-c| / max(delta, |z-c|)   and   |f^n(z)-c| / (12 |z-c|),
// i.e. lhs >= min of the two. Polynomial entries into B(0, delta) are checked
// against delta/(12 |z|) lambda^{-n} instead. Failures are findings, never
// exceptions.
struct BoundCheck {
    double log_lhs = 0.0; // S_n = log|Df^n(z)|
    double log_rhs = 0.0; // binding guaranteed bound
    double lambda = 1.0;
    bool passed = false;
    double slack = 0.0; // log_lhs - log_rhs
    // breakdown (NaN when not applicable)
    double log_b_entry = 0.0;     // lambda^{-n} |f^n(z)-t| / max(delta, |z-t|)
    double log_b_conformal = 0.0; // |f^n(z)-t| / (12 |z-t|)
    double log_b_poly = 0.0;      // delta / (12 |z|) lambda^{-n}
};

BoundCheck check_return_bound(const ReturnEvent& event, const MapSpec& map, double lambda,
                              double tol = 1e-9);

enum class CloseReturnStatus { Checked, PreconditionUnmet };

struct CloseReturnCheck {
    CloseReturnStatus status = CloseReturnStatus::PreconditionUnmet;
    BoundCheck bound;
};

// Closest-return inequality: requires |f^n(z)| <= |f^j(z)| for all 0 <= j < n
// and |f^n(z)| <= delta0 (verified by recomputation; z = 0 is excluded), then
// checks |Df^n(z)| >= min(delta0/(12 |z|), 1) lambda^{-n}.
CloseReturnCheck check_close_return_bound(const MapSpec& map, cplx z, long n, double lambda,
                                          double delta0, double tol = 1e-9);

} // namespace lyaplab
