#include "lyaplab/recurrence.hpp"

#include <cmath>

namespace lyaplab {

RecurrenceReport slow_recurrence_test(const MapSpec& map, cplx z0, double alpha, long horizon,
                                      RecurrenceReference ref, long burn_in) {
    if (!(alpha > 0.0)) throw std::invalid_argument("slow_recurrence_test: alpha must be > 0");
    if (horizon < 1) throw std::invalid_argument("slow_recurrence_test: horizon must be >= 1");

    const cplx target = (ref == RecurrenceReference::CriticalPoint)
                            ? cplx{0.0, 0.0}
                            : (map.is_poly() ? map.c : cplx{0.0, 0.0});

    RecurrenceReport rep;
    rep.alpha = alpha;
    rep.horizon = horizon;
    rep.burn_in = burn_in;

    cplx z = z0;
    for (long n = 1; n <= horizon; ++n) {
        if (point_escaped(map, z)) {
            rep.escaped_at = n - 1;
            break;
        }
        z = apply_map(map, z);
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            rep.escaped_at = n - 1;
            break;
        }
        if (!(std::abs(z - target) >= std::exp(-alpha * static_cast<double>(n))))
            rep.violations.push_back(n);
    }

    rep.slowly_recurrent = true;
    for (long n : rep.violations)
        if (n > burn_in) rep.slowly_recurrent = false;
    return rep;
}

} // namespace lyaplab
