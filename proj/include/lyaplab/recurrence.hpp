#pragma once

#include "lyaplab/map.hpp"

#include <optional>
#include <vector>

namespace lyaplab {

// Which point the recurrence rate is measured against: the critical point 0
// or the critical value c. The two are linked by |f^{n+1}(z) - c| = |f^n(z)|^d,
// so the conventions agree up to the rate factor d and an index shift.
enum class RecurrenceReference { CriticalPoint, CriticalValue };

struct RecurrenceReport {
    double alpha = 0.0;
    long horizon = 0;
    long burn_in = 0;
    std::vector<long> violations; // n in [1, horizon] with |f^n(z) - ref| < e^{-alpha n}
    bool slowly_recurrent = false; // no violations past burn_in
    std::optional<long> escaped_at;
};

// Checks |f^n(z0) - ref| >= e^{-alpha n} for n = 1..horizon (stopping at
// escape). Exact hits of the reference are violations (distance 0).
RecurrenceReport slow_recurrence_test(const MapSpec& map, cplx z0, double alpha, long horizon,
                                      RecurrenceReference ref, long burn_in = 0);

} // namespace lyaplab
