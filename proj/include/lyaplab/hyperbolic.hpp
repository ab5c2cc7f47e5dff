#pragma once

#include "lyaplab/orbit.hpp"

#include <span>
#include <vector>

namespace lyaplab {

enum class HypTimesStatus { Ok, MinusInfinityInWindow };

// m is a lambda-hyperbolic time iff S_m - S_i >= (m - i) log lambda for every
// 0 <= i < m: each orbit suffix expands at rate >= lambda per step.
struct HyperbolicTimeSet {
    double lambda = 1.0;
    long m_max = 0;
    std::vector<long> times;
    double density = 0.0; // |times| / m_max
    HypTimesStatus status = HypTimesStatus::Ok;
};

// Single pass over Q_i = S_i - i log(lambda): m qualifies iff Q_m is a
// running maximum (same walk as the Pliss extraction).
HyperbolicTimeSet hyperbolic_times_from_logsums(std::span<const double> cum_logderiv,
                                                double lambda);

HyperbolicTimeSet hyperbolic_times(const OrbitTrace& trace, double lambda, long m_max);

} // namespace lyaplab
