#include "lyaplab/hyperbolic.hpp"

#include <cmath>
#include <stdexcept>

namespace lyaplab {

HyperbolicTimeSet hyperbolic_times_from_logsums(std::span<const double> cum_logderiv,
                                                double lambda) {
    if (!(lambda > 1.0)) throw std::invalid_argument("hyperbolic_times: lambda must be > 1");
    if (cum_logderiv.empty()) throw std::invalid_argument("hyperbolic_times: empty cocycle");

    HyperbolicTimeSet set;
    set.lambda = lambda;
    set.m_max = static_cast<long>(cum_logderiv.size()) - 1;

    const double L = std::log(lambda);
    double run_max = cum_logderiv[0]; // Q_0
    for (long m = 1; m <= set.m_max; ++m) {
        double s = cum_logderiv[static_cast<std::size_t>(m)];
        if (s == kMinusInf) {
            set.status = HypTimesStatus::MinusInfinityInWindow;
            set.times.clear();
            set.density = 0.0;
            return set;
        }
        double q = s - static_cast<double>(m) * L;
        if (q >= run_max) set.times.push_back(m);
        run_max = std::max(run_max, q);
    }
    set.density = set.m_max > 0
                      ? static_cast<double>(set.times.size()) / static_cast<double>(set.m_max)
                      : 0.0;
    return set;
}

HyperbolicTimeSet hyperbolic_times(const OrbitTrace& trace, double lambda, long m_max) {
    if (m_max < 1) throw std::invalid_argument("hyperbolic_times: m_max must be >= 1");
    if (static_cast<long>(trace.horizon()) < m_max)
        throw std::invalid_argument("hyperbolic_times: trace shorter than m_max");
    return hyperbolic_times_from_logsums(
        std::span<const double>(trace.cum_logderiv.data(), static_cast<std::size_t>(m_max) + 1),
        lambda);
}

} // namespace lyaplab
