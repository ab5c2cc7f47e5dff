#include "lyaplab/exponent.hpp"

#include <algorithm>
#include <cmath>

namespace lyaplab {

const char* verdict_name(ExponentVerdict v) {
    switch (v) {
    case ExponentVerdict::FiniteEstimate: return "FiniteEstimate";
    case ExponentVerdict::MinusInfinity: return "MinusInfinity";
    case ExponentVerdict::DivergesPlus: return "DivergesPlus";
    case ExponentVerdict::Escaped: return "Escaped";
    }
    return "?";
}

double ExponentEstimate::tail_mean(double frac) const {
    const std::size_t n = trace.horizon();
    if (n < 2) return chi.empty() ? 0.0 : chi.back();
    std::size_t m = static_cast<std::size_t>(static_cast<double>(n) * frac);
    m = std::min(std::max<std::size_t>(m, 1), n - 1);
    double ds = trace.cum_logderiv[n] - trace.cum_logderiv[m];
    return ds / static_cast<double>(n - m);
}

ExponentEstimate forward_exponent_series(const MapSpec& map, cplx z0, long n_max) {
    if (n_max < 1) throw std::invalid_argument("forward_exponent_series: n_max must be >= 1");

    ExponentEstimate est;
    est.trace = iterate(map, z0, n_max);
    const std::size_t horizon = est.trace.horizon();

    est.chi.resize(horizon);
    for (std::size_t n = 1; n <= horizon; ++n)
        est.chi[n - 1] = est.trace.cum_logderiv[n] / static_cast<double>(n);

    est.inf_tail.resize(horizon);
    est.sup_tail.resize(horizon);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t k = horizon; k-- > 0;) {
        lo = std::min(lo, est.chi[k]);
        hi = std::max(hi, est.chi[k]);
        est.inf_tail[k] = lo;
        est.sup_tail[k] = hi;
    }

    if (est.trace.cum_logderiv.size() > 0 && est.trace.cum_logderiv.back() == kMinusInf)
        est.verdict = ExponentVerdict::MinusInfinity;
    else if (est.trace.escaped_at)
        est.verdict = map.is_poly() ? ExponentVerdict::DivergesPlus : ExponentVerdict::Escaped;
    else
        est.verdict = ExponentVerdict::FiniteEstimate;
    return est;
}

LowerExponentResult lower_exponent(const MapSpec& map, cplx z0, long n_max, long burn_in) {
    if (burn_in < 1 || burn_in >= n_max)
        throw std::invalid_argument("lower_exponent: need 1 <= burn_in < n_max");

    ExponentEstimate est = forward_exponent_series(map, z0, n_max);
    LowerExponentResult res;
    res.verdict = est.verdict;
    const long horizon = static_cast<long>(est.horizon());
    if (horizon < burn_in) {
        // escaped before the window opened: nothing to take a min over
        res.value = std::numeric_limits<double>::quiet_NaN();
        res.n_lo = res.n_hi = horizon;
        return res;
    }
    res.n_lo = burn_in;
    res.n_hi = horizon;
    double lo = std::numeric_limits<double>::infinity();
    for (long n = burn_in; n <= horizon; ++n) lo = std::min(lo, est.chi_at(n));
    res.value = lo;
    return res;
}

} // namespace lyaplab
