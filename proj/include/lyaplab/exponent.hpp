#pragma once

#include "lyaplab/orbit.hpp"

#include <vector>

namespace lyaplab {

enum class ExponentVerdict { FiniteEstimate, MinusInfinity, DivergesPlus, Escaped };

const char* verdict_name(ExponentVerdict v);

// The series chi_n = S_n / n with suffix-inf/sup tail statistics over the
// computed horizon. chi[k] holds chi_{k+1}; inf_tail is nondecreasing and
// sup_tail nonincreasing in n by construction.
struct ExponentEstimate {
    std::vector<double> chi;
    std::vector<double> inf_tail;
    std::vector<double> sup_tail;
    ExponentVerdict verdict = ExponentVerdict::FiniteEstimate;
    OrbitTrace trace;

    std::size_t horizon() const { return chi.size(); }
    double chi_at(std::size_t n) const { return chi.at(n - 1); }

    // Per-step growth rate over the trailing window (S_n - S_m)/(n - m),
    // m = floor(n * frac): the "trending to" statistic. For an orbit settled
    // onto a cycle this converges geometrically to log|multiplier| / period,
    // unlike chi_n itself which carries an O(1/n) transient bias.
    double tail_mean(double frac = 0.5) const;
};

// Verdict rules: MinusInfinity once the cocycle hits a vanishing factor;
// DivergesPlus for certified polynomial escape; Escaped for the exponential
// cutoff; FiniteEstimate otherwise.
ExponentEstimate forward_exponent_series(const MapSpec& map, cplx z0, long n_max);

struct LowerExponentResult {
    double value = 0.0; // min of chi_n over [burn_in, horizon]; -inf possible
    ExponentVerdict verdict = ExponentVerdict::FiniteEstimate;
    long n_lo = 0;
    long n_hi = 0;
};

// Finite-horizon surrogate for liminf: the window minimum. A lower estimate,
// not a limit.
LowerExponentResult lower_exponent(const MapSpec& map, cplx z0, long n_max, long burn_in);

} // namespace lyaplab
