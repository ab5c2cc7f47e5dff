#pragma once

#include <vector>

namespace lyaplab {

// Data for the Pliss-type extraction: reals a_1..a_r with a_j <= B, and
// thresholds 0 < b1 < b2 <= B. theta = (b2 - b1)/(B - b1).
struct PlissInput {
    std::vector<double> a;
    double B = 1.0;
    double b1 = 0.25;
    double b2 = 0.5;

    double theta() const { return (b2 - b1) / (B - b1); }
};

struct PlissResult {
    std::vector<long> times; // all 1 <= n_j <= r with sum_{i=n+1}^{n_j} a_i >= b1 (n_j - n) for all n < n_j
    bool hypothesis_ok = false; // sum a_j >= b2 r and a_j <= B for all j
    double theta = 0.0;
};

// O(r) extraction via the prefix-sum walk of (a_i - b1): an index is emitted
// iff its prefix value is a running maximum. When hypothesis_ok, the count is
// guaranteed > theta * r; otherwise the indices are still returned but carry
// no count guarantee.
PlissResult pliss_times(const PlissInput& input);

} // namespace lyaplab
