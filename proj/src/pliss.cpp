#include "lyaplab/pliss.hpp"

#include "lyaplab/orbit.hpp"

#include <stdexcept>

namespace lyaplab {

PlissResult pliss_times(const PlissInput& input) {
    if (!(0.0 < input.b1 && input.b1 < input.b2 && input.b2 <= input.B))
        throw std::invalid_argument("pliss_times: need 0 < b1 < b2 <= B");

    PlissResult res;
    res.theta = input.theta();

    CompensatedSum total;
    bool bounded = true;
    for (double x : input.a) {
        total.add(x);
        if (!(x <= input.B)) bounded = false;
    }
    const long r = static_cast<long>(input.a.size());
    res.hypothesis_ok = bounded && total.value() >= input.b2 * static_cast<double>(r);

    // prefix walk P_k = sum_{i<=k}(a_i - b1); n_j is a Pliss index iff
    // P_{n_j} >= P_n for every 0 <= n < n_j, i.e. a running maximum
    CompensatedSum walk;
    double run_max = 0.0; // P_0 = 0
    for (long k = 1; k <= r; ++k) {
        walk.add(input.a[static_cast<std::size_t>(k - 1)] - input.b1);
        double pk = walk.value();
        if (pk >= run_max) res.times.push_back(k);
        run_max = std::max(run_max, pk);
    }
    return res;
}

} // namespace lyaplab
