#include "lyaplab/orbit.hpp"

#include "lyaplab/csvio.hpp"

#include <cmath>

namespace lyaplab {

OrbitTrace iterate(const MapSpec& map, cplx z0, long n) {
    if (n < 0) throw std::invalid_argument("iterate: n must be >= 0");
    if (!std::isfinite(z0.real()) || !std::isfinite(z0.imag()))
        throw std::invalid_argument("iterate: z0 must be finite");

    OrbitTrace trace;
    trace.start = z0;
    trace.points.reserve(static_cast<std::size_t>(n) + 1);
    trace.cum_logderiv.reserve(static_cast<std::size_t>(n) + 1);

    CompensatedSum acc;
    cplx z = z0;
    trace.points.push_back(z);
    trace.cum_logderiv.push_back(acc.value());

    for (long k = 0; k < n; ++k) {
        if (point_escaped(map, z)) {
            trace.escaped_at = static_cast<std::size_t>(k);
            break;
        }
        if (map.is_poly() && z == cplx{0.0, 0.0} && !trace.hit_critical_at)
            trace.hit_critical_at = static_cast<std::size_t>(k);

        acc.add(log_abs_derivative(map, z));
        cplx next = apply_map(map, z);
        if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) {
            // overflow before formal escape: last finite index wins
            trace.escaped_at = static_cast<std::size_t>(k);
            break;
        }
        z = next;
        trace.points.push_back(z);
        trace.cum_logderiv.push_back(acc.value());
    }

    if (!trace.escaped_at && point_escaped(map, z) && !trace.points.empty())
        trace.escaped_at = trace.points.size() - 1;
    if (map.is_poly() && !trace.hit_critical_at && !trace.points.empty() &&
        trace.points.back() == cplx{0.0, 0.0} && !trace.escaped_at)
        trace.hit_critical_at = trace.points.size() - 1;

    return trace;
}

void write_orbit_csv(const OrbitTrace& trace, const std::string& path) {
    CsvWriter w(path);
    w.header({"k", "re", "im", "S"});
    for (std::size_t k = 0; k < trace.points.size(); ++k)
        w.row({CsvWriter::cell(k), CsvWriter::cell(trace.points[k].real()),
               CsvWriter::cell(trace.points[k].imag()), CsvWriter::cell(trace.cum_logderiv[k])});
}

} // namespace lyaplab
