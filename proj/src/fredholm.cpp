#include "lyaplab/fredholm.hpp"

#include "lyaplab/orbit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lyaplab {

FredholmStatus fredholm_coefficients(const MapSpec& map, long n_cut, std::vector<cplx>& coeffs,
                                     long& blowup_index) {
    coeffs.clear();
    coeffs.reserve(static_cast<std::size_t>(n_cut) + 1);
    coeffs.push_back(cplx{1.0, 0.0});
    blowup_index = -1;

    cplx z = marked_point(map);
    cplx inv{1.0, 0.0}; // 1 / Df^n(c)
    for (long n = 1; n <= n_cut; ++n) {
        cplx df = derivative_at(map, z);
        if (df == cplx{0.0, 0.0}) {
            blowup_index = n;
            return FredholmStatus::CoefficientBlowup;
        }
        inv /= df;
        z = apply_map(map, z);
        coeffs.push_back(inv);
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            // escaped orbit: remaining coefficients underflow to 0
            while (static_cast<long>(coeffs.size()) <= n_cut) coeffs.push_back(cplx{0.0, 0.0});
            break;
        }
    }
    return FredholmStatus::Ok;
}

FredholmResult fredholm_eval(const MapSpec& map, cplx t, long n_cut) {
    if (n_cut < 1) throw std::invalid_argument("fredholm_eval: n_cut must be >= 1");
    if (!(std::abs(t) < 1.0)) throw std::invalid_argument("fredholm_eval: need |t| < 1");

    FredholmResult res;
    std::vector<cplx> coeffs;
    res.status = fredholm_coefficients(map, n_cut, coeffs, res.blowup_index);
    if (res.status != FredholmStatus::Ok) return res;

    cplx sum{0.0, 0.0};
    cplx tn{1.0, 0.0};
    for (long n = 0; n <= n_cut; ++n) {
        sum += tn * coeffs[static_cast<std::size_t>(n)];
        tn *= t;
    }
    res.eval.value = sum;
    res.eval.n_cut = n_cut;

    // geometric envelope fit over the computed coefficients: q from recent
    // consecutive ratios, A adjusted so the envelope dominates everywhere
    double q = 0.0;
    for (long n = std::max<long>(1, n_cut / 2); n <= n_cut; ++n) {
        double prev = std::abs(coeffs[static_cast<std::size_t>(n - 1)]);
        double cur = std::abs(coeffs[static_cast<std::size_t>(n)]);
        if (prev > 0.0) q = std::max(q, cur / prev);
    }
    if (q > 0.0) {
        double A = 0.0;
        for (long n = 0; n <= n_cut; ++n)
            A = std::max(A, std::abs(coeffs[static_cast<std::size_t>(n)]) /
                                std::pow(q, static_cast<double>(n)));
        res.eval.env_A = A;
        res.eval.env_q = q;
        double qt = q * std::abs(t);
        if (qt < 1.0 - 1e-9) {
            res.eval.tail_bound =
                A * std::pow(qt, static_cast<double>(n_cut) + 1.0) / (1.0 - qt);
            res.eval.tail_valid = true;
        }
    } else {
        // all later coefficients vanished (underflow): the partial sum is exact
        res.eval.env_A = 0.0;
        res.eval.env_q = 0.0;
        res.eval.tail_bound = 0.0;
        res.eval.tail_valid = true;
    }
    return res;
}

FredholmScan fredholm_zero_scan(const MapSpec& map, double t_max, long grid_points, long n_cut) {
    if (!(t_max > 0.0) || !(t_max < 1.0))
        throw std::invalid_argument("fredholm_zero_scan: need 0 < t_max < 1");
    if (grid_points < 1) throw std::invalid_argument("fredholm_zero_scan: empty grid");

    FredholmScan scan;
    scan.grid_points = grid_points;
    scan.min_abs = std::numeric_limits<double>::infinity();
    scan.all_tails_valid = true;

    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (long i = 0; i < grid_points; ++i) {
        double r = t_max * std::sqrt((static_cast<double>(i) + 0.5) /
                                     static_cast<double>(grid_points));
        double ang = golden * static_cast<double>(i);
        cplx t = std::polar(r, ang);
        FredholmResult res = fredholm_eval(map, t, n_cut);
        if (res.status != FredholmStatus::Ok)
            throw std::runtime_error("fredholm_zero_scan: coefficient blowup");
        if (!res.eval.tail_valid) scan.all_tails_valid = false;
        double mag = std::abs(res.eval.value);
        if (mag < scan.min_abs) {
            scan.min_abs = mag;
            scan.argmin_t = t;
        }
    }
    return scan;
}

} // namespace lyaplab
