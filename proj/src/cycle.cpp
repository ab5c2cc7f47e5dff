#include "lyaplab/cycle.hpp"

#include "lyaplab/orbit.hpp"

#include <cmath>
#include <limits>

namespace lyaplab {

namespace {

// f^p(z) and D(f^p)(z) in one pass.
void iterate_with_derivative(const MapSpec& map, cplx z, int p, cplx& fp, cplx& dfp) {
    cplx w = z;
    cplx deriv{1.0, 0.0};
    for (int i = 0; i < p; ++i) {
        deriv *= derivative_at(map, w);
        w = apply_map(map, w);
    }
    fp = w;
    dfp = deriv;
}

cplx cycle_multiplier(const MapSpec& map, cplx z, int p) {
    cplx fp, dfp;
    iterate_with_derivative(map, z, p, fp, dfp);
    return dfp;
}

CycleRecord build_record(const MapSpec& map, cplx z_star, int period) {
    CycleRecord rec;
    rec.period = period;
    rec.points.reserve(period);
    cplx w = z_star;
    cplx mult{1.0, 0.0};
    for (int i = 0; i < period; ++i) {
        rec.points.push_back(w);
        mult *= derivative_at(map, w);
        w = apply_map(map, w);
    }
    // residual = max over cycle points of |f^p(z_i) - z_i|
    double residual = 0.0;
    for (const cplx& pt : rec.points) {
        cplx v = pt;
        for (int i = 0; i < period; ++i) v = apply_map(map, v);
        residual = std::max(residual, std::abs(v - pt));
    }
    rec.multiplier = mult;
    rec.residual = residual;
    return rec;
}

// Reduce to the minimal period: if f^q returns to every cycle point within
// the residual scale for a proper divisor q, the cycle is really period q.
CycleRecord minimize_period(const MapSpec& map, const CycleRecord& rec, double tol) {
    for (int q = 1; q < rec.period; ++q) {
        if (rec.period % q != 0) continue;
        double err = 0.0;
        for (const cplx& pt : rec.points) {
            cplx w = pt;
            for (int i = 0; i < q; ++i) w = apply_map(map, w);
            err = std::max(err, std::abs(w - pt));
        }
        if (err <= std::max(tol, 1e3 * rec.residual)) return build_record(map, rec.points[0], q);
    }
    return rec;
}

} // namespace

RefineResult refine_cycle(const MapSpec& map, cplx guess, int period, double tol, int max_newton) {
    if (period < 1) throw std::invalid_argument("refine_cycle: period must be >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("refine_cycle: tol must be > 0");

    RefineResult res;
    cplx z = guess;
    double last_step = std::numeric_limits<double>::infinity();
    // Newton keeps running a bounded while after the residual first passes
    // tol: at a multiple root the residual converges long before the root
    // (and hence the multiplier) is as accurate as the arithmetic allows.
    int polish_budget = 60;
    for (int step = 0; step <= max_newton; ++step) {
        cplx fp, dfp;
        iterate_with_derivative(map, z, period, fp, dfp);
        cplx g = fp - z;
        double ag = std::abs(g);
        if (ag < tol) {
            bool settled = (ag == 0.0) || last_step <= 1e-13 * (1.0 + std::abs(z));
            if (settled || polish_budget-- <= 0) {
                res.status = RefineStatus::Converged;
                res.cycle = build_record(map, z, period);
                res.newton_steps = step;
                res.achieved_step = settled ? 0.0 : last_step;
                return res;
            }
        }
        cplx dg = dfp - cplx{1.0, 0.0};
        if (std::abs(dg) < 1e-30) {
            res.status = RefineStatus::DerivativeSingular;
            res.newton_steps = step;
            return res;
        }
        cplx delta = g / dg;
        z -= delta;
        last_step = std::abs(delta);
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            res.status = RefineStatus::NoConvergence;
            res.newton_steps = step;
            return res;
        }
    }
    res.status = RefineStatus::NoConvergence;
    res.newton_steps = max_newton;
    return res;
}

CycleSearchResult detect_attracting_cycle(const MapSpec& map, int max_period, long max_iter,
                                          double tol) {
    if (max_period < 1) throw std::invalid_argument("detect_attracting_cycle: max_period >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("detect_attracting_cycle: tol must be > 0");

    constexpr double kCauchyTol = 1e-8;
    const int window = 2 * max_period;
    const double refine_tol = std::min(tol, 1e-12);

    CycleSearchResult res;
    std::vector<cplx> ring(static_cast<std::size_t>(window) + 1);
    std::vector<cplx> rejected; // points of refined non-attracting cycles

    cplx z = marked_point(map);
    ring[0] = z;
    for (long m = 1; m <= max_iter; ++m) {
        if (point_escaped(map, z)) {
            res.escaped = true;
            res.iterations_used = m;
            return res;
        }
        z = apply_map(map, z);
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            res.escaped = true;
            res.iterations_used = m;
            return res;
        }
        ring[m % (window + 1)] = z;
        if (m < window) continue;

        for (int p = 1; p <= max_period; ++p) {
            bool hit = true;
            for (int j = 0; j + p <= window && hit; ++j) {
                cplx zu = ring[(m - j) % (window + 1)];
                cplx zv = ring[(m - j - p) % (window + 1)];
                if (std::abs(zu - zv) >= kCauchyTol) hit = false;
            }
            if (!hit) continue;

            bool near_rejected = false;
            for (const cplx& r : rejected)
                if (std::abs(z - r) < 10.0 * kCauchyTol) near_rejected = true;
            if (near_rejected) continue;

            RefineResult ref = refine_cycle(map, z, p, refine_tol);
            if (ref.status != RefineStatus::Converged) continue;

            CycleRecord rec = minimize_period(map, ref.cycle, refine_tol);
            double am = std::abs(rec.multiplier);

            // Uncertainty of |multiplier| from the achieved root accuracy,
            // probed by perturbing the root. The probe distance is at least
            // sqrt(eps)-scaled: a multiple root can zero the residual while
            // still sqrt(eps) away, and the ambiguity band must never be
            // narrower than what the arithmetic resolves, or a parabolic
            // cycle would masquerade as attracting.
            const double delta_probe = std::max(
                ref.achieved_step, 1.5e-8 * (1.0 + std::abs(rec.points[0])));
            cplx probe = cycle_multiplier(map, rec.points[0] + delta_probe, rec.period);
            double mult_err = 4.0 * std::abs(probe - rec.multiplier) + 1e-12;
            const double band = std::max(tol, mult_err);

            if (am < 1.0 - band) {
                res.status = CycleSearchStatus::Found;
                res.cycle = rec;
                res.iterations_used = m;
                return res;
            }
            if (am <= 1.0 + band) {
                res.status = CycleSearchStatus::Ambiguous;
                res.cycle = rec;
                res.iterations_used = m;
                return res;
            }
            for (const cplx& pt : rec.points) rejected.push_back(pt);
        }
    }
    res.iterations_used = max_iter;
    return res;
}

BasinCheck in_basin(const MapSpec& map, cplx z, const CycleRecord& cycle, long max_iter) {
    double capture = 0.5;
    if (cycle.period >= 2) {
        double min_gap = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < cycle.points.size(); ++i)
            for (std::size_t j = i + 1; j < cycle.points.size(); ++j)
                min_gap = std::min(min_gap, std::abs(cycle.points[i] - cycle.points[j]));
        capture = 0.25 * min_gap;
    }
    const double threshold = (1.0 - std::abs(cycle.multiplier)) * capture;

    BasinCheck check;
    cplx w = z;
    for (long k = 0; k <= max_iter; ++k) {
        for (const cplx& pt : cycle.points)
            if (std::abs(w - pt) < threshold) {
                check.entered = true;
                return check;
            }
        if (map.is_poly() && point_escaped(map, w)) return check;
        if (!map.is_poly() && w.real() > kExpEscapeRe) return check;
        w = apply_map(map, w);
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) return check;
    }
    check.exhausted = true;
    return check;
}

} // namespace lyaplab
