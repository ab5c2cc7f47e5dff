#include "lyaplab/criticality.hpp"

#include "lyaplab/hyperbolic.hpp"

#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lyaplab {

namespace {

long proxy_count(const OrbitTrace& trace, long n, double r, double C, double lambda) {
    long count = 0;
    for (long j = 0; j < n; ++j) {
        double dist = std::abs(trace.points[static_cast<std::size_t>(j)]);
        double reach = C * r * std::pow(lambda, -static_cast<double>(n - j));
        if (dist <= reach) ++count;
    }
    return count;
}

struct PullbackRun {
    bool certified = true;
    long degenerate_steps = 0;
    std::vector<double> radii; // radii[i] = radius of D_i, i = 0..n
};

PullbackRun run_pullback(const MapSpec& map, const OrbitTrace& trace, long n, double r,
                         double cap) {
    PullbackRun run;
    run.radii.assign(static_cast<std::size_t>(n) + 1, 0.0);
    Disk disk{trace.points[static_cast<std::size_t>(n)], r};
    run.radii[static_cast<std::size_t>(n)] = r;
    for (long i = n - 1; i >= 0; --i) {
        PullbackResult pb = pullback_disk(map, disk, trace.points[static_cast<std::size_t>(i)]);
        if (pb.status == PullbackStatus::DegenerateBranch) {
            ++run.degenerate_steps;
            disk = pullback_cover_full(map, disk);
        } else {
            disk = pb.disk;
        }
        run.radii[static_cast<std::size_t>(i)] = disk.radius;
        if (disk.radius > cap) {
            run.certified = false;
            return run;
        }
    }
    return run;
}

} // namespace

CriticalityReport criticality_count(const MapSpec& map, const OrbitTrace& trace, long n, double r,
                                    CriticalityMode mode, const CriticalityParams& params) {
    if (!map.is_poly()) throw std::invalid_argument("criticality_count: polynomial family only");
    if (n < 0 || static_cast<std::size_t>(n) > trace.horizon())
        throw std::invalid_argument("criticality_count: n exceeds trace length");
    if (!(r > 0.0)) throw std::invalid_argument("criticality_count: r must be > 0");

    CriticalityReport rep;
    rep.n = n;
    rep.r = r;
    rep.mode = mode;
    if (n == 0) {
        rep.certified = true;
        return rep;
    }

    if (mode == CriticalityMode::ShadowProxy) {
        rep.count = proxy_count(trace, n, r, params.proxy_C, params.proxy_lambda);
        rep.certified = false;
        return rep;
    }

    const double cap = params.radius_cap > 0.0 ? params.radius_cap : escape_radius(map);
    PullbackRun run = run_pullback(map, trace, n, r, cap);
    if (!run.certified) {
        // CertificationLost: fall back to the proxy, uncertified
        rep.count = proxy_count(trace, n, r, params.proxy_C, params.proxy_lambda);
        rep.certified = false;
        rep.pullback_radii = std::move(run.radii);
        return rep;
    }
    rep.count = run.degenerate_steps;
    rep.certified = true;
    rep.pullback_radii = std::move(run.radii);
    return rep;
}

double fit_telescope_constant(const MapSpec& map, const OrbitTrace& trace, long s, double r,
                              double lambda) {
    CriticalityParams params;
    params.radius_cap = 10.0 * escape_radius(map);
    CriticalityReport rep = criticality_count(map, trace, s, r, CriticalityMode::CertifiedPullback,
                                              params);
    if (!rep.certified) return 0.0;
    double fit = 0.0;
    for (long i = 0; i <= s; ++i) {
        double ratio = rep.pullback_radii[static_cast<std::size_t>(i)] *
                       std::pow(lambda, static_cast<double>(s - i)) / r;
        fit = std::max(fit, ratio);
    }
    return fit;
}

DensityReport hyperbolic_density_report(const MapSpec& map, cplx z, double lambda, double eps0,
                                        long m, const DensityReportParams& params) {
    if (!(lambda > 1.0)) throw std::invalid_argument("density_report: lambda must be > 1");
    if (!(eps0 > 0.0)) throw std::invalid_argument("density_report: eps0 must be > 0");
    if (m < 1) throw std::invalid_argument("density_report: m must be >= 1");

    DensityReport rep;
    rep.lambda = lambda;
    rep.eps0 = eps0;
    rep.eps = params.eps > 0.0 ? params.eps : eps0 / 8.0;
    rep.rho = params.rho;
    rep.m = m;

    OrbitTrace trace = iterate(map, z, m);
    if (static_cast<long>(trace.horizon()) < m || trace.cum_logderiv.back() == kMinusInf) {
        rep.hypothesis_ok = false; // escaped or hit the critical point
        rep.chi_m = trace.cum_logderiv.back() / static_cast<double>(trace.horizon());
        return rep;
    }
    rep.chi_m = trace.cum_logderiv[static_cast<std::size_t>(m)] / static_cast<double>(m);
    rep.hypothesis_ok = rep.chi_m > eps0 + std::log(lambda);
    if (!rep.hypothesis_ok) return rep;

    // hyperbolic times at rate lambda e^{4 eps}
    const double rate_hyp = lambda * std::exp(4.0 * rep.eps);
    HyperbolicTimeSet hyp = hyperbolic_times(trace, rate_hyp, m);
    rep.is_hyp.assign(static_cast<std::size_t>(m), 0);
    for (long t : hyp.times) rep.is_hyp[static_cast<std::size_t>(t - 1)] = 1;
    rep.hyp_density = hyp.density;

    // theta from the Pliss data of the cocycle increments
    const double b1 = std::log(rate_hyp);
    const double b2 = eps0 + std::log(lambda);
    double B = b2;
    for (long k = 0; k < m; ++k) {
        double a = trace.cum_logderiv[static_cast<std::size_t>(k + 1)] -
                   trace.cum_logderiv[static_cast<std::size_t>(k)];
        B = std::max(B, a);
    }
    rep.theta = (b2 - b1) / (B - b1);

    rep.K0 = 1.0 / std::log(lambda * std::exp(2.0 * rep.eps));
    ShadowTable shadows = shadow_table(trace, rep.K0, 1);
    rep.c_g_fit = shadows.c_g_fit;
    rep.cover_count = shadows.cover_count;
    rep.N = params.N_override > 0
                ? params.N_override
                : static_cast<int>(std::floor(2.0 * rep.c_g_fit * rep.K0 /
                                              std::max(rep.theta, 1e-300))) +
                      1;
    rep.in_A = a_membership(shadows, rep.N);

    long h_count = 0, a_count = 0;
    for (long n = 1; n <= m; ++n) {
        bool in_h = rep.is_hyp[static_cast<std::size_t>(n - 1)] != 0;
        bool in_a = rep.in_A[static_cast<std::size_t>(n - 1)] != 0;
        if (in_a) ++a_count;
        if (in_h && in_a) {
            rep.H.push_back(n);
            ++h_count;
        }
    }
    rep.A_density = static_cast<double>(a_count) / static_cast<double>(m);
    rep.H_density = static_cast<double>(h_count) / static_cast<double>(m);

    if (params.with_criticality) {
        rep.crit_count.assign(static_cast<std::size_t>(m), 0);
        const long count = static_cast<long>(rep.H.size());
#pragma omp parallel for schedule(dynamic)
        for (long idx = 0; idx < count; ++idx) {
            long n = rep.H[static_cast<std::size_t>(idx)];
            CriticalityReport cr = criticality_count(map, trace, n, rep.rho,
                                                     CriticalityMode::ShadowProxy, params.crit);
            rep.crit_count[static_cast<std::size_t>(n - 1)] = cr.count;
        }
        for (long n : rep.H)
            if (rep.crit_count[static_cast<std::size_t>(n - 1)] > rep.N)
                rep.violations.push_back(n);
    }
    return rep;
}

} // namespace lyaplab
