#pragma once

#include "lyaplab/disk.hpp"
#include "lyaplab/orbit.hpp"
#include "lyaplab/shadow.hpp"

#include <vector>

namespace lyaplab {

enum class CriticalityMode { ShadowProxy, CertifiedPullback };

// Upper bound on how often the critical point meets the pullback components
// of B(f^n(z), r) along the orbit.
//
// ShadowProxy counts j < n with dist(f^j(z), 0) <= C r lambda^{-(n-j)} — the
// telescope-shaped heuristic. CertifiedPullback pulls the disk back step by
// step, counting the steps whose target disk closure captures the critical
// value; since the certified disks contain the exact components, the count is
// an upper bound by construction.
struct CriticalityReport {
    long n = 0;
    double r = 0.0;
    CriticalityMode mode = CriticalityMode::ShadowProxy;
    long count = 0;
    bool certified = false;
    std::vector<double> pullback_radii; // radii of D_i, i = 0..n (certified mode)
};

struct CriticalityParams {
    double proxy_C = 1.0;
    double proxy_lambda = 2.0;
    double radius_cap = 0.0; // 0 = escape_radius(map)
};

CriticalityReport criticality_count(const MapSpec& map, const OrbitTrace& trace, long n, double r,
                                    CriticalityMode mode, const CriticalityParams& params = {});

// Empirical telescope constant: smallest C with pullback radius_i <=
// C r lambda^{-(s-i)} along the certified pullback from step s, i.e. the max
// of radius_i * lambda^{s-i} / r. Returns 0 when certification was lost.
double fit_telescope_constant(const MapSpec& map, const OrbitTrace& trace, long s, double r,
                              double lambda);

// Density report following the positive-exponent recipe: checks the
// hypothesis chi_m > eps0 + log lambda, extracts lambda e^{4 eps}-hyperbolic
// times (eps = eps0/8 by default), intersects with A(N, K0),
// K0 = 1/log(lambda e^{2 eps}), N = floor(2 C_g K0 / theta) + 1, and counts
// per-n criticality at radius rho, flagging counts above N.
struct DensityReportParams {
    double eps = -1.0; // < 0: use eps0 / 8
    double rho = 0.05; // criticality radius
    int N_override = -1;
    CriticalityParams crit;
    bool with_criticality = true;
};

struct DensityReport {
    bool hypothesis_ok = false;
    double chi_m = 0.0;
    double lambda = 1.0, eps0 = 0.0, eps = 0.0;
    double theta = 0.0;
    double K0 = 0.0;
    int N = 1;
    double c_g_fit = 0.0;
    double rho = 0.0;
    long m = 0;
    std::vector<char> is_hyp; // index n-1
    std::vector<char> in_A;
    std::vector<long> cover_count;
    std::vector<long> crit_count;
    std::vector<long> H; // hyperbolic-and-in-A times
    std::vector<long> violations; // n in H with crit_count > N
    double hyp_density = 0.0;
    double A_density = 0.0;
    double H_density = 0.0;
};

DensityReport hyperbolic_density_report(const MapSpec& map, cplx z, double lambda, double eps0,
                                        long m, const DensityReportParams& params = {});

} // namespace lyaplab
