#pragma once

#include "lyaplab/map.hpp"

#include <optional>
#include <vector>

namespace lyaplab {

// Attracting cycle certified by recomputation: points close up under f within
// `residual`, multiplier = product of Df over the cycle, |multiplier| < 1.
struct CycleRecord {
    int period = 1;
    std::vector<cplx> points;
    cplx multiplier{0.0, 0.0};
    double residual = 0.0;
};

enum class CycleSearchStatus {
    Found,     // attracting cycle certified
    None,      // escape, or no convergence within budget
    Ambiguous, // refinement landed on |multiplier| within tol of 1
};

struct CycleSearchResult {
    CycleSearchStatus status = CycleSearchStatus::None;
    std::optional<CycleRecord> cycle;
    long iterations_used = 0;
    bool escaped = false;
};

enum class RefineStatus { Converged, NoConvergence, DerivativeSingular };

struct RefineResult {
    RefineStatus status = RefineStatus::NoConvergence;
    CycleRecord cycle;
    int newton_steps = 0;
    // Final Newton step size when the iteration stalled before full
    // stagnation (0 when the root settled to machine accuracy); callers use
    // it to bound the multiplier uncertainty.
    double achieved_step = 0.0;
};

// Newton refinement of a period-p point: root of g(z) = f^p(z) - z using
// Dg = Df^p - 1. DerivativeSingular when |Df^p - 1| < 1e-30 at an iterate.
RefineResult refine_cycle(const MapSpec& map, cplx guess, int period, double tol,
                          int max_newton = 100);

// Iterates the marked point, scans a trailing window of length 2*max_period
// for near-periodicity (Cauchy tolerance 1e-8), refines hits, and certifies.
// Repelling refinements are remembered and skipped; indifferent ones
// (|multiplier| within tol of 1) end the search as Ambiguous. The emitted
// period is minimal: proper divisors are checked against the residual scale.
CycleSearchResult detect_attracting_cycle(const MapSpec& map, int max_period, long max_iter,
                                          double tol = 1e-9);

struct BasinCheck {
    bool entered = false;
    bool exhausted = false;
};

// True iff the orbit of z comes within (1 - |multiplier|) * capture_radius of
// a cycle point within max_iter. capture_radius is 0.25 * min pairwise gap of
// the cycle points (0.5 for fixed points).
BasinCheck in_basin(const MapSpec& map, cplx z, const CycleRecord& cycle, long max_iter);

} // namespace lyaplab
