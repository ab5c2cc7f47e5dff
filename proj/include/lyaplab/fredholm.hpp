#pragma once

#include "lyaplab/map.hpp"

#include <vector>

namespace lyaplab {

enum class FredholmStatus { Ok, CoefficientBlowup };

// Truncated evaluation of F(t) = 1 + sum_{n>=1} t^n / Df^n(c) with a
// geometric-envelope tail bound: A, q are fitted to the computed
// coefficients so that |1/Df^n(c)| <= A q^n across the range, and
// tail = A (q|t|)^{n_cut+1} / (1 - q|t|) when q|t| < 1 (else invalid).
struct FredholmEval {
    cplx value{1.0, 0.0};
    double tail_bound = 0.0;
    bool tail_valid = false;
    double env_A = 0.0;
    double env_q = 0.0;
    long n_cut = 0;
};

struct FredholmResult {
    FredholmStatus status = FredholmStatus::Ok;
    FredholmEval eval;
    long blowup_index = -1; // n with Df^n(c) = 0, when status is blowup
};

FredholmResult fredholm_eval(const MapSpec& map, cplx t, long n_cut);

// Coefficients 1/Df^n(c) for n = 0..n_cut (a_0 = 1), or blowup index.
FredholmStatus fredholm_coefficients(const MapSpec& map, long n_cut, std::vector<cplx>& coeffs,
                                     long& blowup_index);

struct FredholmScan {
    double min_abs = 0.0;
    cplx argmin_t{0.0, 0.0};
    long grid_points = 0;
    bool all_tails_valid = false;
};

// min |F(t)| over a deterministic sunflower grid of the disk |t| <= t_max.
FredholmScan fredholm_zero_scan(const MapSpec& map, double t_max, long grid_points, long n_cut);

} // namespace lyaplab
