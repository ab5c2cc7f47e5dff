#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace lyaplab {

using cplx = std::complex<double>;

enum class MapFamily { UnicriticalPoly, Exponential };

// A dynamical system from one of the two supported families:
//   UnicriticalPoly  f(z) = z^d + c, d >= 2
//   Exponential      E(z) = a * exp(z), a != 0
// The marked point is the orbit start all critical-orbit statements refer to:
// the critical value c for polynomials, 0 for exponentials.
struct MapSpec {
    MapFamily family = MapFamily::UnicriticalPoly;
    int degree = 2;    // poly only
    cplx c{0.0, 0.0};  // poly parameter
    cplx a{1.0, 0.0};  // exponential parameter

    static MapSpec poly(int d, cplx c) {
        if (d < 2) throw std::invalid_argument("MapSpec: degree must be >= 2");
        MapSpec m;
        m.family = MapFamily::UnicriticalPoly;
        m.degree = d;
        m.c = c;
        return m;
    }

    static MapSpec exponential(cplx a) {
        if (a == cplx{0.0, 0.0}) throw std::invalid_argument("MapSpec: a must be nonzero");
        MapSpec m;
        m.family = MapFamily::Exponential;
        m.a = a;
        return m;
    }

    bool is_poly() const { return family == MapFamily::UnicriticalPoly; }

    std::string label() const;
};

// z^n by binary exponentiation, n >= 0. Deterministic and much better behaved
// than std::pow on complex arguments.
inline cplx pow_int(cplx z, int n) {
    cplx r{1.0, 0.0};
    while (n > 0) {
        if (n & 1) r *= z;
        z *= z;
        n >>= 1;
    }
    return r;
}

inline cplx apply_map(const MapSpec& m, cplx z) {
    if (m.is_poly()) return pow_int(z, m.degree) + m.c;
    return m.a * std::exp(z);
}

// Df(z) = d z^{d-1} for polynomials, DE(z) = a e^z for exponentials.
inline cplx derivative_at(const MapSpec& m, cplx z) {
    if (m.is_poly()) return static_cast<double>(m.degree) * pow_int(z, m.degree - 1);
    return m.a * std::exp(z);
}

// log|Df(z)| evaluated without forming Df itself, so it neither overflows nor
// underflows before the orbit does: log d + (d-1) log|z|, or log|a| + Re z.
// Returns -inf exactly when the derivative vanishes (poly, z = 0).
inline double log_abs_derivative(const MapSpec& m, cplx z) {
    if (m.is_poly())
        return std::log(static_cast<double>(m.degree)) + (m.degree - 1) * std::log(std::abs(z));
    return std::log(std::abs(m.a)) + z.real();
}

// Marked point whose orbit the exponent statements are about.
inline cplx marked_point(const MapSpec& m) {
    return m.is_poly() ? m.c : cplx{0.0, 0.0};
}

// Escape threshold. For polynomials R = 1 + max(1, |c|), which satisfies
// |z| > R  =>  |f(z)| > |z| and the orbit tends to infinity. Exponentials use
// the Re z cutoff below instead (e^z overflows binary64 past ~709).
inline double escape_radius(const MapSpec& m) {
    if (!m.is_poly()) throw std::invalid_argument("escape_radius: polynomial family only");
    return 1.0 + std::max(1.0, std::abs(m.c));
}

inline constexpr double kExpEscapeRe = 700.0;

inline bool point_escaped(const MapSpec& m, cplx z) {
    if (m.is_poly()) return std::abs(z) > escape_radius(m);
    return z.real() > kExpEscapeRe;
}

inline std::string MapSpec::label() const {
    if (family == MapFamily::UnicriticalPoly)
        return "z^" + std::to_string(degree) + " + (" + std::to_string(c.real()) + "," +
               std::to_string(c.imag()) + ")";
    return "(" + std::to_string(a.real()) + "," + std::to_string(a.imag()) + ")*exp(z)";
}

} // namespace lyaplab
