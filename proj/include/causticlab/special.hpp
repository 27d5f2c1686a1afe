#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <vector>

namespace causticlab {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kAi0 = 0.355028053887817239260;
inline constexpr double kAip0 = -0.258819403792806798405;

// Largest |z| accepted by the Airy routines.
inline constexpr double kAiryMaxAbs = 1.0e4;

Complex airy_ai(Complex z);

// Ai and Ai' together; the building block for everything else here.
std::array<Complex, 2> airy_ai_pair(Complex z);

// [Ai, Ai', ..., Ai^(n)] for 0 <= n <= 12.
std::vector<Complex> airy_ai_derivs(Complex z, int n);

namespace detail {
// Same as airy_ai_derivs without the order cap (series engine needs up to 2(P+M)).
std::vector<Complex> airy_derivs_any(Complex z, int n);
}

// R_phi v with R_phi = [[cos, sin], [-sin, cos]].
template <class T>
std::array<T, 2> rotate2(double phi, const std::array<T, 2>& v) {
    const double c = std::cos(phi), s = std::sin(phi);
    return {c * v[0] + s * v[1], -s * v[0] + c * v[1]};
}

}  // namespace causticlab
