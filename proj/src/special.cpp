#include "causticlab/special.hpp"

#include <string>

#include "causticlab/errors.hpp"

namespace causticlab {
namespace {

constexpr double kMaclaurinRadius = 3.0;
constexpr double kAsymptoticRadius = 9.0;
constexpr double kTaylorStep = 0.5;

std::array<Complex, 2> maclaurin(Complex z) {
    if (z == Complex(0.0)) return {kAi0, kAip0};
    // Ai = Ai(0) f + Ai'(0) g with f, g the two even/odd-in-z^3 solutions.
    const Complex z3 = z * z * z;
    Complex f = 1.0, fp = 0.0, g = z, gp = 1.0;
    Complex a = 1.0, b = z;  // current terms of f and g
    for (int k = 0; k < 200; ++k) {
        a *= z3 / double((3 * k + 2) * (3 * k + 3));
        b *= z3 / double((3 * k + 3) * (3 * k + 4));
        f += a;
        g += b;
        // derivative terms: d/dz z^{3k+3} and z^{3k+4}
        fp += a * double(3 * k + 3) / z;
        gp += b * double(3 * k + 4) / z;
        if (std::abs(a) + std::abs(b) < 1e-18 * (std::abs(f) + std::abs(g))) break;
    }
    return {kAi0 * f + kAip0 * g, kAi0 * fp + kAip0 * gp};
}

// u_k coefficients of the large-argument expansions, with v_k.
struct AsymCoeffs {
    std::array<double, 40> u{}, v{};
    AsymCoeffs() {
        u[0] = v[0] = 1.0;
        for (int k = 1; k < 40; ++k) {
            u[k] = u[k - 1] * (6.0 * k - 5) * (6.0 * k - 3) * (6.0 * k - 1) / ((2.0 * k - 1) * 216.0 * k);
            v[k] = -u[k] * (6.0 * k + 1) / (6.0 * k - 1);
        }
    }
};
const AsymCoeffs& coeffs() {
    static const AsymCoeffs c;
    return c;
}

Complex checked(Complex v, Complex z) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw RangeError("Ai overflows double precision at z=(" + std::to_string(z.real()) + "," +
                         std::to_string(z.imag()) + ")");
    return v;
}

std::array<Complex, 2> asymptotic(Complex z) {
    const auto& c = coeffs();
    const double sqpi = std::sqrt(kPi);
    if (std::abs(std::arg(z)) <= 2.0 * kPi / 3.0) {
        const Complex zeta = 2.0 / 3.0 * std::pow(z, 1.5);
        Complex su = 0.0, sv = 0.0, p = 1.0;
        double last = 1e300;
        for (int k = 0; k < 40; ++k) {
            const double mag = std::abs(c.u[k] * p);
            if (mag > last) break;
            const double sgn = (k % 2) ? -1.0 : 1.0;
            su += sgn * c.u[k] * p;
            sv += sgn * c.v[k] * p;
            if (mag < 1e-17 * std::abs(su)) break;
            last = mag;
            p /= zeta;
        }
        if (-zeta.real() > 705.0) throw RangeError("Ai overflows double precision");
        const Complex e = std::exp(-zeta);
        const Complex q = std::pow(z, 0.25);
        return {e / (2.0 * sqpi * q) * su, -q * e / (2.0 * sqpi) * sv};
    }
    // oscillatory side: expansions of Ai(-w), Ai'(-w)
    const Complex w = -z;
    const Complex zeta = 2.0 / 3.0 * std::pow(w, 1.5);
    if (std::abs(zeta.imag()) > 705.0) throw RangeError("Ai overflows double precision");
    Complex se = 0.0, so = 0.0, te = 0.0, to = 0.0, p = 1.0;
    double last = 1e300;
    for (int k = 0; k < 40; ++k) {
        const double mag = std::abs(c.u[k] * p);
        if (mag > last) break;
        const double sgn = ((k / 2) % 2) ? -1.0 : 1.0;
        if (k % 2 == 0) {
            se += sgn * c.u[k] * p;
            te += sgn * c.v[k] * p;
        } else {
            so += sgn * c.u[k] * p;
            to += sgn * c.v[k] * p;
        }
        if (mag < 1e-17 * std::abs(se)) break;
        last = mag;
        p /= zeta;
    }
    const Complex ph = zeta - kPi / 4.0;
    const Complex cs = std::cos(ph), sn = std::sin(ph);
    const Complex q = std::pow(w, 0.25);
    return {(cs * se + sn * so) / (sqpi * q), q / sqpi * (sn * te - cs * to)};
}

// Integrate y'' = z y along a straight line from z0 to z1 by local Taylor series.
std::array<Complex, 2> taylor_walk(Complex z0, std::array<Complex, 2> y, Complex z1) {
    const Complex span = z1 - z0;
    const int steps = std::max(1, int(std::ceil(std::abs(span) / kTaylorStep)));
    const Complex h = span / double(steps);
    Complex a = z0;
    for (int s = 0; s < steps; ++s) {
        // d_n = c_n h^n; (n+2)(n+1) d_{n+2} = h^2 a d_n + h^3 d_{n-1}
        const Complex h2a = h * h * a, h3 = h * h * h;
        Complex dm1 = 0.0, d0 = y[0], d1 = y[1] * h;
        Complex val = d0 + d1, der = d1;
        for (int n = 0; n < 200; ++n) {
            const Complex d2 = (h2a * d0 + h3 * dm1) / double((n + 2) * (n + 1));
            val += d2;
            der += double(n + 2) * d2;
            dm1 = d0;
            d0 = d1;
            d1 = d2;
            if (n > 4 && std::abs(d0) + std::abs(d1) < 1e-19 * (std::abs(val) + std::abs(der)))
                break;
        }
        y = {val, der / h};
        a += h;
    }
    return y;
}

}  // namespace

std::array<Complex, 2> airy_ai_pair(Complex z) {
    const double r = std::abs(z);
    if (!(r <= kAiryMaxAbs)) throw RangeError("Ai argument outside |z| <= 1e4");
    if (r <= kMaclaurinRadius) return maclaurin(z);
    std::array<Complex, 2> out;
    if (r >= kAsymptoticRadius) {
        out = asymptotic(z);
    } else {
        // Walk in the direction in which Ai is dominant so errors shrink.
        const Complex dir = z / r;
        if (std::abs(std::arg(z)) <= kPi / 3.0) {
            const Complex za = dir * kAsymptoticRadius;
            out = taylor_walk(za, asymptotic(za), z);
        } else {
            const Complex zm = dir * kMaclaurinRadius;
            out = taylor_walk(zm, maclaurin(zm), z);
        }
    }
    checked(out[0], z);
    checked(out[1], z);
    return out;
}

Complex airy_ai(Complex z) { return airy_ai_pair(z)[0]; }

namespace detail {
std::vector<Complex> airy_derivs_any(Complex z, int n) {
    const auto p = airy_ai_pair(z);
    std::vector<Complex> d(std::max(n, 1) + 1);
    d[0] = p[0];
    d[1] = p[1];
    // Ai^(k+2) = z Ai^(k) + k Ai^(k-1)
    for (int k = 0; k + 2 <= n; ++k) d[k + 2] = z * d[k] + (k > 0 ? double(k) * d[k - 1] : Complex(0.0));
    d.resize(n + 1);
    return d;
}
}  // namespace detail

std::vector<Complex> airy_ai_derivs(Complex z, int n) {
    if (n < 0 || n > 12) throw ArgumentError("derivative order must lie in [0, 12]");
    return detail::airy_derivs_any(z, n);
}

}  // namespace causticlab
