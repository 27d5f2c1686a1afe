#include "causticlab/catastrophe.hpp"

#include <algorithm>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/factorials.hpp>

#include "causticlab/errors.hpp"

namespace causticlab {

namespace {
const Complex I(0.0, 1.0);

// u-bar, v-bar = c_u (x-bar/sqrt3 -/+ y-bar)
const double kCu = std::pow(1.5, 1.0 / 6) / std::sqrt(2.0);
// I(x-bar, y-bar) = kIScale Ai(u-bar) Ai(v-bar)
const double kIScale = std::pow(2.0, -1.0 / 3) * std::pow(3.0, -1.0 / 6);
}  // namespace

double hypumb_C0() { return std::cbrt(2.0) * std::pow(3.0, 1.0 / 6) / (kAi0 * kAi0); }

Point3 LocalFrame::origin(const BeamParams& p) const { return from_tilde({xt2, 0.0, z2}, p); }

Point3 LocalFrame::point(double x_hat, double y_hat, const BeamParams& p) const {
    return from_tilde({xt2 + std::cos(theta) * x_hat, y_hat, z2 + std::sin(theta) * x_hat}, p);
}

std::array<double, 3> LocalFrame::hat(const Point3& r, const BeamParams& p) const {
    const auto t = to_tilde(r, p);
    const double c = std::cos(theta), s = std::sin(theta);
    const double dx = t.xt - xt2, dz = t.z - z2;
    return {c * dx + s * dz, t.yt, -s * dx + c * dz};
}

LocalFrame local_frame(double theta, const BeamParams& p) {
    p.require_symmetric();
    if (!(theta >= 0.0 && theta < kPi / 2)) throw DomainError("frame angle must lie in [0, pi/2)");
    LocalFrame f;
    const double bt = p.beta_tilde(), at = p.alpha_tilde(), cw = p.c;
    const double s = std::sin(theta), c = std::cos(theta);
    f.theta = theta;
    f.beta_tilde = bt;
    f.k_beta_tilde = p.k_beta_tilde();
    f.c = cw;
    f.xt2 = bt * s * s * std::cos(2 * theta);
    f.z2 = bt * std::sin(2 * theta) * c * c;
    f.tau_a = 2 * bt * s * (1 - 4 * s * s / 3) / cw;
    f.delta_hat = 2 * bt * s * s * s;
    f.D1 = c * (5 * c * c - 3) / 6;
    f.D2 = c * (1 + c * c) / 2;
    f.tau_a_alpha = f.tau_a + bt * (I * at * s * s - at * at * s - I * at * at * at / 3.0) / cw;
    f.delta_hat_alpha = f.delta_hat + bt * (I * at + I * at * c * c + at * at * s);
    f.D1_alpha = f.D1 - I * at * s * c;
    f.D2_alpha = f.D2 - I * at * s * c;
    f.epsilon = bt * (I * at + at * at * s / 2 - I * at * s * s / 2.0);
    f.x_shift = bt * (I * at * std::sin(2 * theta) - at * at * c);
    return f;
}

LocalFrame frame_for_range(double z, const BeamParams& p) {
    const double bt = p.beta_tilde();
    auto z2 = [&](double t) { return bt * std::sin(2 * t) * std::cos(t) * std::cos(t); };
    // the smooth edge climbs to its highest point at theta = pi/6 and turns back
    const double top = kPi / 6;
    if (!(z >= 0.0)) throw RangeError("range must be non-negative");
    if (z > z2(top))
        throw RangeError("z = " + std::to_string(z / bt) +
                         " beta~ lies beyond the termination of the beam axis (the smooth edge ends at z = " +
                         std::to_string(z2(top) / bt) + " beta~)");
    double lo = 0.0, hi = top;
    for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
        const double mid = 0.5 * (lo + hi);
        (z2(mid) < z ? lo : hi) = mid;
    }
    return local_frame(0.5 * (lo + hi), p);
}

CanonicalArgs normalize_coords(const LocalFrame& f, double x_hat, double y_hat) {
    if (f.D1 <= 0.0) throw DomainError("frame angle beyond the hyperbolic-umbilic regime (D1 <= 0)");
    const double kb = f.k_beta_tilde, bt = f.beta_tilde;
    const double k13 = std::cbrt(kb), k23 = k13 * k13;
    CanonicalArgs a;
    a.x_bar = k23 * std::pow(f.D1_alpha, -1.0 / 3) * (x_hat + f.x_shift) / bt;
    a.y_bar = k23 * std::pow(f.D1_alpha, 1.0 / 6) * std::pow(f.D2_alpha, -0.5) * y_hat / bt;
    a.delta_bar = k13 * std::pow(f.D1_alpha, 1.0 / 3) / f.D2_alpha * f.delta_hat_alpha / (2 * bt);
    a.epsilon_bar = k13 * std::pow(f.D1_alpha, -2.0 / 3) * f.epsilon / bt;
    return a;
}

double x_hat_unit(const LocalFrame& f) {
    return f.beta_tilde * std::pow(f.k_beta_tilde, -2.0 / 3) * std::cbrt(f.D1);
}

double y_hat_unit(const LocalFrame& f) {
    return f.beta_tilde * std::pow(f.k_beta_tilde, -2.0 / 3) * std::pow(f.D1, -1.0 / 6) * std::sqrt(f.D2);
}

Complex hypumb_series(const CanonicalArgs& a, int P, int M, SeriesInfo* info) {
    if (P < 0 || P > 5 || M < 0 || M > 5) throw ArgumentError("series orders P, M must lie in [0, 5]");
    if (info) info->outside_regime = std::abs(a.delta_bar) > 0.3 || std::abs(a.epsilon_bar) > 0.3;
    const double r3 = std::sqrt(3.0);
    const Complex u = kCu * (a.x_bar / r3 - a.y_bar), v = kCu * (a.x_bar / r3 + a.y_bar);
    const int N = 2 * (P + M);
    const auto du = detail::airy_derivs_any(u, N), dv = detail::airy_derivs_any(v, N);
    using boost::math::binomial_coefficient;
    Complex total = 0.0, epow = 1.0;
    for (int p = 0; p <= P; ++p, epow *= a.epsilon_bar) {
        Complex dpow = 1.0;
        for (int m = 0; m <= M; ++m, dpow *= a.delta_bar) {
            // d_x^{2p} d_y^{2m} [Ai(u) Ai(v)] through d_x = (c_u/sqrt3)(d_u + d_v), d_y = c_u(d_v - d_u)
            Complex s = 0.0;
            for (int i = 0; i <= 2 * p; ++i)
                for (int j = 0; j <= 2 * m; ++j)
                    s += binomial_coefficient<double>(2 * p, i) * binomial_coefficient<double>(2 * m, j) *
                         ((j % 2) ? -1.0 : 1.0) * du[i + j] * dv[2 * p + 2 * m - i - j];
            const double scale = std::pow(kCu / r3, 2 * p) * std::pow(kCu, 2 * m) * kIScale;
            const Complex coef = std::pow(-I, p + m) / (boost::math::factorial<double>(p) * boost::math::factorial<double>(m));
            total += coef * epow * dpow * scale * s;
        }
    }
    return hypumb_C0() * total;
}

namespace {

struct GL {
    std::array<double, 32> x, w;
    GL() {
        using G = boost::math::quadrature::gauss<double, 32>;
        const auto& a = G::abscissa();
        const auto& wt = G::weights();
        for (int i = 0; i < 16; ++i) {
            x[2 * i] = a[i];
            x[2 * i + 1] = -a[i];
            w[2 * i] = w[2 * i + 1] = wt[i];
        }
    }
};
const GL& gl() {
    static const GL g;
    return g;
}

// Composite 32-point Gauss-Legendre along the straight path A -> B.
template <class F>
Complex path_panels(F& f, Complex A, Complex B, int n, long& evals) {
    const auto& g = gl();
    const Complex h = (B - A) / double(n);
    Complex sum = 0.0;
    for (int k = 0; k < n; ++k) {
        const Complex mid = A + h * (k + 0.5), half = 0.5 * h;
        Complex ps = 0.0;
        for (int i = 0; i < 32; ++i) ps += g.w[i] * f(mid + half * g.x[i]);
        sum += ps * half;
    }
    evals += 32L * n;
    return sum;
}

template <class F>
Complex path_adaptive(F& f, Complex A, Complex B, int n, double tol, long& evals) {
    Complex prev = path_panels(f, A, B, n, evals);
    for (; n <= 8192; n *= 2) {
        const Complex next = path_panels(f, A, B, 2 * n, evals);
        if (std::abs(next - prev) <= tol) return next;
        prev = next;
    }
    throw ConvergenceError("contour panel refinement did not converge");
}

// Integral over the cubic valley contour: in along arg 5pi/6, across Im t = h
// between -r and r, out along arg pi/6. freq bounds the phase derivative on the segment.
template <class F>
Complex valley_integral(F& f, double r, double h, double freq, double tol, long& evals) {
    const Complex e1 = std::polar(1.0, kPi / 6), e5 = std::polar(1.0, 5 * kPi / 6);
    const Complex Sp(r, h), Sm(-r, h);
    auto reach = [&](Complex S, Complex e) {
        double T = 1.0;
        while (T < 60.0 && std::abs(f(S + T * e)) > 1e-18) T *= 1.4;
        return 1.1 * T;
    };
    const double Tp = reach(Sp, e1), Tm = reach(Sm, e5);
    const int nseg = std::max(2, int(std::ceil(2 * r * freq / (2 * kPi * 5))));
    Complex total = path_adaptive(f, Sm + Tm * e5, Sm, std::max(2, int(std::ceil(Tm))), tol / 3, evals);
    total += path_adaptive(f, Sm, Sp, nseg, tol / 3, evals);
    total += path_adaptive(f, Sp, Sp + Tp * e1, std::max(2, int(std::ceil(Tp))), tol / 3, evals);
    return total;
}

}  // namespace

Complex cubic_integral(Complex b, Complex eps, double tol, long* evals) {
    long n = 0;
    auto f = [&](Complex t) { return std::exp(I * (t * t * t + eps * t * t + b * t)); };
    const double br = (b - eps * eps / 3.0).real();
    const double h = std::sqrt(std::max(br, 0.0) / 3);
    const double r = std::sqrt(std::max(-br, 0.0) / 3) + 1.5;
    const double freq = 3 * r * r + std::abs(b) + 2 * std::abs(eps) * r;
    const Complex out = valley_integral(f, r, h, freq, tol, n);
    if (evals) *evals += n;
    return out;
}

Complex hypumb_quadrature(const CanonicalArgs& a, double target, QuadInfo* info) {
    if (std::abs(a.x_bar) > 50 || std::abs(a.y_bar) > 50) throw RangeError("quadrature needs |x-bar|, |y-bar| <= 50");
    long evals = 0;
    const double xr = a.x_bar.real();
    // K(x + eta^2) ~ Ai of a growing argument; beyond L it is below 1e-17
    const double L = std::sqrt(std::max(23.0 - xr, 1.0)) + 0.5;
    const double freq = std::abs(a.y_bar) + 1.2 * std::max(-xr, 0.0) + 2 * std::abs(a.delta_bar) * L + 2;
    int n = std::max(2, int(std::ceil(L * freq / (2 * kPi * 5))));
    const auto& g = gl();
    auto outer = [&](int panels) {
        // even in eta: integrate over [0, L] with cos(eta y)
        const double h = L / panels;
        Complex sum = 0.0;
        for (int k = 0; k < panels; ++k) {
            const double mid = h * (k + 0.5);
            for (int i = 0; i < 32; ++i) {
                const double eta = mid + 0.5 * h * g.x[i];
                const Complex K = cubic_integral(a.x_bar + eta * eta, a.epsilon_bar, 1e-14, &evals);
                sum += g.w[i] * 0.5 * h * 2.0 * std::cos(eta * a.y_bar) * std::exp(I * a.delta_bar * eta * eta) * K;
            }
        }
        return hypumb_C0() / (4 * kPi * kPi) * sum;
    };
    Complex prev = outer(n);
    for (; n <= 2048; n *= 2) {
        const Complex next = outer(2 * n);
        const double change = std::abs(next - prev);
        if (info) {
            info->outer_panels = 2 * n;
            info->last_change = change;
            info->evaluations = evals;
        }
        if (change <= target * std::max(std::abs(next), 1e-3)) return next;
        prev = next;
    }
    throw ConvergenceError("hyperbolic-umbilic quadrature did not reach the target " + std::to_string(target) +
                           " (last change " + std::to_string(info ? info->last_change : 0.0) + ")");
}

Complex hypumb_stationary_phase(const CanonicalArgs& a, int* nsaddles) {
    const double x = a.x_bar.real(), y = a.y_bar.real(), d = a.delta_bar.real();
    if (std::abs(a.epsilon_bar) != 0.0 || a.x_bar.imag() != 0 || a.y_bar.imag() != 0 || a.delta_bar.imag() != 0)
        throw DomainError("stationary phase implemented for real arguments with epsilon = 0");
    // grad Phi = 0: 3 xi^2 + eta^2 + x = 0, 2 eta (xi + d) + y = 0
    std::vector<std::array<double, 2>> pts;
    if (y == 0.0) {
        if (x < 0) {
            pts.push_back({std::sqrt(-x / 3), 0.0});
            pts.push_back({-std::sqrt(-x / 3), 0.0});
        }
        const double e2 = -x - 3 * d * d;
        if (e2 > 0) {
            pts.push_back({-d, std::sqrt(e2)});
            pts.push_back({-d, -std::sqrt(e2)});
        }
    } else {
        // (3 xi^2 + x) 4 (xi + d)^2 + y^2 = 0, Durand-Kerner on the monic quartic
        const double c4 = 12, c3 = 24 * d, c2 = 12 * d * d + 4 * x, c1 = 8 * x * d, c0 = 4 * x * d * d + y * y;
        auto poly = [&](Complex t) { return (((t + c3 / c4) * t + c2 / c4) * t + c1 / c4) * t + c0 / c4; };
        std::array<Complex, 4> z;
        for (int i = 0; i < 4; ++i) z[i] = std::pow(Complex(0.4, 0.9), i) * (1.0 + std::abs(x) + std::abs(d));
        for (int it = 0; it < 500; ++it) {
            for (int i = 0; i < 4; ++i) {
                Complex den = 1.0;
                for (int j = 0; j < 4; ++j)
                    if (j != i) den *= z[i] - z[j];
                z[i] -= poly(z[i]) / den;
            }
        }
        for (const auto& t : z)
            if (std::abs(t.imag()) < 1e-9 * (1 + std::abs(t))) pts.push_back({t.real(), -y / (2 * (t.real() + d))});
    }
    Complex sum = 0.0;
    for (const auto& s : pts) {
        const double xi = s[0], eta = s[1];
        const double phi = xi * xi * xi + xi * eta * eta + xi * x + eta * y + eta * eta * d;
        const double hxx = 6 * xi, hyy = 2 * xi + 2 * d, hxy = 2 * eta;
        const double det = hxx * hyy - hxy * hxy;
        const double tr = hxx + hyy;
        const int sig = det < 0 ? 0 : (tr > 0 ? 2 : -2);
        sum += 2 * kPi / std::sqrt(std::abs(det)) * std::exp(I * (phi + kPi * sig / 4));
    }
    if (nsaddles) *nsaddles = int(pts.size());
    return hypumb_C0() / (4 * kPi * kPi) * sum;
}

CanonicalResult canonical_field_hat(const LocalFrame& f, double x_hat, double y_hat, const CanonicalOptions& opt) {
    CanonicalResult out;
    out.args = normalize_coords(f, x_hat, y_hat);
    out.outside_layer = std::abs(out.args.x_bar) > opt.layer_limit || std::abs(out.args.y_bar) > opt.layer_limit;
    Complex ubar;
    if (opt.evaluator == Evaluator::series) {
        SeriesInfo si;
        ubar = hypumb_series(out.args, opt.P, opt.M, &si);
        out.outside_series_regime = si.outside_regime;
    } else {
        ubar = hypumb_quadrature(out.args, opt.quad_target);
    }
    const Complex Abar = std::cbrt(2.0) * std::pow(f.D1_alpha, -1.0 / 6) * std::pow(f.D2_alpha, -0.5) / hypumb_C0();
    const double omega = f.k_beta_tilde / f.beta_tilde * f.c;
    out.value = Abar * std::exp(I * omega * f.tau_a_alpha) * ubar * std::cos(f.theta);
    return out;
}

CanonicalResult canonical_field(const Point3& r, const BeamParams& p, const CanonicalOptions& opt) {
    p.require_symmetric();
    const auto t = to_tilde(r, p);
    const double bt = p.beta_tilde();
    // frame angle putting r on the z^ = 0 plane
    auto g = [&](double th) {
        const double s = std::sin(th), c = std::cos(th);
        return -s * (t.xt - bt * s * s * std::cos(2 * th)) + c * (t.z - bt * std::sin(2 * th) * c * c);
    };
    const double top = kPi / 6;
    double lo = 0.0, hi = -1.0;
    const int n = 256;
    double glo = g(0.0);
    for (int i = 1; i <= n; ++i) {
        const double th = top * i / n, gv = g(th);
        if ((glo > 0) != (gv > 0)) {
            lo = top * (i - 1) / n;
            hi = th;
            break;
        }
        glo = gv;
    }
    if (hi < 0) throw RegionError("point is not near the beam axis: no edge frame passes through it");
    for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
        const double mid = 0.5 * (lo + hi);
        ((g(mid) > 0) == (g(lo) > 0) ? lo : hi) = mid;
    }
    const auto f = local_frame(0.5 * (lo + hi), p);
    const auto h = f.hat(r, p);
    return canonical_field_hat(f, h[0], h[1], opt);
}

Offset pe_offset_xbar(double theta, const BeamParams& p) {
    const auto f = local_frame(theta, p);
    const double bt = f.beta_tilde, kb = f.k_beta_tilde;
    Offset o;
    o.formula = -std::cbrt(3.0) * std::pow(kb, 2.0 / 3) * std::pow(theta, 4);
    // paraxial axis x~ = z^2/4beta~ meets the line (x~2 + c x^, z2 + s x^)
    const double s = std::sin(theta), c = std::cos(theta);
    const double A = s * s / (4 * bt), B = f.z2 * s / (2 * bt) - c, C = f.z2 * f.z2 / (4 * bt) - f.xt2;
    const double q = -0.5 * (B + (B >= 0 ? 1 : -1) * std::sqrt(B * B - 4 * A * C));
    const double xh = C / q;
    o.exact = normalize_coords(local_frame(theta, BeamParams::from_tilde(kb, 0.0, bt, p.c)), xh, 0.0).x_bar.real();
    return o;
}

double caustic1_offset_xbar(double theta, const BeamParams& p) {
    const auto f = local_frame(theta, p);
    const double bt = f.beta_tilde, s = std::sin(theta), c = std::cos(theta);
    if (theta == 0.0) return 0.0;
    auto g = [&](double t) { return -s * (bt * std::sin(t) * std::sin(t) - f.xt2) + c * (bt * std::sin(2 * t) - f.z2); };
    double lo = 0.0, hi = theta;
    for (int i = 0; i < 200 && hi - lo > 1e-17; ++i) {
        const double mid = 0.5 * (lo + hi);
        ((g(mid) > 0) == (g(lo) > 0) ? lo : hi) = mid;
    }
    const double t1 = 0.5 * (lo + hi);
    const double xh = c * (bt * std::sin(t1) * std::sin(t1) - f.xt2) + s * (bt * std::sin(2 * t1) - f.z2);
    return normalize_coords(local_frame(theta, BeamParams::from_tilde(f.k_beta_tilde, 0.0, bt, p.c)), xh, 0.0)
        .x_bar.real();
}

AltForm to_alternative_form(const CanonicalArgs& a) {
    if (a.epsilon_bar != Complex(0.0)) throw UnsupportedTransformError("alternative form needs epsilon-bar = 0");
    if (a.x_bar.imag() != 0 || a.y_bar.imag() != 0 || a.delta_bar.imag() != 0)
        throw UnsupportedTransformError("alternative form implemented for real arguments");
    const double x = a.x_bar.real(), y = a.y_bar.real(), d = a.delta_bar.real();
    const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0);
    AltForm f;
    const double p1 = x + 3 * d * d / 4, p2 = r3 * y;
    f.x_check = std::pow(2.0, -1.0 / 6) * (p1 - p2) / r2;
    f.y_check = std::pow(2.0, -1.0 / 6) * (p1 + p2) / r2;
    f.delta_check = -3 * d / std::cbrt(2.0);
    const double m = std::pow(2.0, 1.0 / 6) / r2;
    f.map = {m, -m / r3, m, m / r3};
    f.shift = {m * d / 2, m * d / 2};
    f.jacobian = r3 / std::cbrt(2.0);
    f.omitted_phase = -(d * x / 2 + d * d * d / 8);
    return f;
}

Complex alt_form_quadrature(const AltForm& f, double tol) {
    long evals = 0;
    const double d = f.delta_check;
    // inner xi integral is K(x + d eta); outer eta along its own valley contour
    auto outer = [&](Complex eta) {
        return std::exp(I * (eta * eta * eta + f.y_check * eta)) * cubic_integral(f.x_check + d * eta, 0.0, tol * 1e-2, &evals);
    };
    const double yr = f.y_check;
    const double h = std::sqrt(std::max(yr, 0.0) / 3);
    const double r = std::sqrt(std::max(-yr, 0.0) / 3) + 1.5;
    const double freq = 3 * r * r + std::abs(yr) + std::abs(d) * (std::abs(f.x_check) + 3) + 2;
    const Complex J = valley_integral(outer, r, h, freq, tol, evals);
    return hypumb_C0() / (4 * kPi * kPi) * f.jacobian * std::exp(I * f.omitted_phase) * J;
}

std::string evaluator_name(Evaluator e) { return e == Evaluator::series ? "series" : "quadrature"; }

Evaluator parse_evaluator(const std::string& s) {
    if (s == "series") return Evaluator::series;
    if (s == "quadrature") return Evaluator::quadrature;
    throw ConfigError("unknown evaluator '" + s + "' (series|quadrature)");
}

}  // namespace causticlab
