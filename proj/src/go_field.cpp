#include "causticlab/go_field.hpp"

#include <algorithm>
#include <cstdio>

#include <boost/math/tools/roots.hpp>

#include "causticlab/errors.hpp"

namespace causticlab {

namespace {
const Complex I(0.0, 1.0);
}

Complex tau(Complex xi, Complex eta, const Point3& r, const BeamParams& p) {
    const Complex ia = I * p.alpha();
    const Complex a = xi + ia, b = eta + ia;
    const Complex zeta = std::sqrt(1.0 - xi * xi - eta * eta);
    return p.beta() * (a * a * a + b * b * b) / (3.0 * p.c) + (xi * r.x + eta * r.y + zeta * r.z) / p.c;
}

std::array<Complex, 2> tau_gradient(Complex xi, Complex eta, const Point3& r, const BeamParams& p) {
    const Complex ia = I * p.alpha();
    const Complex a = xi + ia, b = eta + ia;
    const Complex zeta = std::sqrt(1.0 - xi * xi - eta * eta);
    return {(p.beta() * a * a + r.x - r.z * xi / zeta) / p.c, (p.beta() * b * b + r.y - r.z * eta / zeta) / p.c};
}

namespace {

struct Residual {
    double f1, f2;
};
Residual stationarity(double xi, double eta, const Point3& r, double b) {
    const double zeta = std::sqrt(1 - xi * xi - eta * eta);
    return {b * xi * xi + r.x - r.z * xi / zeta, b * eta * eta + r.y - r.z * eta / zeta};
}

// Newton polish of a bracketed root; returns false if it wanders off.
bool polish(double& xi, double& eta, const Point3& r, double b, double& resid) {
    for (int it = 0; it < 30; ++it) {
        const double zeta2 = 1 - xi * xi - eta * eta;
        if (zeta2 <= 0) return false;
        const double zeta = std::sqrt(zeta2), z3 = zeta2 * zeta;
        const auto F = stationarity(xi, eta, r, b);
        resid = std::abs(F.f1) + std::abs(F.f2);
        const double a11 = 2 * b * xi - r.z * (1 - eta * eta) / z3;
        const double a22 = 2 * b * eta - r.z * (1 - xi * xi) / z3;
        const double a12 = -r.z * xi * eta / z3;
        const double det = a11 * a22 - a12 * a12;
        if (det == 0.0) return resid < 1e-13 * b;
        const double dx = (a22 * F.f1 - a12 * F.f2) / det, dy = (a11 * F.f2 - a12 * F.f1) / det;
        // damp steps that would leave the propagating disc
        double lam = 1.0;
        while (lam > 1e-3 && (xi - lam * dx) * (xi - lam * dx) + (eta - lam * dy) * (eta - lam * dy) >= 1.0) lam *= 0.5;
        xi -= lam * dx;
        eta -= lam * dy;
        if (std::abs(dx) + std::abs(dy) < 1e-16) break;
    }
    const auto F = stationarity(xi, eta, r, b);
    resid = std::abs(F.f1) + std::abs(F.f2);
    return std::isfinite(resid);
}

}  // namespace

RaySearch find_rays_to(const Point3& r, const BeamParams& p, const RaySearchOptions& opt) {
    p.require_symmetric();
    if (!(r.z > 0.0)) throw DomainError("ray search needs z > 0");
    const double b = p.beta();
    // For a fixed ray length s = z/zeta each stationarity equation is a quadratic,
    // b xi^2 - s xi + x = 0; the remaining condition s zeta(xi(s), eta(s)) = z is 1D.
    const double s_lo = std::max({r.z, 2 * std::sqrt(b * std::max(r.x, 0.0)), 2 * std::sqrt(b * std::max(r.y, 0.0))});
    const double s_hi = r.z / opt.zeta_min;
    std::vector<std::array<double, 2>> found;
    RaySearch out;
    if (s_hi > s_lo) {
        for (int ax : {1, -1}) {
            for (int ay : {1, -1}) {
                auto dirs = [&](double s, double& xi, double& eta) {
                    const double dx = std::max(s * s - 4 * b * r.x, 0.0), dy = std::max(s * s - 4 * b * r.y, 0.0);
                    xi = (s + ax * std::sqrt(dx)) / (2 * b);
                    eta = (s + ay * std::sqrt(dy)) / (2 * b);
                    return 1.0 - xi * xi - eta * eta;
                };
                auto g = [&](double u) {
                    const double s = s_lo + (s_hi - s_lo) * u * u;
                    double xi, eta;
                    const double t = dirs(s, xi, eta);
                    return t > 0 ? s * std::sqrt(t) - r.z : std::numeric_limits<double>::quiet_NaN();
                };
                auto accept = [&](double u) {
                    double xi, eta;
                    dirs(s_lo + (s_hi - s_lo) * u * u, xi, eta);
                    double resid;
                    if (polish(xi, eta, r, b, resid) && resid < 1e-9 * std::max(b, std::abs(r.z)))
                        found.push_back({xi, eta});
                };
                const int n = opt.samples;
                double u0 = 0.0, g0 = g(0.0);
                double gm1 = std::numeric_limits<double>::quiet_NaN();
                for (int i = 1; i <= n; ++i) {
                    const double u1 = double(i) / n, g1 = g(u1);
                    if (std::isfinite(g0) && std::isfinite(g1)) {
                        if (g0 == 0.0) {
                            accept(u0);
                        } else if ((g0 < 0) != (g1 < 0) && g1 != 0.0) {
                            boost::uintmax_t iters = 200;
                            auto br = boost::math::tools::toms748_solve(
                                g, u0, u1, g0, g1, boost::math::tools::eps_tolerance<double>(52), iters);
                            accept(0.5 * (br.first + br.second));
                        } else if (std::isfinite(gm1) && std::abs(g0) < std::abs(gm1) && std::abs(g0) < std::abs(g1) &&
                                   std::abs(g0) < 1e-3 * r.z) {
                            // touching minimum: two rays about to merge or just merged
                            accept(u0);
                        }
                    }
                    gm1 = g0;
                    u0 = u1;
                    g0 = g1;
                }
                if (g0 == 0.0) accept(1.0);
            }
        }
    }
    // dedupe and filter
    std::vector<std::array<double, 2>> uniq;
    for (const auto& f : found) {
        if (1 - f[0] * f[0] - f[1] * f[1] < opt.zeta_min * opt.zeta_min) continue;
        bool dup = false;
        for (const auto& u : uniq)
            if (std::hypot(u[0] - f[0], u[1] - f[1]) < opt.dedup_tol) dup = true;
        if (!dup) uniq.push_back(f);
    }
    std::sort(uniq.begin(), uniq.end(), [](const auto& a, const auto& c) {
        const double sa = a[0] + a[1], sc = c[0] + c[1];
        if (std::abs(sa - sc) > 1e-12) return sa < sc;
        return a[0] < c[0];
    });
    double minsep = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < uniq.size(); ++i)
        for (size_t j = i + 1; j < uniq.size(); ++j)
            minsep = std::min(minsep, std::hypot(uniq[i][0] - uniq[j][0], uniq[i][1] - uniq[j][1]));
    out.min_separation = minsep;
    out.near_caustic = minsep < opt.coalesce_tol;
    int idx = 0;
    for (const auto& u : uniq) {
        RaySolution s;
        s.index = ++idx;
        s.ray = make_ray(u[0], u[1], p);
        s.sigma = r.z / s.ray.zeta;
        s.tau = (b * (u[0] * u[0] * u[0] + u[1] * u[1] * u[1]) / 3.0 + u[0] * r.x + u[1] * r.y + s.ray.zeta * r.z) / p.c;
        const auto F = stationarity(u[0], u[1], r, b);
        s.residual = (std::abs(F.f1) + std::abs(F.f2)) / p.c;
        s.M0 = s.ray.species.M0;
        try {
            const auto m = maslov(s.ray, s.sigma, p);
            s.M = m.M;
            s.mu = m.mu;
            s.amplitude = go_amplitude(s, p);
        } catch (const OnCausticError&) {
            out.near_caustic = true;
            s.amplitude = std::numeric_limits<double>::quiet_NaN();
        }
        out.rays.push_back(s);
    }
    return out;
}

namespace {
bool at_caustic(double sigma, const std::optional<double>& sc, double scale) {
    return sc && std::abs(sigma - *sc) <= 1e-9 * scale;
}
int sgn(double v) { return (v > 0) - (v < 0); }
}  // namespace

Maslov maslov(const Ray& ray, double sigma, const BeamParams& p) {
    if (ray.evanescent) throw DomainError("evanescent ray has no Maslov index");
    if (sigma < 0) throw DomainError("Maslov index needs sigma >= 0");
    const double scale = std::max(std::abs(sigma), p.beta());
    if (at_caustic(sigma, ray.sigma_c1, scale) || at_caustic(sigma, ray.sigma_c2, scale))
        throw OnCausticError("ray sits on a caustic at this arc length");
    Maslov m;
    m.M0 = ray.species.M0;
    if (ray.sigma_c1 && ray.sigma_c2) {
        m.mu = sgn(sigma - *ray.sigma_c1) + sgn(sigma - *ray.sigma_c2);
    } else {
        // no real tangency: the pair of h's has the sign opposite to the Hessian eigenvalues
        const auto h = hessian_det(ray.xi, ray.eta, sigma * ray.zeta, p);
        m.mu = -sgn(h.eigen[0]) - sgn(h.eigen[1]);
    }
    m.M = m.mu / 2 + 1 - m.M0;
    return m;
}

Complex go_amplitude(const RaySolution& s, const BeamParams& p, AmplitudeForm form) {
    const Ray& ray = s.ray;
    const double b = p.beta(), k = p.k;
    const double scale = std::max(std::abs(s.sigma), b);
    if (at_caustic(s.sigma, ray.sigma_c1, scale) || at_caustic(s.sigma, ray.sigma_c2, scale))
        throw OnCausticError("GO amplitude is singular on the caustic");
    const double window = std::exp(k * p.alpha() * (ray.xp + ray.yp));
    if (form == AmplitudeForm::ray_tube) {
        if (std::abs(ray.xp) <= kExitFloor * b || std::abs(ray.yp) <= kExitFloor * b)
            throw ExitSingularError("exit point too close to the aperture axes for the ray-tube form");
        const Complex A0 = I * std::pow(b, 1.0 / 6) / (4 * kPi * std::cbrt(k)) * window /
                           (std::pow(-ray.xp, 0.25) * std::pow(-ray.yp, 0.25)) * std::exp(-I * (kPi * ray.species.M0 / 2));
        const double j0 = jacobian(ray.xi, ray.eta, 0.0, p), js = jacobian(ray.xi, ray.eta, s.sigma, p);
        return std::exp(-I * (kPi * s.M / 2)) * A0 * std::sqrt(std::abs(j0 / js));
    }
    const double omega = p.omega(), A = std::cbrt((b / p.c) * (b / p.c));
    const auto h = hessian_det(ray.xi, ray.eta, s.sigma * ray.zeta, p);
    return std::pow(omega, -1.0 / 3) * A / (2 * kPi) * std::exp(-I * (kPi * s.mu / 4)) / std::sqrt(std::abs(h.det)) *
           window;
}

Complex go_ray_term(const Ray& ray, double sigma, const BeamParams& p, AmplitudeForm form) {
    RaySolution s;
    s.ray = ray;
    s.sigma = sigma;
    const auto m = maslov(ray, sigma, p);
    s.M0 = m.M0;
    s.M = m.M;
    s.mu = m.mu;
    const Point3 r = ray_point(ray, sigma);
    const double b = p.beta();
    const double ctau = b * (ray.xi * ray.xi * ray.xi + ray.eta * ray.eta * ray.eta) / 3 + ray.xi * r.x +
                        ray.eta * r.y + ray.zeta * r.z;
    return go_amplitude(s, p, form) * std::exp(I * (p.k * ctau));
}

Complex asymptotic_aperture_field(double xp, double yp, const BeamParams& p) {
    if (!(xp < 0) || !(yp < 0)) throw DomainError("asymptotic aperture field needs x' < 0 and y' < 0");
    const double b = p.beta(), k = p.k;
    Complex sum = 0.0;
    for (int s = 1; s <= 4; ++s) {
        const auto sp = RaySpecies::from_index(s);
        const double psi = -2.0 * (sp.sx * std::pow(-xp, 1.5) + sp.sy * std::pow(-yp, 1.5)) / (3 * std::sqrt(b));
        const Complex A0 = I * std::pow(b, 1.0 / 6) / (4 * kPi * std::cbrt(k)) * std::exp(k * p.alpha() * (xp + yp)) /
                           (std::pow(-xp, 0.25) * std::pow(-yp, 0.25)) * std::exp(-I * (kPi * sp.M0 / 2));
        sum += A0 * std::exp(I * (k * psi));
    }
    return sum;
}

double normalized_separation(const RaySearch& s, const BeamParams& p) {
    return std::cbrt(p.k_beta_tilde() / 3.0) * s.min_separation;
}

GoResult go_field(const Point3& r, const BeamParams& p, const RaySearchOptions& opt) {
    const auto search = find_rays_to(r, p, opt);
    GoResult out;
    out.nrays = int(search.rays.size());
    out.near_caustic = search.near_caustic;
    out.in_layer = search.rays.size() > 1 && normalized_separation(search, p) < kLayerSeparation;
    if (out.near_caustic) throw OnCausticError("observation point is on or next to a caustic; use the canonical integral");
    for (const auto& s : search.rays) out.value += s.amplitude * std::exp(I * (p.k * p.c * s.tau));
    return out;
}

std::array<Complex, 2> complex_saddle(const Point3& r, const BeamParams& p, std::array<Complex, 2> v) {
    const double b = p.beta();
    for (int it = 0; it < 60; ++it) {
        const auto g = tau_gradient(v[0], v[1], r, p);
        const Complex zeta = std::sqrt(1.0 - v[0] * v[0] - v[1] * v[1]), z3 = zeta * zeta * zeta;
        const Complex ia = I * p.alpha();
        const Complex a11 = (2.0 * b * (v[0] + ia) - r.z * (1.0 - v[1] * v[1]) / z3) / p.c;
        const Complex a22 = (2.0 * b * (v[1] + ia) - r.z * (1.0 - v[0] * v[0]) / z3) / p.c;
        const Complex a12 = -r.z * v[0] * v[1] / z3 / p.c;
        const Complex det = a11 * a22 - a12 * a12;
        const Complex d0 = (a22 * g[0] - a12 * g[1]) / det, d1 = (a11 * g[1] - a12 * g[0]) / det;
        v[0] -= d0;
        v[1] -= d1;
        if (std::abs(d0) + std::abs(d1) < 1e-15) return v;
    }
    const auto g = tau_gradient(v[0], v[1], r, p);
    if (std::abs(g[0]) + std::abs(g[1]) > 1e-10 * b / p.c)
        throw ConvergenceError("complex saddle Newton did not converge");
    return v;
}

std::string ray_csv(const std::vector<RaySolution>& rays, double unit) {
    std::string out = "r,xi,eta,x_exit,y_exit,sigma,tau,M0,M,abs_amplitude,arg_amplitude\n";
    char buf[512];
    for (const auto& s : rays) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%d,%.17g,%.17g\n", s.index, s.ray.xi,
                      s.ray.eta, s.ray.xp / unit, s.ray.yp / unit, s.sigma / unit, s.tau / unit, s.M0, s.M,
                      std::abs(s.amplitude), std::arg(s.amplitude));
        out += buf;
    }
    return out;
}

}  // namespace causticlab
