#include "causticlab/rays.hpp"

#include <cstdio>

#include "causticlab/errors.hpp"
#include "causticlab/parallel.hpp"

namespace causticlab {

RaySpecies RaySpecies::from_index(int s) {
    static const int sx[4] = {1, 1, -1, -1}, sy[4] = {1, -1, 1, -1};
    if (s < 1 || s > 4) throw ArgumentError("ray species must be 1..4");
    return from_signs(sx[s - 1], sy[s - 1]);
}

RaySpecies RaySpecies::from_signs(int sx, int sy) {
    RaySpecies r;
    r.sx = sx >= 0 ? 1 : -1;
    r.sy = sy >= 0 ? 1 : -1;
    r.M0 = (r.sx < 0) + (r.sy < 0);
    r.s = r.sx > 0 ? (r.sy > 0 ? 1 : 2) : (r.sy > 0 ? 3 : 4);
    return r;
}

Ray make_ray(double xi, double eta, const BeamParams& p) {
    Ray r;
    r.species = RaySpecies::from_signs(xi < 0 ? -1 : 1, eta < 0 ? -1 : 1);
    r.xi = xi;
    r.eta = eta;
    r.xp = -p.beta() * xi * xi;
    r.yp = -p.beta() * eta * eta;
    const double t = 1.0 - xi * xi - eta * eta;
    if (t <= 0.0) {
        r.evanescent = true;
        r.zeta = 0.0;
        return r;
    }
    r.zeta = std::sqrt(t);
    const auto cd = caustic_distances(xi, eta, p);
    r.sigma_c1 = cd.sigma_c1;
    r.sigma_c2 = cd.sigma_c2;
    return r;
}

std::array<Ray, 4> exit_rays(double xp, double yp, const BeamParams& p) {
    if (!(xp < 0.0) || !(yp < 0.0)) throw DomainError("exit point needs x' < 0 and y' < 0");
    const double a = std::sqrt(-xp / p.beta()), b = std::sqrt(-yp / p.beta());
    std::array<Ray, 4> out;
    for (int s = 1; s <= 4; ++s) {
        const auto sp = RaySpecies::from_index(s);
        out[s - 1] = make_ray(sp.sx * a, sp.sy * b, p);
        // keep the exact inputs rather than -beta xi^2 round-off
        out[s - 1].xp = xp;
        out[s - 1].yp = yp;
    }
    return out;
}

Point3 ray_point(const Ray& ray, double sigma) {
    return {ray.xp + ray.xi * sigma, ray.yp + ray.eta * sigma, ray.zeta * sigma};
}

namespace {
double zeta_of(double xi, double eta) {
    const double t = 1.0 - xi * xi - eta * eta;
    if (!(t > 0.0)) throw DomainError("evanescent direction: xi^2 + eta^2 >= 1");
    return std::sqrt(t);
}

struct Cs {
    double c1, c2, c3;
};
Cs coefficients(double xi, double eta, double zeta) {
    const double z2 = zeta * zeta;
    return {1.0 / (z2 * z2), -2.0 * (xi * (1 - xi * xi) + eta * (1 - eta * eta)) / (z2 * zeta), 4.0 * xi * eta};
}
}  // namespace

double jacobian(double xi, double eta, double sigma, const BeamParams& p) {
    const double zeta = zeta_of(xi, eta), b = p.beta();
    const auto C = coefficients(xi, eta, zeta);
    return C.c1 * zeta * zeta * zeta * sigma * sigma + b * C.c2 * zeta * zeta * sigma + b * b * C.c3 * zeta;
}

double jacobian_matrix_det(double xi, double eta, double sigma, const BeamParams& p) {
    const double zeta = zeta_of(xi, eta), b = p.beta();
    const double m[3][3] = {{xi, sigma - 2 * b * xi, 0.0},
                            {eta, 0.0, sigma - 2 * b * eta},
                            {zeta, -sigma * xi / zeta, -sigma * eta / zeta}};
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

HessianInfo hessian_det(double xi, double eta, double z, const BeamParams& p) {
    const double zeta = zeta_of(xi, eta), b = p.beta(), c = p.c;
    const double z3 = zeta * zeta * zeta;
    HessianInfo h;
    const double a11 = (b / c) * (2 * xi - (z / b) * (1 - eta * eta) / z3);
    const double a22 = (b / c) * (2 * eta - (z / b) * (1 - xi * xi) / z3);
    const double a12 = -(z / c) * xi * eta / z3;
    h.entries = {a11, a22, a12};
    const auto C = coefficients(xi, eta, zeta);
    h.det = (C.c1 * z * z + C.c2 * b * z + C.c3 * b * b) / (c * c);
    const double tr = 0.5 * (a11 + a22), d = std::hypot(0.5 * (a11 - a22), a12);
    h.eigen = {tr - d, tr + d};
    return h;
}

CausticDistances caustic_distances(double xi, double eta, const BeamParams& p) {
    const double zeta = zeta_of(xi, eta), b = p.beta();
    const auto C = coefficients(xi, eta, zeta);
    CausticDistances out;
    const double disc = C.c2 * C.c2 - 4.0 * C.c1 * C.c3;
    if (disc < 0.0) return out;
    const double sq = std::sqrt(disc);
    // cancellation-free pair of roots of C1 t^2 + C2 t + C3 = 0
    const double q = -0.5 * (C.c2 + (C.c2 >= 0 ? sq : -sq));
    double t_plus, t_minus;
    if (q == 0.0) {
        t_plus = t_minus = 0.0;
    } else {
        const double r1 = q / C.c1, r2 = C.c3 / q;
        t_plus = std::max(r1, r2);
        t_minus = std::min(r1, r2);
    }
    out.z_c1 = b * t_plus;
    out.z_c2 = b * t_minus;
    out.sigma_c1 = *out.z_c1 / zeta;
    out.sigma_c2 = *out.z_c2 / zeta;
    return out;
}

std::array<double, 2> edge_exact(double theta_z, int which, const BeamParams& p) {
    if (!(theta_z >= 0.0 && theta_z < kPi / 2)) throw DomainError("edge angle must lie in [0, pi/2)");
    const double bt = p.beta_tilde(), s = std::sin(theta_z), c = std::cos(theta_z);
    if (which == 1) return {bt * s * s, bt * std::sin(2 * theta_z)};
    if (which == 2) return {bt * s * s * std::cos(2 * theta_z), bt * std::sin(2 * theta_z) * c * c};
    throw ArgumentError("caustic index must be 1 or 2");
}

double edge_z_of_x(double xt, int which, EdgeMode mode, const BeamParams& p) {
    const double bt = p.beta_tilde(), u = xt / bt;
    if (which != 1 && which != 2) throw ArgumentError("caustic index must be 1 or 2");
    const double umax = which == 1 ? 1.0 : 0.125;
    if (!(u >= 0.0 && u <= umax)) throw DomainError("edge of caustic " + std::to_string(which) + " does not reach x~/beta~ = " + std::to_string(u));
    if (mode == EdgeMode::approx)
        return which == 1 ? bt * 2 * std::sqrt(u) * (1 - u / 4) : bt * 2 * std::sqrt(u) * (1 - 1.5 * u);
    if (which == 1) return bt * 2 * std::sqrt(u) * std::sqrt(1 - u);
    const double q = (1 - std::sqrt(1 - 8 * u)) / 4;
    return bt * 2 * std::sqrt(q) * std::pow(1 - q, 1.5);
}

ParaxialCaustic paraxial_caustic(const Point3& r, const BeamParams& p, double tol) {
    const double b = p.beta(), q = r.z / (2 * b);
    ParaxialCaustic out;
    out.offset1 = r.x - b * q * q;
    out.offset2 = r.y - b * q * q;
    const auto t = to_tilde(r, p);
    out.axis_offset = t.xt - r.z * r.z / (4 * p.beta_tilde());
    const double scale = tol * std::max(b, std::abs(r.x) + std::abs(r.y));
    out.on_s1 = std::abs(out.offset1) <= scale && r.y / b >= q * q - tol;
    out.on_s2 = std::abs(out.offset2) <= scale && r.x / b >= q * q - tol;
    return out;
}

namespace {
// Symmetry-plane generator angle at which the edge of each caustic turns back.
double branch_split(int which) { return which == 1 ? 0.5 : 0.25; }
}  // namespace

std::vector<CausticSample> sample_caustic_surface(int which, const SurfaceGrid& grid, const BeamParams& p) {
    p.require_symmetric();
    if (which != 1 && which != 2) throw ArgumentError("caustic index must be 1 or 2");
    if (grid.n < 1) throw ArgumentError("surface grid needs n >= 1");
    const int n = grid.n;
    std::vector<std::vector<CausticSample>> rows(size_t(n) * grid.species.size());
    parallel_for(rows.size(), [&](size_t idx) {
        const auto sp = RaySpecies::from_index(grid.species[idx / n]);
        const int i = int(idx % n);
        const double a = n == 1 ? grid.lo : grid.lo + (grid.hi - grid.lo) * i / (n - 1);
        auto& row = rows[idx];
        for (int j = 0; j < n; ++j) {
            const double b = n == 1 ? grid.lo : grid.lo + (grid.hi - grid.lo) * j / (n - 1);
            const double xi = sp.sx * a, eta = sp.sy * b;
            if (xi * xi + eta * eta >= 1.0) continue;
            const auto cd = caustic_distances(xi, eta, p);
            const auto& zc = which == 1 ? cd.z_c1 : cd.z_c2;
            if (!zc || *zc < 0.0) continue;
            const Ray ray = make_ray(xi, eta, p);
            CausticSample s;
            s.which = which;
            s.branch = xi * xi + eta * eta < branch_split(which) ? 'A' : 'B';
            s.xi = xi;
            s.eta = eta;
            s.point = ray_point(ray, which == 1 ? *cd.sigma_c1 : *cd.sigma_c2);
            s.tilde = to_tilde(s.point, p);
            row.push_back(s);
        }
    });
    std::vector<CausticSample> out;
    for (auto& r : rows) out.insert(out.end(), r.begin(), r.end());
    return out;
}

std::vector<CausticSample> symmetry_plane_section(int which, int n, const BeamParams& p) {
    p.require_symmetric();
    std::vector<CausticSample> out;
    for (int i = 0; i < n; ++i) {
        // xi = eta = sin(theta)/sqrt2 sweeps theta over (0, pi/2) on both signs
        for (int sgn : {1, -1}) {
            const double th = (kPi / 2) * (i + 0.5) / n;
            const double xi = sgn * std::sin(th) / std::sqrt(2.0);
            const auto cd = caustic_distances(xi, xi, p);
            const auto& zc = which == 1 ? cd.z_c1 : cd.z_c2;
            if (!zc || *zc < 0.0) continue;
            const Ray ray = make_ray(xi, xi, p);
            CausticSample s;
            s.which = which;
            s.branch = 2 * xi * xi < branch_split(which) ? 'A' : 'B';
            s.xi = s.eta = xi;
            s.point = ray_point(ray, which == 1 ? *cd.sigma_c1 : *cd.sigma_c2);
            s.tilde = to_tilde(s.point, p);
            out.push_back(s);
        }
    }
    return out;
}

std::string caustic_csv(const std::vector<CausticSample>& samples, double unit) {
    std::string out = "which,branch,xi,eta,x,y,z,x_tilde,y_tilde\n";
    char buf[512];
    for (const auto& s : samples) {
        std::snprintf(buf, sizeof buf, "%d,%c,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", s.which, s.branch, s.xi,
                      s.eta, s.point.x / unit, s.point.y / unit, s.point.z / unit, s.tilde.xt / unit,
                      s.tilde.yt / unit);
        out += buf;
    }
    return out;
}

}  // namespace causticlab
