#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "causticlab/errors.hpp"
#include "causticlab/go_field.hpp"

using namespace causticlab;

namespace {
const BeamParams P = BeamParams::from_tilde(1e4, 0.0);

// random direction of a given species inside the unit disk
std::array<double, 2> draw(std::mt19937& rng, int s) {
    std::uniform_real_distribution<double> u(0.02, 0.68);
    const auto sp = RaySpecies::from_index(s);
    return {sp.sx * u(rng), sp.sy * u(rng)};
}

double det3(const double m[3][3]) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}
}  // namespace

TEST_CASE("exit rays") {
    const double b = P.beta();
    const auto r = exit_rays(-0.01 * b, -0.04 * b, P);
    CHECK(r[1].species.s == 2);
    CHECK(r[1].xi == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(r[1].eta == doctest::Approx(-0.2).epsilon(1e-14));
    const auto e = exit_rays(-b, -b, P);
    CHECK(e[0].evanescent);
    CHECK_THROWS_AS(exit_rays(0.0, -b, P), DomainError);
    CHECK_THROWS_AS(exit_rays(-b, 1e-3, P), DomainError);
    std::mt19937 rng(1);
    for (int i = 0; i < 1000; ++i) {
        const auto d = draw(rng, 1 + i % 4);
        const double xp = -b * d[0] * d[0], yp = -b * d[1] * d[1];
        for (const auto& ray : exit_rays(xp, yp, P)) {
            CHECK(std::abs(-b * ray.xi * ray.xi - xp) <= 1e-12 * b);
            CHECK(std::abs(-b * ray.eta * ray.eta - yp) <= 1e-12 * b);
        }
    }
}

TEST_CASE("ray points") {
    std::mt19937 rng(2);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        const auto d = draw(rng, 1 + i % 4);
        const auto ray = make_ray(d[0], d[1], P);
        const auto r0 = ray_point(ray, 0.0);
        CHECK(r0.x == ray.xp);
        CHECK(r0.z == 0.0);
        const double s = u(rng);
        const auto r = ray_point(ray, s);
        const double sig = r.z / ray.zeta;
        CHECK(std::abs(ray.xp + ray.xi * r.z / ray.zeta - r.x) < 1e-12);
        CHECK(std::abs(ray.yp + ray.eta * sig - r.y) < 1e-12);
    }
}

TEST_CASE("jacobian against a finite-difference ray map") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0.05, 2.0);
    const double h = 1e-6;
    int n = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto d = draw(rng, 1 + i % 4);
        const double s = u(rng);
        auto map = [&](double xi, double eta, double sg) { return ray_point(make_ray(xi, eta, P), sg); };
        const auto ax = map(d[0] + h, d[1], s), bx = map(d[0] - h, d[1], s);
        const auto ay = map(d[0], d[1] + h, s), by = map(d[0], d[1] - h, s);
        const auto as = map(d[0], d[1], s + h), bs = map(d[0], d[1], s - h);
        // columns d/d sigma, d/d xi, d/d eta
        const double m[3][3] = {{(as.x - bs.x) / (2 * h), (ax.x - bx.x) / (2 * h), (ay.x - by.x) / (2 * h)},
                                {(as.y - bs.y) / (2 * h), (ax.y - bx.y) / (2 * h), (ay.y - by.y) / (2 * h)},
                                {(as.z - bs.z) / (2 * h), (ax.z - bx.z) / (2 * h), (ay.z - by.z) / (2 * h)}};
        const double fd = det3(m), J = jacobian(d[0], d[1], s, P);
        const double scale = std::abs(J) + 1e-3 * P.beta() * P.beta();
        CHECK(std::abs(fd - J) <= 1e-6 * scale);
        const double md = jacobian_matrix_det(d[0], d[1], s, P);
        if (std::abs(J) > 1e-6) {
            CHECK(std::abs(md - J) <= 1e-10 * std::abs(J));
            ++n;
        }
    }
    CHECK(n > 900);
    const double xi = 0.3, eta = -0.2, zeta = std::sqrt(1 - xi * xi - eta * eta);
    CHECK(jacobian(xi, eta, 0.0, P) == doctest::Approx(P.beta() * P.beta() * 4 * xi * eta * zeta).epsilon(1e-14));
    CHECK_THROWS_AS(jacobian(0.8, 0.7, 1.0, P), DomainError);
}

TEST_CASE("hessian") {
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> u(0.05, 2.0);
    for (int i = 0; i < 1000; ++i) {
        const auto d = draw(rng, 1 + i % 4);
        const double s = u(rng), zeta = std::sqrt(1 - d[0] * d[0] - d[1] * d[1]);
        const double H = hessian_det(d[0], d[1], s * zeta, P).det, J = jacobian(d[0], d[1], s, P);
        CHECK(std::abs(H * zeta * P.c * P.c - J) <= 1e-10 * std::max(std::abs(J), 1e-12));
    }
    const auto z0 = hessian_det(0.3, 0.3, 0.0, P);
    CHECK(z0.det == doctest::Approx(4 * 0.09 * P.beta() * P.beta()).epsilon(1e-14));
    // second differences of tau at a fixed point
    const Point3 r{0.013, -0.02, 0.4};
    const double xi = 0.21, eta = 0.17, h = 1e-4;
    auto t = [&](double a, double b) { return tau(a, b, r, P).real(); };
    const double fxx = (t(xi + h, eta) - 2 * t(xi, eta) + t(xi - h, eta)) / (h * h);
    const double fyy = (t(xi, eta + h) - 2 * t(xi, eta) + t(xi, eta - h)) / (h * h);
    const double fxy = (t(xi + h, eta + h) - t(xi + h, eta - h) - t(xi - h, eta + h) + t(xi - h, eta - h)) / (4 * h * h);
    const auto he = hessian_det(xi, eta, r.z, P).entries;
    CHECK(fxx == doctest::Approx(he[0]).epsilon(1e-6));
    CHECK(fyy == doctest::Approx(he[1]).epsilon(1e-6));
    CHECK(fxy == doctest::Approx(he[2]).epsilon(1e-6));
}

TEST_CASE("caustic distances") {
    std::mt19937 rng(5);
    const double b = P.beta();
    for (int s = 1; s <= 4; ++s) {
        int real = 0;
        for (int i = 0; i < 1000; ++i) {
            const auto d = draw(rng, s);
            const auto cd = caustic_distances(d[0], d[1], P);
            if (!cd.z_c1) continue;
            ++real;
            const double zeta = std::sqrt(1 - d[0] * d[0] - d[1] * d[1]);
            const double C1 = 1 / std::pow(zeta, 4);
            const double C2 = -2 * (d[0] * (1 - d[0] * d[0]) + d[1] * (1 - d[1] * d[1])) / std::pow(zeta, 3);
            const double C3 = 4 * d[0] * d[1];
            for (double z : {*cd.z_c1 / b, *cd.z_c2 / b}) {
                const double scale = C1 * z * z + std::abs(C2 * z) + std::abs(C3);
                CHECK(std::abs(C1 * z * z + C2 * z + C3) <= 1e-10 * scale);
            }
            CHECK(*cd.z_c1 >= *cd.z_c2);
            if (s == 1) {
                CHECK(*cd.sigma_c1 >= 0);
                CHECK(*cd.sigma_c2 >= 0);
            } else if (s == 4) {
                CHECK(*cd.sigma_c1 <= 0);
                CHECK(*cd.sigma_c2 <= 0);
            } else {
                CHECK(*cd.sigma_c1 >= 0);
                CHECK(*cd.sigma_c2 <= 0);
            }
            for (double sg : {*cd.sigma_c1, *cd.sigma_c2})
                CHECK(std::abs(jacobian(d[0], d[1], sg, P)) <= 1e-9 * b * b);
        }
        CHECK(real > 100);
    }
    // symmetric-plane rays touch the edges
    for (double th : {0.05, 0.2, 0.4}) {
        const double a = std::sin(th) / std::sqrt(2.0);
        const auto ray = make_ray(a, a, P);
        const auto cd = caustic_distances(a, a, P);
        const auto t1 = to_tilde(ray_point(ray, *cd.sigma_c1), P);
        const auto e1 = edge_exact(th, 1, P);
        CHECK(t1.xt == doctest::Approx(e1[0]).epsilon(1e-10));
        CHECK(t1.z == doctest::Approx(e1[1]).epsilon(1e-10));
        const auto t2 = to_tilde(ray_point(ray, *cd.sigma_c2), P);
        const auto e2 = edge_exact(th, 2, P);
        CHECK(t2.xt == doctest::Approx(e2[0]).epsilon(1e-10));
        CHECK(t2.z == doctest::Approx(e2[1]).epsilon(1e-10));
    }
}

TEST_CASE("edges") {
    const double bt = P.beta_tilde();
    CHECK(edge_exact(0, 1, P)[0] == 0.0);
    CHECK(edge_exact(0, 2, P)[1] == 0.0);
    const auto a = edge_exact(kPi / 4, 1, P), c = edge_exact(kPi / 4, 2, P);
    CHECK(a[0] == doctest::Approx(bt / 2).epsilon(1e-15));
    CHECK(a[1] == doctest::Approx(bt).epsilon(1e-15));
    CHECK(std::abs(c[0]) < 1e-15);
    CHECK(c[1] == doctest::Approx(bt / 2).epsilon(1e-15));
    for (double th = 0.01; th < 0.6; th += 0.01) {
        const auto e1 = edge_exact(th, 1, P);
        CHECK(std::abs(edge_z_of_x(e1[0], 1, EdgeMode::exact, P) - e1[1]) <= 1e-10 * bt);
        if (th < kPi / 6) {
            const auto e2 = edge_exact(th, 2, P);
            CHECK(std::abs(edge_z_of_x(e2[0], 2, EdgeMode::exact, P) - e2[1]) <= 1e-10 * bt);
        }
    }
    for (double u = 0.005; u < 0.125; u += 0.005) {
        const double z1 = edge_z_of_x(u * bt, 1, EdgeMode::exact, P), z2 = edge_z_of_x(u * bt, 2, EdgeMode::exact, P);
        CHECK(z2 < z1);
        CHECK(z1 < 2 * std::sqrt(u) * bt);
    }
    const double d1 = 1 - edge_z_of_x(0.1 * bt, 1, EdgeMode::exact, P) / (2 * std::sqrt(0.1) * bt);
    const double d2 = 1 - edge_z_of_x(0.1 * bt, 2, EdgeMode::exact, P) / (2 * std::sqrt(0.1) * bt);
    CHECK(d1 > 0.045);
    CHECK(d2 < 0.065);
    CHECK_THROWS_AS(edge_z_of_x(0.2 * bt, 2, EdgeMode::exact, P), DomainError);
    CHECK_THROWS_AS(edge_z_of_x(1.5 * bt, 1, EdgeMode::exact, P), DomainError);
    CHECK_THROWS_AS(edge_z_of_x(-0.1, 1, EdgeMode::approx, P), DomainError);
    // approach to the paraxial parabola x~ = z^2/4beta~ is quartic in theta
    std::vector<double> lx, ly;
    for (double th = 0.01; th <= 0.04; th += 0.005) {
        for (int w = 1; w <= 2; ++w) {
            const auto e = edge_exact(th, w, P);
            const double err = std::abs(e[0] - e[1] * e[1] / (4 * bt));
            if (w == 1) {
                lx.push_back(std::log(th));
                ly.push_back(std::log(err));
            }
        }
    }
    const double n = double(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    CHECK((n * sxy - sx * sy) / (n * sxx - sx * sx) == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("paraxial sheets") {
    const double b = P.beta();
    CHECK(paraxial_caustic({b, 2 * b, 2 * b}, P).on_s1);
    CHECK_FALSE(paraxial_caustic({b, 0.5 * b, 2 * b}, P).on_s1);
    for (double z = 0.1; z < 1; z += 0.1) {
        const auto t = beam_trajectory_pe(z, P);
        const auto pc = paraxial_caustic({t[0], t[1], z}, P);
        CHECK(pc.on_s1);
        CHECK(pc.on_s2);
        CHECK(std::abs(pc.axis_offset) < 1e-14);
    }
}

TEST_CASE("caustic surfaces") {
    SurfaceGrid g;
    g.n = 40;
    const double b = P.beta();
    for (int w = 1; w <= 2; ++w) {
        const auto s = sample_caustic_surface(w, g, P);
        CHECK(s.size() > 500);
        for (const auto& c : s) {
            const auto h = hessian_det(c.xi, c.eta, c.point.z, P);
            CHECK(std::abs(h.det) * P.c * P.c / (b * b) <= 1e-8);
        }
        // mirror pairs reflect through y~ = 0
        for (size_t i = 0; i < s.size(); i += 37) {
            for (const auto& m : s) {
                if (m.xi == s[i].eta && m.eta == s[i].xi) {
                    CHECK(std::abs(m.tilde.yt + s[i].tilde.yt) < 1e-12);
                    CHECK(std::abs(m.tilde.xt - s[i].tilde.xt) < 1e-12);
                }
            }
        }
    }
    // caustic 2 in the symmetry plane ends at finite range
    const auto sec = symmetry_plane_section(2, 400, P);
    double zmax = 0;
    for (const auto& c : sec)
        if (c.branch == 'A') zmax = std::max(zmax, c.tilde.z);
    CHECK(zmax == doctest::Approx(edge_exact(kPi / 6, 2, P)[1]).epsilon(1e-3));
    CHECK_THROWS_AS(sample_caustic_surface(3, g, P), ArgumentError);
}
