#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "causticlab/errors.hpp"
#include "causticlab/go_field.hpp"

using namespace causticlab;

namespace {
const BeamParams P = BeamParams::from_tilde(1e4, 0.0);

// x~ of an edge at range z, by bisection on the parametric form
double edge_x_at(double z, int which, const BeamParams& p) {
    double lo = 0, hi = which == 1 ? kPi / 4 : kPi / 6;
    for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        (edge_exact(mid, which, p)[1] < z ? lo : hi) = mid;
    }
    return edge_exact(0.5 * (lo + hi), which, p)[0];
}
}  // namespace

TEST_CASE("tau") {
    const auto t = tau(0.0, 0.0, {0, 0, 0.37}, P);
    CHECK(t.real() == doctest::Approx(0.37 / P.c).epsilon(1e-15));
    CHECK(t.imag() == 0.0);
}

TEST_CASE("four rays at the reference point") {
    const double bt = P.beta_tilde();
    const auto s = find_rays_to(from_tilde({0.005 * bt, 0, 0.17 * bt}, P), P);
    REQUIRE(s.rays.size() == 4);
    const double xi[4] = {2.7e-2, 2.7e-2, 9.4e-2, 9.5e-2}, eta[4] = {2.7e-2, 9.4e-2, 2.7e-2, 9.5e-2};
    const double ex[4] = {-0.14e-2, -0.95e-2, -0.95e-2, -1.8e-2}, ey[4] = {0, -0.81e-2, 0.81e-2, 0};
    const int M[4] = {2, 1, 1, 0};
    for (int r = 0; r < 4; ++r) {
        const auto& x = s.rays[r];
        CHECK(x.index == r + 1);
        CHECK(x.ray.xi == doctest::Approx(xi[r]).epsilon(0.05));
        CHECK(x.ray.eta == doctest::Approx(eta[r]).epsilon(0.05));
        const auto t = to_tilde({x.ray.xp, x.ray.yp, 0}, P);
        CHECK(t.xt / bt == doctest::Approx(ex[r]).epsilon(0.05));
        CHECK(std::abs(t.yt / bt - ey[r]) <= 0.05 * std::abs(ex[r]));
        CHECK(x.M == M[r]);
        CHECK(x.mu == 2 * (-1 + x.M0 + x.M));
        CHECK(x.residual <= 1e-10 / P.c);
    }
    CHECK_FALSE(s.near_caustic);
}

TEST_CASE("ray counts near the edges") {
    const double bt = P.beta_tilde(), z = 0.17 * bt;
    const double x1 = edge_x_at(z, 1, P), x2 = edge_x_at(z, 2, P);
    // at a fixed range the smooth edge lies beyond the cusped one
    REQUIRE(x1 < x2);
    const auto on = find_rays_to(from_tilde({x1, 0, z}, P), P);
    CHECK(on.near_caustic);
    const auto mid = find_rays_to(from_tilde({0.5 * (x1 + x2), 0, z}, P), P);
    CHECK(mid.rays.size() == 2);
}

TEST_CASE("saddle and ray equivalence") {
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> u(0.03, 0.45), s(0.05, 0.8);
    double worst = 0;
    int recovered = 0, tried = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto sp = RaySpecies::from_index(1 + i % 4);
        const double xi = sp.sx * u(rng), eta = sp.sy * u(rng);
        const auto ray = make_ray(xi, eta, P);
        const auto r = ray_point(ray, s(rng) * P.beta());
        const auto g = tau_gradient(xi, eta, r, P);
        worst = std::max(worst, std::abs(g[0]) + std::abs(g[1]));
        if (i % 20 == 0) {
            ++tried;
            for (const auto& x : find_rays_to(r, P).rays)
                if (std::hypot(x.ray.xi - xi, x.ray.eta - eta) < 1e-8) ++recovered;
        }
    }
    CHECK(worst <= 1e-10 * P.beta() / P.c);
    CHECK(recovered == tried);
}

TEST_CASE("maslov") {
    const auto ray = make_ray(0.2, 0.3, P);
    REQUIRE(ray.sigma_c1);
    const auto m0 = maslov(ray, 0.0, P);
    CHECK(m0.mu == -2);
    CHECK(m0.M == 0);
    const auto m2 = maslov(ray, *ray.sigma_c1 * 1.5, P);
    CHECK(m2.mu == 2);
    CHECK(m2.M == 2);
    CHECK_THROWS_AS(maslov(ray, *ray.sigma_c1, P), OnCausticError);
    std::mt19937 rng(22);
    std::uniform_real_distribution<double> u(0.03, 0.6), s(0.0, 2.0);
    for (int i = 0; i < 1000; ++i) {
        const auto sp = RaySpecies::from_index(1 + i % 4);
        const auto r = make_ray(sp.sx * u(rng), sp.sy * u(rng), P);
        const auto m = maslov(r, s(rng), P);
        CHECK((m.mu == -2 || m.mu == 0 || m.mu == 2));
        CHECK(m.mu == 2 * (-1 + m.M0 + m.M));
        CHECK(m.M >= 0);
        CHECK(m.M <= 2);
    }
}

TEST_CASE("amplitude forms") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> x(-0.01, 0.004), z(0.1, 0.3);
    const double bt = P.beta_tilde();
    int n = 0;
    for (int i = 0; i < 40; ++i) {
        const auto s = find_rays_to(from_tilde({x(rng) * bt, 0.3 * x(rng) * bt, z(rng) * bt}, P), P);
        for (const auto& r : s.rays) {
            const Complex b = go_amplitude(r, P, AmplitudeForm::hessian);
            Complex a;
            try {
                a = go_amplitude(r, P, AmplitudeForm::ray_tube);
            } catch (const ExitSingularError&) {
                continue;
            }
            CHECK(std::abs(a - b) <= 1e-10 * std::abs(b));
            ++n;
        }
    }
    CHECK(n > 40);
    // divergence at a caustic
    const auto ray = make_ray(0.15, 0.25, P);
    std::vector<double> lx, ly;
    for (double d = 1e-6; d < 1e-3; d *= 3) {
        lx.push_back(std::log(d));
        ly.push_back(std::log(std::abs(go_ray_term(ray, *ray.sigma_c1 + d * P.beta(), P))));
    }
    const double slope = (ly.back() - ly.front()) / (lx.back() - lx.front());
    CHECK(slope == doctest::Approx(-0.5).epsilon(0.04));
    CHECK_THROWS_AS(go_ray_term(make_ray(1e-5, 0.2, P), 0.1, P), ExitSingularError);
}

TEST_CASE("finite-energy factor") {
    const auto Pa = BeamParams::from_tilde(1e4, 1e-3);
    const auto r0 = make_ray(0.12, 0.2, P), r1 = make_ray(0.12, 0.2, Pa);
    const double sg = 0.1;
    const Complex a = go_ray_term(r0, sg, P), b = go_ray_term(r1, sg, Pa);
    const double xt = to_tilde({r0.xp, r0.yp, 0}, P).xt;
    CHECK(std::abs(b) / std::abs(a) == doctest::Approx(std::exp(Pa.k * Pa.alpha_tilde() * xt)).epsilon(1e-12));
}

TEST_CASE("rays at the aperture") {
    const double b = P.beta(), s = b * std::pow(P.k * b, -2.0 / 3);
    for (double u : {-30.0, -45.0}) {
        for (double v : {-33.0, -52.0}) {
            Complex sum = 0;
            for (const auto& r : exit_rays(u * s, v * s, P)) sum += go_ray_term(r, 0.0, P);
            const Complex ref = asymptotic_aperture_field(u * s, v * s, P);
            CHECK(std::abs(sum - ref) <= 1e-10 * std::abs(ref));
        }
    }
}

TEST_CASE("complex saddle") {
    const double bt = P.beta_tilde();
    for (double at : {1e-4, 2e-4, 4e-4}) {
        const auto Pa = BeamParams::from_tilde(1e4, at);
        const double al = Pa.alpha();
        // the delay at the exact complex saddle carries -i alpha (x' + y') to first order
        const auto r = from_tilde({0.004 * bt, 0.0, 0.17 * bt}, Pa);
        const auto s = find_rays_to(r, Pa);
        REQUIRE(s.rays.size() == 4);
        for (const auto& x : s.rays) {
            const auto v = complex_saddle(r, Pa, {Complex(x.ray.xi, 0), Complex(x.ray.eta, 0)});
            const Complex t = tau(v[0], v[1], r, Pa) * Pa.c;
            const Complex first = x.tau * Pa.c - Complex(0, al) * (x.ray.xp + x.ray.yp);
            CHECK(std::abs(t - first) <= 20 * al * al * Pa.beta());
        }
        // close to the aperture the saddle itself sits at (xi_r, eta_r) - i(alpha, alpha)
        const double xi = 0.2, eta = 0.3;
        const auto rr = ray_point(make_ray(xi, eta, Pa), 1e-4 * Pa.beta());
        const auto w = complex_saddle(rr, Pa, {Complex(xi, 0), Complex(eta, 0)});
        CHECK(std::abs(w[0] - Complex(xi, -al)) <= 1e-3 * al + 50 * al * al);
        CHECK(std::abs(w[1] - Complex(eta, -al)) <= 1e-3 * al + 50 * al * al);
    }
}

TEST_CASE("finite-energy GO against PE") {
    const auto Pa = BeamParams::from_tilde(1e4, 1e-4);
    const double bt = P.beta_tilde();
    for (double x : {-0.012, -0.02, -0.03}) {
        const auto r = from_tilde({x * bt, 0.0, 0.16 * bt}, P);
        const double go = std::norm(go_field(r, Pa).value) / std::norm(go_field(r, P).value);
        const double pe = std::norm(pe_field(r, Pa)) / std::norm(pe_field(r, P));
        CHECK(go == doctest::Approx(pe).epsilon(0.1));
    }
}

TEST_CASE("on-caustic rejection") {
    const double bt = P.beta_tilde(), z = 0.17 * bt;
    CHECK_THROWS_AS(go_field(from_tilde({edge_x_at(z, 1, P), 0, z}, P), P), OnCausticError);
}
