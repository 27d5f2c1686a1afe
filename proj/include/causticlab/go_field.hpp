#pragma once

#include <string>
#include <vector>

#include "causticlab/rays.hpp"

namespace causticlab {

// tau(xi, eta; r) with tau0 = beta[(xi + i alpha)^3 + (eta + i alpha)^3]/3c.
// zeta is the principal root, which has Im zeta >= 0 on the evanescent part of the real plane.
Complex tau(Complex xi, Complex eta, const Point3& r, const BeamParams& p);
std::array<Complex, 2> tau_gradient(Complex xi, Complex eta, const Point3& r, const BeamParams& p);

struct RaySolution {
    int index = 0;  // r = 1..4 for the near-axis rays, ordered by xi + eta then xi
    Ray ray;
    double sigma = 0.0;
    double tau = 0.0;  // tau0 + sigma/c at alpha = 0
    int M0 = 0, M = 0, mu = 0;
    double residual = 0.0;  // |d_xi tau| + |d_eta tau|
    Complex amplitude;
};

struct RaySearchOptions {
    double zeta_min = 0.5;
    double dedup_tol = 1e-8;
    double coalesce_tol = 1e-4;
    int samples = 4000;  // per branch pair
};

struct RaySearch {
    std::vector<RaySolution> rays;
    double min_separation = 0.0;  // smallest (xi, eta) distance between two rays
    bool near_caustic = false;
};

RaySearch find_rays_to(const Point3& r, const BeamParams& p, const RaySearchOptions& opt = {});

struct Maslov {
    int M0 = 0, M = 0, mu = 0;
};
Maslov maslov(const Ray& ray, double sigma, const BeamParams& p);

enum class AmplitudeForm { ray_tube, hessian };

// Exit floor (in units of beta) below which the ray-tube form is rejected.
inline constexpr double kExitFloor = 1e-6;

Complex go_amplitude(const RaySolution& s, const BeamParams& p, AmplitudeForm form = AmplitudeForm::hessian);

// One ray's contribution amplitude * exp(i k c tau) at arc length sigma along it.
Complex go_ray_term(const Ray& ray, double sigma, const BeamParams& p, AmplitudeForm form = AmplitudeForm::ray_tube);

// Four-term asymptotic aperture field built from the exit-point plane waves.
Complex asymptotic_aperture_field(double xp, double yp, const BeamParams& p);

// Saddles closer than this (normalized units) are treated as inside the transition layer.
inline constexpr double kLayerSeparation = 1.5;
double normalized_separation(const RaySearch& s, const BeamParams& p);

struct GoResult {
    Complex value;
    int nrays = 0;
    bool near_caustic = false;
    bool in_layer = false;
};
GoResult go_field(const Point3& r, const BeamParams& p, const RaySearchOptions& opt = {});

// Newton on the exact complex stationarity system with alpha kept in tau0.
std::array<Complex, 2> complex_saddle(const Point3& r, const BeamParams& p, std::array<Complex, 2> seed);

std::string ray_csv(const std::vector<RaySolution>& rays, double length_unit);

}  // namespace causticlab
