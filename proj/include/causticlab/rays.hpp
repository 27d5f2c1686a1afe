#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "causticlab/beam.hpp"

namespace causticlab {

// Species s = 1..4 <-> exit-direction sign pairs (++, +-, -+, --).
struct RaySpecies {
    int s = 1;
    int sx = 1, sy = 1;
    int M0 = 0;  // number of negative signs

    static RaySpecies from_index(int s);
    static RaySpecies from_signs(int sx, int sy);
};

struct Ray {
    RaySpecies species;
    double xp = 0.0, yp = 0.0;  // exit point, aperture frame
    double xi = 0.0, eta = 0.0, zeta = 1.0;
    bool evanescent = false;
    std::optional<double> sigma_c1, sigma_c2;
};

// Ray leaving the aperture in direction (xi, eta); exit point -beta (xi^2, eta^2).
Ray make_ray(double xi, double eta, const BeamParams& p);

// The four rays leaving (x', y'); directions with xi^2 + eta^2 >= 1 come back flagged evanescent.
std::array<Ray, 4> exit_rays(double xp, double yp, const BeamParams& p);

Point3 ray_point(const Ray& ray, double sigma);

double jacobian(double xi, double eta, double sigma, const BeamParams& p);
// Determinant of the explicit 3x3 ray-coordinate matrix (used as a cross-check).
double jacobian_matrix_det(double xi, double eta, double sigma, const BeamParams& p);

struct HessianInfo {
    double det = 0.0;
    std::array<double, 3> entries{};  // d2_xi, d2_eta, d_xi d_eta of tau
    std::array<double, 2> eigen{};    // ascending
};
HessianInfo hessian_det(double xi, double eta, double z, const BeamParams& p);

struct CausticDistances {
    std::optional<double> z_c1, z_c2;
    std::optional<double> sigma_c1, sigma_c2;
};
CausticDistances caustic_distances(double xi, double eta, const BeamParams& p);

// Cusped edge (which = 1) or smooth edge (which = 2) in the symmetry plane, (x~, z).
std::array<double, 2> edge_exact(double theta_z, int which, const BeamParams& p);

enum class EdgeMode { exact, approx };
double edge_z_of_x(double xt, int which, EdgeMode mode, const BeamParams& p);

struct ParaxialCaustic {
    double offset1 = 0.0;  // x - z^2/4beta: zero on the S1 sheet plane
    double offset2 = 0.0;  // y - z^2/4beta
    double axis_offset = 0.0;  // x~ - z^2/4beta~, zero on the paraxial beam axis
    bool on_s1 = false, on_s2 = false;
};
ParaxialCaustic paraxial_caustic(const Point3& r, const BeamParams& p, double tol = 1e-12);

struct CausticSample {
    int which = 1;
    char branch = 'A';  // 'A' near axis, 'B' far aperture
    double xi = 0.0, eta = 0.0;
    Point3 point;
    TildePoint tilde;
};

struct SurfaceGrid {
    int n = 256;
    double lo = 0.0, hi = 0.95;
    std::vector<int> species = {1, 2, 3, 4};
};
std::vector<CausticSample> sample_caustic_surface(int which, const SurfaceGrid& grid, const BeamParams& p);

// Caustic points on the symmetry plane y~ = 0 traced by rays with xi = eta.
std::vector<CausticSample> symmetry_plane_section(int which, int n, const BeamParams& p);

std::string caustic_csv(const std::vector<CausticSample>& samples, double length_unit);

}  // namespace causticlab
