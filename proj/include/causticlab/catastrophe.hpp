#pragma once

#include <array>
#include <string>

#include "causticlab/beam.hpp"

namespace causticlab {

// Local frame on the smooth (caustic-2) edge at ray angle theta.
// x^ = c (x~ - x~2) + s (z - z2), z^ = -s (x~ - x~2) + c (z - z2), y^ = y~.
struct LocalFrame {
    double theta = 0.0;
    double xt2 = 0.0, z2 = 0.0;  // origin, tilde frame
    double tau_a = 0.0, delta_hat = 0.0, D1 = 1.0 / 3, D2 = 1.0;
    // finite-energy versions (equal to the above when alpha~ = 0)
    Complex tau_a_alpha, delta_hat_alpha, D1_alpha, D2_alpha, epsilon, x_shift;
    double k_beta_tilde = 0.0, beta_tilde = 1.0, c = 1.0;

    Point3 origin(const BeamParams& p) const;
    // (x^, y^) on the z^ = 0 plane -> aperture coordinates
    Point3 point(double x_hat, double y_hat, const BeamParams& p) const;
    // (x^, y^, z^) of an arbitrary point
    std::array<double, 3> hat(const Point3& r, const BeamParams& p) const;
};

struct CanonicalArgs {
    Complex x_bar, y_bar, delta_bar, epsilon_bar;
};

LocalFrame local_frame(double theta_z, const BeamParams& p);
// theta of the smooth edge at range z (bisection)
LocalFrame frame_for_range(double z, const BeamParams& p);

CanonicalArgs normalize_coords(const LocalFrame& f, double x_hat, double y_hat);
// Inverse scalings, alpha = 0: physical length of one normalized unit.
double x_hat_unit(const LocalFrame& f);
double y_hat_unit(const LocalFrame& f);

// Normalization making U-bar(0) = 1.
double hypumb_C0();

struct SeriesInfo {
    bool outside_regime = false;  // |delta|, |epsilon| > 0.3
};
Complex hypumb_series(const CanonicalArgs& a, int P = 3, int M = 3, SeriesInfo* info = nullptr);

struct QuadInfo {
    int outer_panels = 0;
    double last_change = 0.0;
    long evaluations = 0;
};
Complex hypumb_quadrature(const CanonicalArgs& a, double target = 1e-9, QuadInfo* info = nullptr);

// K(b) = integral of exp i(t^3 + eps t^2 + b t) over the valley contour.
Complex cubic_integral(Complex b, Complex eps, double tol = 1e-14, long* evals = nullptr);

// Leading-order stationary-phase value of U-bar (real arguments, epsilon = 0).
Complex hypumb_stationary_phase(const CanonicalArgs& a, int* nsaddles = nullptr);

enum class Evaluator { series, quadrature };

struct CanonicalOptions {
    Evaluator evaluator = Evaluator::series;
    int P = 3, M = 3;
    double quad_target = 1e-9;
    double layer_limit = 10.0;  // |x-bar|, |y-bar| beyond this: GO territory
};

struct CanonicalResult {
    Complex value;
    CanonicalArgs args;
    bool outside_layer = false;
    bool outside_series_regime = false;
};

// Field on the z^ = 0 plane of a given frame.
CanonicalResult canonical_field_hat(const LocalFrame& f, double x_hat, double y_hat, const CanonicalOptions& opt = {});
// Field at an arbitrary near-axis point; the frame is chosen so the point sits on its z^ = 0 plane.
CanonicalResult canonical_field(const Point3& r, const BeamParams& p, const CanonicalOptions& opt = {});

struct Offset {
    double formula = 0.0;  // small-angle expression
    double exact = 0.0;    // from the edge geometry
};
// Normalized x-bar position of the paraxial beam axis in the frame.
Offset pe_offset_xbar(double theta_z, const BeamParams& p);
// Normalized x-bar position of the cusped edge of caustic 1 in the frame.
double caustic1_offset_xbar(double theta_z, const BeamParams& p);

struct AltForm {
    double x_check = 0.0, y_check = 0.0, delta_check = 0.0;
    // (xi-bar, eta-bar) -> (xi-check, eta-check) is an affine map: m * v + shift
    std::array<double, 4> map{};
    std::array<double, 2> shift{};
    double jacobian = 0.0;     // d(xi-bar, eta-bar)/d(xi-check, eta-check)
    double omitted_phase = 0.0;  // Phi-bar - Phi-check
};
AltForm to_alternative_form(const CanonicalArgs& a);
// U-bar from the alternative phase xi^3 + eta^3 + d xi eta + x xi + y eta, scaled by C0 and the Jacobian.
Complex alt_form_quadrature(const AltForm& f, double tol = 1e-12);

std::string evaluator_name(Evaluator e);
Evaluator parse_evaluator(const std::string& s);

}  // namespace causticlab
