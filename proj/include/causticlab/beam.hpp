#pragma once

#include <array>
#include <map>
#include <string>

#include "causticlab/special.hpp"

namespace causticlab {

struct BeamParams {
    double k = 1.0e4;
    double beta_x = std::sqrt(2.0);
    double beta_y = std::sqrt(2.0);
    double alpha_x = 0.0;
    double alpha_y = 0.0;
    double c = 1.0;

    // Symmetric beam from the tilde-frame pair (k beta~, alpha~), lengths in units of beta~.
    static BeamParams from_tilde(double k_beta_tilde, double alpha_tilde, double beta_tilde = 1.0,
                                 double c = 1.0);

    void validate() const;  // throws DomainError
    bool symmetric() const;
    void require_symmetric() const;  // throws DomainError

    double omega() const { return k * c; }
    double beta() const { return beta_x; }
    double alpha() const { return alpha_x; }
    double beta_tilde() const { return beta_x / std::sqrt(2.0); }
    double alpha_tilde() const { return alpha_x * std::sqrt(2.0); }
    double k_beta_tilde() const { return k * beta_tilde(); }
    // Rotation angle of the tilde frame, atan(beta_x / beta_y).
    double phi() const { return std::atan2(beta_x, beta_y); }
};

struct Point3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

// (x~, y~, z): the aperture frame rotated by phi about z.
struct TildePoint {
    double xt = 0.0, yt = 0.0, z = 0.0;
};

struct Symmetrized {
    BeamParams params;
    double scale_x = 1.0;  // x -> x * scale_x
    double scale_y = 1.0;
};

Symmetrized symmetrize(const BeamParams& p);

TildePoint to_tilde(const Point3& p, const BeamParams& params);
Point3 from_tilde(const TildePoint& t, const BeamParams& params);

Complex aperture_field(double x, double y, const BeamParams& p);

// One transverse factor F(rho, z) of the closed-form paraxial solution.
Complex pe_factor(double rho, double z, double beta, double alpha, double k);

Complex pe_field(const Point3& p, const BeamParams& params);
inline Complex pe_field_tilde(const TildePoint& t, const BeamParams& params) {
    return pe_field(from_tilde(t, params), params);
}

// Paraxial beam axis at range z, aperture frame.
std::array<double, 2> beam_trajectory_pe(double z, const BeamParams& p);

// Flat key = value configuration ('#' starts a comment).
using KeyValues = std::map<std::string, std::string>;
KeyValues parse_key_values(const std::string& text);
KeyValues read_key_values(const std::string& path);
double kv_number(const KeyValues& kv, const std::string& key, double fallback);

BeamParams params_from_kv(const KeyValues& kv);
std::string params_to_kv(const BeamParams& p);

}  // namespace causticlab
