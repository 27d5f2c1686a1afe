#pragma once

#include <string>
#include <vector>

#include "causticlab/catastrophe.hpp"
#include "causticlab/go_field.hpp"

namespace causticlab {

enum class Method { pe, go, canonical };
std::string method_name(Method m);
Method parse_method(const std::string& s);

// frame: (u, v) = nominal (x-bar, y-bar) in the frame at frame_z
// z:     (u, v) = (x~, y~)/beta~ on the plane z = z_plane
// symmetry: (u, v) = (x~, z)/beta~ on y~ = 0
enum class PlaneKind { frame, constant_z, symmetry };

struct Scenario {
    BeamParams params = BeamParams::from_tilde(1e4, 0.0);
    PlaneKind plane = PlaneKind::frame;
    double frame_z = 0.16;  // beta~
    double z_plane = 0.2;   // beta~
    double u_min = -10.0, u_max = 4.0;
    double v_min = 0.0, v_max = 0.0;
    int nu = 401, nv = 1;
    std::vector<Method> methods = {Method::pe, Method::canonical};
    CanonicalOptions canonical;
    RaySearchOptions rays;
    double window = 8.0;
    int surface_n = 128;
    int edge_n = 200;
    double edge_theta_max = 0.5;

    void validate() const;  // throws ConfigError
};

Scenario scenario_from_kv(const KeyValues& kv);
Scenario read_scenario(const std::string& path);

struct FieldSample {
    Method method = Method::pe;
    int i = 0, j = 0;
    double u = 0.0, v = 0.0;
    Point3 point;
    TildePoint tilde;
    double x_hat = 0.0, y_hat = 0.0;  // frame plane only
    Complex value;
    double intensity = 0.0;  // |value|^2 / Ai(0)^4
    bool valid = true;
    std::string flags;
};

struct ScanResult {
    std::vector<FieldSample> samples;  // method-major, then v, then u
    std::vector<std::string> warnings;
    bool region_conflict = false;  // a requested method produced no valid sample
    double theta = 0.0;            // frame angle (frame plane)
    double predicted_offset = 0.0;  // exact pe_offset_xbar for the frame
};

ScanResult run_field_scan(const Scenario& s);
std::string samples_csv(const std::vector<FieldSample>& samples);

struct MethodPeak {
    Method method = Method::pe;
    double peak_u = 0.0, peak_intensity = 0.0;
    double offset = 0.0;  // peak_u - reference peak_u
    double rel_l2 = 0.0;  // intensity vs reference inside the window
    int n = 0;
};

struct RowReport {
    int j = 0;
    double v = 0.0;
    std::vector<MethodPeak> methods;
};

struct ComparisonReport {
    Method reference = Method::canonical;
    double window = 8.0;
    double predicted_offset = 0.0;
    std::vector<RowReport> rows;
    std::string to_json() const;
};

// Peaks by 3-point quadratic interpolation, L2 over |u| <= window.
ComparisonReport compare_methods(const ScanResult& scan, double window, Method reference = Method::canonical);

// Quadratic interpolation of the maximum of y over uniformly spaced u.
std::array<double, 2> interpolated_peak(const std::vector<double>& u, const std::vector<double>& y);

struct FresnelEntry {
    double z = 0.0, z_over_z0 = 0.0;
};
struct FresnelReport {
    double k_z0 = 0.0;  // 2^(1/3) (k beta~)^(2/3)
    double z0 = 0.0;
    std::vector<FresnelEntry> entries;
    std::string to_json() const;
};
FresnelReport fresnel_report(const BeamParams& p, const std::vector<double>& z_values);

struct EdgeDeviation {
    double xt = 0.0, zp = 0.0, z1 = 0.0, z2 = 0.0;
    double dev1 = 0.0, dev2 = 0.0;  // (z_p - z_i)/z_p
};
// Exact edges against the paraxial edge z_p = 2 sqrt(x~ beta~).
EdgeDeviation edge_deviation(double xt, const BeamParams& p);

// Caustic points on the plane z = const from the caustic-distance roots.
std::vector<CausticSample> caustic_cross_section(int which, double z, int n, const BeamParams& p);

// Writes surface, symmetry-plane, cross-section and edge CSVs into dir; returns the paths.
std::vector<std::string> run_caustic_export(const Scenario& s, const std::string& dir);

void write_text(const std::string& path, const std::string& text);

}  // namespace causticlab
