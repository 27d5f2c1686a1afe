#include "causticlab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "causticlab/errors.hpp"
#include "causticlab/parallel.hpp"

namespace causticlab {

namespace {
const double kNorm = std::pow(kAi0, 4);

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        const auto a = item.find_first_not_of(" \t"), b = item.find_last_not_of(" \t");
        if (a != std::string::npos) out.push_back(item.substr(a, b - a + 1));
    }
    return out;
}

int kv_int(const KeyValues& kv, const std::string& key, int fallback) {
    const double v = kv_number(kv, key, fallback);
    if (v != std::floor(v)) throw ConfigError("key '" + key + "' must be an integer");
    return int(v);
}

double axis(double lo, double hi, int n, int i) { return n == 1 ? lo : lo + (hi - lo) * i / (n - 1); }
}  // namespace

std::string method_name(Method m) {
    switch (m) {
        case Method::pe: return "pe";
        case Method::go: return "go";
        default: return "canonical";
    }
}

Method parse_method(const std::string& s) {
    if (s == "pe") return Method::pe;
    if (s == "go") return Method::go;
    if (s == "canonical") return Method::canonical;
    throw ConfigError("unknown method '" + s + "' (pe|go|canonical)");
}

void Scenario::validate() const {
    try {
        params.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    auto check_axis = [](double lo, double hi, int n, const char* name) {
        if (!(hi >= lo)) throw ConfigError(std::string(name) + ": max must not be below min");
        if (n < 1 || (hi > lo && n < 2)) throw ConfigError(std::string(name) + ": need at least 2 points on a non-empty axis");
    };
    check_axis(u_min, u_max, nu, "u");
    check_axis(v_min, v_max, nv, "v");
    if (methods.empty()) throw ConfigError("no methods requested");
    if (!(window > 0)) throw ConfigError("window must be positive");
    if (surface_n < 1 || edge_n < 1) throw ConfigError("surface_n and edge_n must be >= 1");
}

Scenario scenario_from_kv(const KeyValues& kv) {
    Scenario s;
    s.params = params_from_kv(kv);
    if (auto it = kv.find("plane"); it != kv.end()) {
        if (it->second == "frame") s.plane = PlaneKind::frame;
        else if (it->second == "z") s.plane = PlaneKind::constant_z;
        else if (it->second == "symmetry") s.plane = PlaneKind::symmetry;
        else throw ConfigError("unknown plane '" + it->second + "' (frame|z|symmetry)");
    }
    s.frame_z = kv_number(kv, "frame_z", s.frame_z);
    s.z_plane = kv_number(kv, "z", s.z_plane);
    s.u_min = kv_number(kv, "u_min", s.u_min);
    s.u_max = kv_number(kv, "u_max", s.u_max);
    s.v_min = kv_number(kv, "v_min", s.v_min);
    s.v_max = kv_number(kv, "v_max", s.v_max);
    s.nu = kv_int(kv, "nu", s.nu);
    s.nv = kv_int(kv, "nv", s.nv);
    if (auto it = kv.find("methods"); it != kv.end()) {
        s.methods.clear();
        for (const auto& m : split(it->second, ',')) s.methods.push_back(parse_method(m));
    }
    if (auto it = kv.find("evaluator"); it != kv.end()) s.canonical.evaluator = parse_evaluator(it->second);
    s.canonical.P = kv_int(kv, "series_P", s.canonical.P);
    s.canonical.M = kv_int(kv, "series_M", s.canonical.M);
    s.canonical.quad_target = kv_number(kv, "quad_target", s.canonical.quad_target);
    s.rays.zeta_min = kv_number(kv, "zeta_min", s.rays.zeta_min);
    s.window = kv_number(kv, "window", s.window);
    s.surface_n = kv_int(kv, "surface_n", s.surface_n);
    s.edge_n = kv_int(kv, "edge_n", s.edge_n);
    s.edge_theta_max = kv_number(kv, "edge_theta_max", s.edge_theta_max);
    s.validate();
    return s;
}

Scenario read_scenario(const std::string& path) { return scenario_from_kv(read_key_values(path)); }

ScanResult run_field_scan(const Scenario& s) {
    s.validate();
    const auto& p = s.params;
    const double bt = p.beta_tilde();
    ScanResult out;
    LocalFrame frame;
    double xu = 0, yu = 0;
    if (s.plane == PlaneKind::frame) {
        frame = frame_for_range(s.frame_z * bt, p);
        xu = x_hat_unit(frame);
        yu = y_hat_unit(frame);
        out.theta = frame.theta;
        out.predicted_offset = pe_offset_xbar(frame.theta, p).exact;
    }
    const int nu = s.u_min == s.u_max ? 1 : s.nu, nv = s.v_min == s.v_max ? 1 : s.nv;
    const size_t per = size_t(nu) * nv;
    out.samples.resize(per * s.methods.size());
    parallel_for(out.samples.size(), [&](size_t idx) {
        const size_t k = idx / per, rem = idx % per;
        FieldSample& f = out.samples[idx];
        f.method = s.methods[k];
        f.j = int(rem / nu);
        f.i = int(rem % nu);
        f.u = axis(s.u_min, s.u_max, nu, f.i);
        f.v = axis(s.v_min, s.v_max, nv, f.j);
        switch (s.plane) {
            case PlaneKind::frame:
                f.x_hat = f.u * xu;
                f.y_hat = f.v * yu;
                f.point = frame.point(f.x_hat, f.y_hat, p);
                break;
            case PlaneKind::constant_z: f.point = from_tilde({f.u * bt, f.v * bt, s.z_plane * bt}, p); break;
            case PlaneKind::symmetry: f.point = from_tilde({f.u * bt, 0.0, f.v * bt}, p); break;
        }
        f.tilde = to_tilde(f.point, p);
        try {
            switch (f.method) {
                case Method::pe: f.value = pe_field(f.point, p); break;
                case Method::go: {
                    const auto g = go_field(f.point, p, s.rays);
                    if (g.in_layer) {
                        f.valid = false;
                        f.flags = "in_layer";
                    } else {
                        f.value = g.value;
                    }
                    break;
                }
                case Method::canonical: {
                    const auto c = s.plane == PlaneKind::frame ? canonical_field_hat(frame, f.x_hat, f.y_hat, s.canonical)
                                                               : canonical_field(f.point, p, s.canonical);
                    f.value = c.value;
                    if (c.outside_layer) f.flags = "outside_layer";
                    if (c.outside_series_regime) f.flags += f.flags.empty() ? "series_regime" : ";series_regime";
                    break;
                }
            }
        } catch (const OnCausticError&) {
            f.valid = false;
            f.flags = "on_caustic";
        } catch (const ExitSingularError&) {
            f.valid = false;
            f.flags = "exit_singular";
        } catch (const RegionError&) {
            f.valid = false;
            f.flags = "no_frame";
        } catch (const DomainError&) {
            f.valid = false;
            f.flags = "domain";
        }
        if (!f.valid) f.value = 0.0;
        f.intensity = std::norm(f.value) / kNorm;
    });
    for (size_t k = 0; k < s.methods.size(); ++k) {
        int bad = 0;
        for (size_t i = 0; i < per; ++i) bad += !out.samples[k * per + i].valid;
        if (bad) {
            out.warnings.push_back(method_name(s.methods[k]) + ": " + std::to_string(bad) + " of " + std::to_string(per) +
                                   " samples flagged and not computed");
        }
        if (bad == int(per)) out.region_conflict = true;
    }
    return out;
}

std::string samples_csv(const std::vector<FieldSample>& samples) {
    std::string out = "method,i,j,u,v,x,y,z,x_tilde,y_tilde,x_hat,y_hat,re,im,intensity,valid,flags\n";
    char buf[640];
    for (const auto& f : samples) {
        std::snprintf(buf, sizeof buf, "%s,%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%s\n",
                      method_name(f.method).c_str(), f.i, f.j, f.u, f.v, f.point.x, f.point.y, f.point.z, f.tilde.xt,
                      f.tilde.yt, f.x_hat, f.y_hat, f.value.real(), f.value.imag(), f.intensity, int(f.valid),
                      f.flags.c_str());
        out += buf;
    }
    return out;
}

std::array<double, 2> interpolated_peak(const std::vector<double>& u, const std::vector<double>& y) {
    if (u.empty() || u.size() != y.size()) throw ArgumentError("peak search needs matching, non-empty samples");
    size_t m = 0;
    for (size_t i = 1; i < y.size(); ++i)
        if (y[i] > y[m]) m = i;
    if (m == 0 || m + 1 == y.size()) return {u[m], y[m]};
    const double a = y[m - 1], b = y[m], c = y[m + 1];
    const double den = a - 2 * b + c;
    if (den >= 0) return {u[m], b};
    const double t = 0.5 * (a - c) / den;
    return {u[m] + t * (u[m + 1] - u[m]), b - 0.25 * (a - c) * t};
}

ComparisonReport compare_methods(const ScanResult& scan, double window, Method reference) {
    ComparisonReport rep;
    rep.reference = reference;
    rep.window = window;
    rep.predicted_offset = scan.predicted_offset;
    // method -> row -> (u, I, valid)
    std::vector<Method> methods;
    for (const auto& f : scan.samples)
        if (std::find(methods.begin(), methods.end(), f.method) == methods.end()) methods.push_back(f.method);
    if (methods.size() < 2) throw ArgumentError("comparison needs at least two methods");
    if (std::find(methods.begin(), methods.end(), reference) == methods.end())
        throw ArgumentError("reference method " + method_name(reference) + " is not in the scan");
    int nrows = 0;
    for (const auto& f : scan.samples) nrows = std::max(nrows, f.j + 1);
    for (int j = 0; j < nrows; ++j) {
        RowReport row;
        row.j = j;
        auto pick = [&](Method m) {
            std::vector<const FieldSample*> v;
            for (const auto& f : scan.samples)
                if (f.method == m && f.j == j && std::abs(f.u) <= window) v.push_back(&f);
            return v;
        };
        const auto ref = pick(reference);
        if (ref.empty()) throw ArgumentError("empty comparison window");
        row.v = ref.front()->v;
        std::vector<MethodPeak> peaks;
        for (Method m : methods) {
            const auto cur = pick(m);
            std::vector<double> u, y;
            for (const auto* f : cur)
                if (f->valid) {
                    u.push_back(f->u);
                    y.push_back(f->intensity);
                }
            if (u.empty()) throw ArgumentError("empty comparison window for " + method_name(m));
            MethodPeak mp;
            mp.method = m;
            mp.n = int(u.size());
            const auto pk = interpolated_peak(u, y);
            mp.peak_u = pk[0];
            mp.peak_intensity = pk[1];
            double num = 0, den = 0;
            for (const auto* f : cur) {
                if (!f->valid) continue;
                for (const auto* r : ref)
                    if (r->i == f->i && r->valid) {
                        num += (f->intensity - r->intensity) * (f->intensity - r->intensity);
                        den += r->intensity * r->intensity;
                    }
            }
            mp.rel_l2 = den > 0 ? std::sqrt(num / den) : 0.0;
            peaks.push_back(mp);
        }
        double ref_peak = 0;
        for (const auto& mp : peaks)
            if (mp.method == reference) ref_peak = mp.peak_u;
        for (auto& mp : peaks) mp.offset = mp.peak_u - ref_peak;
        row.methods = peaks;
        rep.rows.push_back(row);
    }
    return rep;
}

std::string ComparisonReport::to_json() const {
    nlohmann::ordered_json j;
    j["reference"] = method_name(reference);
    j["window"] = window;
    j["predicted_offset"] = predicted_offset;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json jr;
        jr["j"] = r.j;
        jr["v"] = r.v;
        for (const auto& m : r.methods) {
            jr["methods"].push_back({{"method", method_name(m.method)},
                                     {"peak_u", m.peak_u},
                                     {"peak_intensity", m.peak_intensity},
                                     {"offset", m.offset},
                                     {"rel_l2", m.rel_l2},
                                     {"n", m.n}});
        }
        j["rows"].push_back(jr);
    }
    return j.dump(2) + "\n";
}

FresnelReport fresnel_report(const BeamParams& p, const std::vector<double>& z_values) {
    FresnelReport r;
    r.k_z0 = std::cbrt(2.0) * std::pow(p.k_beta_tilde(), 2.0 / 3);
    r.z0 = r.k_z0 / p.k;
    for (double z : z_values) r.entries.push_back({z, z / r.z0});
    return r;
}

std::string FresnelReport::to_json() const {
    nlohmann::ordered_json j;
    j["k_z0"] = k_z0;
    j["z0"] = z0;
    j["entries"] = nlohmann::ordered_json::array();
    for (const auto& e : entries) j["entries"].push_back({{"z", e.z}, {"z_over_z0", e.z_over_z0}});
    return j.dump(2) + "\n";
}

EdgeDeviation edge_deviation(double xt, const BeamParams& p) {
    EdgeDeviation d;
    d.xt = xt;
    d.zp = 2 * std::sqrt(xt * p.beta_tilde());
    d.z1 = edge_z_of_x(xt, 1, EdgeMode::exact, p);
    d.z2 = edge_z_of_x(xt, 2, EdgeMode::exact, p);
    d.dev1 = (d.zp - d.z1) / d.zp;
    d.dev2 = (d.zp - d.z2) / d.zp;
    return d;
}

std::vector<CausticSample> caustic_cross_section(int which, double z, int n, const BeamParams& p) {
    p.require_symmetric();
    if (which != 1 && which != 2) throw ArgumentError("caustic index must be 1 or 2");
    if (n < 1) throw ArgumentError("cross-section needs n >= 1");
    const double nan = std::numeric_limits<double>::quiet_NaN();
    auto zc = [&](double xi, double eta) {
        if (xi * xi + eta * eta >= 0.99) return nan;
        const auto cd = caustic_distances(xi, eta, p);
        const auto& v = which == 1 ? cd.z_c1 : cd.z_c2;
        return v ? *v - z : nan;
    };
    std::vector<std::vector<CausticSample>> rows(n);
    parallel_for(size_t(n), [&](size_t i) {
        const double xi = n == 1 ? 0.0 : -0.95 + 1.9 * double(i) / (n - 1);
        const int m = 2000;
        double e0 = -0.995, f0 = zc(xi, e0);
        for (int k = 1; k <= m; ++k) {
            const double e1 = -0.995 + 1.99 * k / m, f1 = zc(xi, e1);
            if (std::isfinite(f0) && std::isfinite(f1) && (f0 > 0) != (f1 > 0)) {
                double lo = e0, hi = e1, flo = f0;
                for (int it = 0; it < 80; ++it) {
                    const double mid = 0.5 * (lo + hi), fm = zc(xi, mid);
                    if (!std::isfinite(fm)) break;
                    if ((fm > 0) == (flo > 0)) {
                        lo = mid;
                        flo = fm;
                    } else {
                        hi = mid;
                    }
                }
                const double eta = 0.5 * (lo + hi), fe = zc(xi, eta);
                if (std::isfinite(fe) && std::abs(fe) < 1e-9 * p.beta()) {
                    const auto ray = make_ray(xi, eta, p);
                    const auto cd = caustic_distances(xi, eta, p);
                    CausticSample s;
                    s.which = which;
                    s.branch = xi * xi + eta * eta < (which == 1 ? 0.5 : 0.25) ? 'A' : 'B';
                    s.xi = xi;
                    s.eta = eta;
                    s.point = ray_point(ray, which == 1 ? *cd.sigma_c1 : *cd.sigma_c2);
                    s.tilde = to_tilde(s.point, p);
                    rows[i].push_back(s);
                }
            }
            e0 = e1;
            f0 = f1;
        }
    });
    std::vector<CausticSample> out;
    for (auto& r : rows) out.insert(out.end(), r.begin(), r.end());
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + path);
    f << text;
}

std::vector<std::string> run_caustic_export(const Scenario& s, const std::string& dir) {
    s.validate();
    const auto& p = s.params;
    const double bt = p.beta_tilde();
    std::filesystem::create_directories(dir);
    std::vector<std::string> paths;
    auto put = [&](const std::string& name, const std::string& text) {
        const auto path = (std::filesystem::path(dir) / name).string();
        write_text(path, text);
        paths.push_back(path);
    };
    SurfaceGrid g;
    g.n = s.surface_n;
    for (int w = 1; w <= 2; ++w) {
        put("surface" + std::to_string(w) + ".csv", caustic_csv(sample_caustic_surface(w, g, p), bt));
        put("symmetry" + std::to_string(w) + ".csv", caustic_csv(symmetry_plane_section(w, s.surface_n, p), bt));
        put("section" + std::to_string(w) + ".csv",
            caustic_csv(caustic_cross_section(w, s.z_plane * bt, s.surface_n, p), bt));
    }
    std::string edges = "theta,x1,z1,x2,z2,zp1,zp2\n";
    char buf[256];
    for (int i = 0; i < s.edge_n; ++i) {
        const double th = s.edge_n == 1 ? s.edge_theta_max : s.edge_theta_max * i / (s.edge_n - 1);
        const auto e1 = edge_exact(th, 1, p), e2 = edge_exact(th, 2, p);
        // paraxial edge z_p = 2 sqrt(x~ beta~) at the same x~
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", th, e1[0] / bt, e1[1] / bt,
                      e2[0] / bt, e2[1] / bt, 2 * std::sqrt(std::max(e1[0], 0.0) / bt),
                      2 * std::sqrt(std::max(e2[0], 0.0) / bt));
        edges += buf;
    }
    put("edges.csv", edges);
    return paths;
}

}  // namespace causticlab
