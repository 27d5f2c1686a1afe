#include "causticlab/beam.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "causticlab/errors.hpp"

namespace causticlab {

BeamParams BeamParams::from_tilde(double k_beta_tilde, double alpha_tilde, double beta_tilde, double c) {
    BeamParams p;
    p.beta_x = p.beta_y = beta_tilde * std::sqrt(2.0);
    p.alpha_x = p.alpha_y = alpha_tilde / std::sqrt(2.0);
    p.k = k_beta_tilde / beta_tilde;
    p.c = c;
    p.validate();
    return p;
}

void BeamParams::validate() const {
    if (!(k > 0) || !(beta_x > 0) || !(beta_y > 0) || !(c > 0))
        throw DomainError("k, beta_x, beta_y and c must be positive");
    if (!(alpha_x >= 0) || !(alpha_y >= 0)) throw DomainError("alpha_x, alpha_y must be non-negative");
}

bool BeamParams::symmetric() const { return beta_x == beta_y && alpha_x == alpha_y; }

void BeamParams::require_symmetric() const {
    validate();
    if (!symmetric()) throw DomainError("operation needs the symmetric case; call symmetrize first");
}

Symmetrized symmetrize(const BeamParams& p) {
    p.validate();
    Symmetrized s;
    const double b = std::hypot(p.beta_x, p.beta_y);
    s.scale_x = std::cbrt(b / p.beta_x);
    s.scale_y = std::cbrt(b / p.beta_y);
    s.params = p;
    s.params.beta_x = s.params.beta_y = b;
    // windows re-expressed in the scaled coordinates
    s.params.alpha_x = p.alpha_x / s.scale_x;
    s.params.alpha_y = p.alpha_y / s.scale_y;
    return s;
}

TildePoint to_tilde(const Point3& p, const BeamParams& params) {
    const auto r = rotate2<double>(params.phi(), {p.x, p.y});
    return {r[0], r[1], p.z};
}

Point3 from_tilde(const TildePoint& t, const BeamParams& params) {
    const auto r = rotate2<double>(-params.phi(), {t.xt, t.yt});
    return {r[0], r[1], t.z};
}

Complex aperture_field(double x, double y, const BeamParams& p) {
    // Ai(k^(2/3) beta^(-1/3) x), argument grouped as (k beta)^(2/3) (x / beta)
    const double ax = std::cbrt(p.k * p.beta_x * p.k * p.beta_x) * (x / p.beta_x);
    const double ay = std::cbrt(p.k * p.beta_y * p.k * p.beta_y) * (y / p.beta_y);
    return std::exp(p.k * p.alpha_x * x) * airy_ai(ax) * std::exp(p.k * p.alpha_y * y) * airy_ai(ay);
}

Complex pe_factor(double rho, double z, double beta, double alpha, double k) {
    const Complex I(0.0, 1.0);
    const double kb23 = std::cbrt(k * beta * k * beta);
    const double q = z / (2.0 * beta);
    const Complex arg = kb23 * (rho / beta - q * q + I * alpha * z / beta);
    const Complex phase = I * k * (rho * z / (2.0 * beta) - z * z * z / (12.0 * beta * beta) + alpha * alpha * z / 2.0);
    const double window = k * alpha * (rho - z * z / (2.0 * beta));
    return airy_ai(arg) * std::exp(phase + window);
}

Complex pe_field(const Point3& p, const BeamParams& params) {
    const Complex I(0.0, 1.0);
    return pe_factor(p.x, p.z, params.beta_x, params.alpha_x, params.k) *
           pe_factor(p.y, p.z, params.beta_y, params.alpha_y, params.k) * std::exp(I * params.k * p.z);
}

std::array<double, 2> beam_trajectory_pe(double z, const BeamParams& p) {
    return {z * z / (4.0 * p.beta_x), z * z / (4.0 * p.beta_y)};
}

KeyValues parse_key_values(const std::string& text) {
    KeyValues kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        if (a == std::string::npos) return std::string();
        const auto b = s.find_last_not_of(" \t\r");
        return s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        kv[key] = trim(line.substr(eq + 1));
    }
    return kv;
}

KeyValues read_key_values(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_key_values(ss.str());
}

double kv_number(const KeyValues& kv, const std::string& key, double fallback) {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    try {
        size_t used = 0;
        double v = std::stod(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument(key);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "' is not a number: " + it->second);
    }
}

BeamParams params_from_kv(const KeyValues& kv) {
    try {
        const double bt = kv_number(kv, "beta_tilde", 1.0);
        BeamParams p = BeamParams::from_tilde(kv_number(kv, "k_beta_tilde", 1.0e4), kv_number(kv, "alpha_tilde", 0.0),
                                              bt, kv_number(kv, "c", 1.0));
        // raw values override the tilde-derived ones
        p.k = kv_number(kv, "k", p.k);
        p.beta_x = kv_number(kv, "beta_x", p.beta_x);
        p.beta_y = kv_number(kv, "beta_y", p.beta_y);
        p.alpha_x = kv_number(kv, "alpha_x", p.alpha_x);
        p.alpha_y = kv_number(kv, "alpha_y", p.alpha_y);
        p.validate();
        return p;
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
}

std::string params_to_kv(const BeamParams& p) {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "k = %.17g\nbeta_x = %.17g\nbeta_y = %.17g\nalpha_x = %.17g\nalpha_y = %.17g\nc = %.17g\n", p.k,
                  p.beta_x, p.beta_y, p.alpha_x, p.alpha_y, p.c);
    return buf;
}

}  // namespace causticlab
