#include <cstdio>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "causticlab/errors.hpp"
#include "causticlab/harness.hpp"

using namespace causticlab;

namespace {

struct Common {
    std::string config, out = ".", method, evaluator, grid;
    double k_beta = 0, alpha_tilde = -1, window = 0;
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> v;
    size_t a = 0;
    while (a <= s.size()) {
        const size_t b = s.find(',', a);
        v.push_back(s.substr(a, b == std::string::npos ? std::string::npos : b - a));
        if (b == std::string::npos) break;
        a = b + 1;
    }
    return v;
}

void add_common(CLI::App* app, Common& c, bool scan) {
    app->add_option("--config", c.config, "scenario file (key = value)");
    app->add_option("--k-beta", c.k_beta, "k beta~ (overrides the config)");
    app->add_option("--alpha-tilde", c.alpha_tilde, "alpha~ (overrides the config)");
    app->add_option("--out", c.out, "output directory");
    if (scan) {
        app->add_option("--method", c.method, "comma list of pe, go, canonical");
        app->add_option("--evaluator", c.evaluator, "series or quadrature");
        app->add_option("--grid", c.grid, "nu[,nv]");
        app->add_option("--window", c.window, "comparison half-width in u");
    }
}

Scenario build(const Common& c) {
    KeyValues kv;
    if (!c.config.empty()) kv = read_key_values(c.config);
    char buf[64];
    if (c.k_beta > 0) {
        std::snprintf(buf, sizeof buf, "%.17g", c.k_beta);
        kv["k_beta_tilde"] = buf;
    }
    if (c.alpha_tilde >= 0) {
        std::snprintf(buf, sizeof buf, "%.17g", c.alpha_tilde);
        kv["alpha_tilde"] = buf;
    }
    if (!c.method.empty()) kv["methods"] = c.method;
    if (!c.evaluator.empty()) kv["evaluator"] = c.evaluator;
    if (c.window > 0) {
        std::snprintf(buf, sizeof buf, "%.17g", c.window);
        kv["window"] = buf;
    }
    if (!c.grid.empty()) {
        const auto g = split_list(c.grid);
        if (g.empty() || g.size() > 2) throw ConfigError("--grid expects nu[,nv]");
        kv["nu"] = g[0];
        if (g.size() == 2) kv["nv"] = g[1];
    }
    return scenario_from_kv(kv);
}

std::string out_path(const Common& c, const std::string& name) {
    std::filesystem::create_directories(c.out);
    return (std::filesystem::path(c.out) / name).string();
}

int report_scan(const ScanResult& r) {
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
    if (r.region_conflict) {
        std::cerr << "error: a requested method is not valid anywhere in the requested region\n";
        return 4;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Airy-beam fields, rays and caustics"};
    app.require_subcommand(1);
    Common field_o, caustic_o, rays_o, cmp_o, fres_o;

    auto* field = app.add_subcommand("field", "scan a plane and write field.csv");
    add_common(field, field_o, true);

    auto* caustic = app.add_subcommand("caustic", "caustic surfaces, sections and edges as CSV");
    add_common(caustic, caustic_o, false);

    auto* rays = app.add_subcommand("rays", "rays reaching a point");
    add_common(rays, rays_o, false);
    std::string point;
    rays->add_option("--point", point, "x~,y~,z in units of beta~")->required();

    auto* cmp = app.add_subcommand("compare", "scan and write a comparison report");
    add_common(cmp, cmp_o, true);

    auto* fres = app.add_subcommand("fresnel", "Fresnel distance and z/z0");
    add_common(fres, fres_o, false);
    std::string zs;
    fres->add_option("--z", zs, "comma list of ranges in units of beta~");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*field) {
            const auto s = build(field_o);
            const auto r = run_field_scan(s);
            write_text(out_path(field_o, "field.csv"), samples_csv(r.samples));
            return report_scan(r);
        }
        if (*caustic) {
            const auto s = build(caustic_o);
            for (const auto& p : run_caustic_export(s, caustic_o.out)) std::cout << p << "\n";
            return 0;
        }
        if (*rays) {
            const auto s = build(rays_o);
            const auto v = split_list(point);
            if (v.size() != 3) throw ConfigError("--point expects x~,y~,z");
            const double bt = s.params.beta_tilde();
            const Point3 r = from_tilde({std::stod(v[0]) * bt, std::stod(v[1]) * bt, std::stod(v[2]) * bt}, s.params);
            const auto res = find_rays_to(r, s.params, s.rays);
            const auto csv = ray_csv(res.rays, bt);
            write_text(out_path(rays_o, "rays.csv"), csv);
            std::cout << csv;
            if (res.near_caustic) std::cerr << "warning: rays coalesce; the point is near a caustic\n";
            return 0;
        }
        if (*cmp) {
            const auto s = build(cmp_o);
            const auto r = run_field_scan(s);
            write_text(out_path(cmp_o, "field.csv"), samples_csv(r.samples));
            if (const int rc = report_scan(r)) return rc;
            const auto rep = compare_methods(r, s.window);
            write_text(out_path(cmp_o, "report.json"), rep.to_json());
            std::cout << rep.to_json();
            return 0;
        }
        if (*fres) {
            const auto s = build(fres_o);
            std::vector<double> z;
            if (zs.empty()) z.push_back(s.frame_z * s.params.beta_tilde());
            for (const auto& t : zs.empty() ? std::vector<std::string>{} : split_list(zs))
                z.push_back(std::stod(t) * s.params.beta_tilde());
            const auto rep = fresnel_report(s.params, z);
            std::cout << rep.to_json();
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ArgumentError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: bad number\n";
        return 2;
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence failure: " << e.what() << "\n";
        return 3;
    } catch (const RegionError& e) {
        std::cerr << "region error: " << e.what() << "\n";
        return 4;
    } catch (const RangeError& e) {
        std::cerr << "region error: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
