// patchnoise command line: single-point evaluation, distance sweeps with
// CSV/SVG output, and the cross-backend validation suite. Links the C API of
// the shared library only.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "patchnoise.h"

using nlohmann::json;

namespace {

// exit codes: 0 ok, 1 validation failure, 2 config error, 3 numerical failure
constexpr int exit_ok = 0;
constexpr int exit_validation = 1;
constexpr int exit_config = 2;
constexpr int exit_numerical = 3;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int exit_for(pn_status s) {
    switch (s) {
        case PN_OK: return exit_ok;
        case PN_E_NOT_CONVERGED:
        case PN_E_LOG_ZERO:
        case PN_E_INTERNAL: return exit_numerical;
        default: return exit_config;
    }
}

struct PatchSpec {
    pn_patch patch{PN_PATCH_PP, 0};
    std::string label;
};

struct CurveSpec {
    std::string mode_label;
    pn_mode mode = PN_MODE_NORMAL;
    std::vector<PatchSpec> patches;
};

struct Config {
    pn_geometry kind = PN_SPHERE;
    double xi0 = 0.0;
    std::string geometry_label = "sphere";
    std::vector<CurveSpec> curves;
    double d_point = 1.0;
    double grid_min = 1e-2, grid_max = 1e2;
    int grid_points = 41;
    pn_backend backend = PN_BACKEND_AUTO;
    int lmax = 256;
    double delta = 0.0;
    double a_over_n = 1.0;
    double h = 0.05;
    bool richardson = false;
    std::string out_path;
    std::string svg_path;
};

pn_mode parse_mode(pn_geometry kind, const std::string& label) {
    const std::string n = pn_mode_label(kind, PN_MODE_NORMAL);
    const std::string t = pn_mode_label(kind, PN_MODE_TRANSVERSE);
    if (label == n || label == "normal") return PN_MODE_NORMAL;
    if (label == t || label == "transverse") return PN_MODE_TRANSVERSE;
    throw ConfigError("mode '" + label + "' is not valid for this geometry (use '" + n + "' or '" +
                      t + "')");
}

PatchSpec parse_patch(const json& j) {
    PatchSpec p;
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "ip") {
            p.patch = {PN_PATCH_IP, 0};
        } else if (s == "pp") {
            p.patch = {PN_PATCH_PP, 0};
        } else if (s.rfind("trunc", 0) == 0) {
            p.patch = {PN_PATCH_TRUNCATED, std::atoi(s.c_str() + 5)};
            if (p.patch.l0 <= 0) throw ConfigError("bad truncation spec '" + s + "'");
        } else {
            throw ConfigError("unknown patch spec '" + s + "'");
        }
    } else if (j.is_object() && j.contains("theta_zeta")) {
        const double tz = j.at("theta_zeta").get<double>();
        const int l0 = pn_truncation_for_patch_size(tz);
        if (l0 <= 0) throw ConfigError("patch size theta_zeta must be positive");
        p.patch = {PN_PATCH_TRUNCATED, l0};
    } else if (j.is_object() && j.contains("l0")) {
        p.patch = {PN_PATCH_TRUNCATED, j.at("l0").get<int>()};
        if (p.patch.l0 <= 0) throw ConfigError("truncation l0 must be positive");
    } else {
        throw ConfigError("patch entries are \"ip\", \"pp\", \"truncN\", {\"theta_zeta\":x} or {\"l0\":n}");
    }
    switch (p.patch.regime) {
        case PN_PATCH_IP: p.label = "ip"; break;
        case PN_PATCH_PP: p.label = "pp"; break;
        case PN_PATCH_TRUNCATED: p.label = "trunc" + std::to_string(p.patch.l0); break;
    }
    return p;
}

void parse_geometry(Config& c, const json& j) {
    std::string kind;
    double xi0 = 0.0;
    if (j.is_string()) {
        kind = j.get<std::string>();
    } else if (j.is_object()) {
        kind = j.at("kind").get<std::string>();
        if (j.contains("xi0")) xi0 = j.at("xi0").get<double>();
    } else {
        throw ConfigError("geometry must be a string or an object with a kind");
    }
    if (kind == "plane") c.kind = PN_PLANE;
    else if (kind == "hole") c.kind = PN_HOLE;
    else if (kind == "sphere") c.kind = PN_SPHERE;
    else if (kind == "prolate") c.kind = PN_PROLATE;
    else if (kind == "oblate" || kind == "disc") c.kind = PN_OBLATE;
    else throw ConfigError("unknown geometry '" + kind + "'");
    c.geometry_label = (kind == "disc") ? "oblate" : kind;
    c.xi0 = xi0;
    if (c.kind == PN_PROLATE && !(xi0 > 1.0))
        throw ConfigError("prolate geometry needs xi0 > 1");
    if (c.kind == PN_OBLATE && xi0 < 0.0) throw ConfigError("oblate geometry needs xi0 >= 0");
}

void apply_json(Config& c, const json& j) {
    if (j.contains("geometry")) parse_geometry(c, j.at("geometry"));
    if (j.contains("backend")) {
        const std::string b = j.at("backend").get<std::string>();
        if (b == "auto") c.backend = PN_BACKEND_AUTO;
        else if (b == "closed") c.backend = PN_BACKEND_CLOSED;
        else if (b == "spectral") c.backend = PN_BACKEND_SPECTRAL;
        else if (b == "quadrature") c.backend = PN_BACKEND_QUADRATURE;
        else throw ConfigError("unknown backend '" + b + "'");
    }
    if (j.contains("lmax")) c.lmax = j.at("lmax").get<int>();
    if (j.contains("delta")) c.delta = j.at("delta").get<double>();
    if (j.contains("a_over_n")) c.a_over_n = j.at("a_over_n").get<double>();
    if (j.contains("h")) c.h = j.at("h").get<double>();
    if (j.contains("richardson")) c.richardson = j.at("richardson").get<bool>();
    if (j.contains("D")) c.d_point = j.at("D").get<double>();
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        c.grid_min = g.at("min").get<double>();
        c.grid_max = g.at("max").get<double>();
        c.grid_points = g.at("points").get<int>();
    }
    if (j.contains("out")) c.out_path = j.at("out").get<std::string>();
    if (j.contains("svg")) c.svg_path = j.at("svg").get<std::string>();

    auto parse_curve = [&](const json& cj) {
        CurveSpec cs;
        cs.mode_label = cj.at("mode").get<std::string>();
        cs.mode = parse_mode(c.kind, cs.mode_label);
        cs.mode_label = pn_mode_label(c.kind, cs.mode);
        for (const auto& pj : cj.at("patches")) cs.patches.push_back(parse_patch(pj));
        return cs;
    };
    if (j.contains("curves")) {
        c.curves.clear();
        for (const auto& cj : j.at("curves")) c.curves.push_back(parse_curve(cj));
    } else if (j.contains("mode")) {
        c.curves.clear();
        CurveSpec cs;
        cs.mode_label = j.at("mode").get<std::string>();
        cs.mode = parse_mode(c.kind, cs.mode_label);
        cs.mode_label = pn_mode_label(c.kind, cs.mode);
        if (j.contains("patches"))
            for (const auto& pj : j.at("patches")) cs.patches.push_back(parse_patch(pj));
        else if (j.contains("patch"))
            cs.patches.push_back(parse_patch(j.at("patch")));
        else
            cs.patches.push_back(parse_patch(json("pp")));
        c.curves.push_back(cs);
    }
}

json preset_config(const std::string& name) {
    if (name == "fig8") {
        return json::parse(R"({
          "geometry": "sphere",
          "grid": {"min": 1e-4, "max": 1e2, "points": 41},
          "curves": [
            {"mode": "r", "patches": ["ip", "pp", {"theta_zeta": 1e-1}, {"theta_zeta": 1e-2},
                                      {"theta_zeta": 1e-3}, {"theta_zeta": 1e-4}]},
            {"mode": "theta", "patches": ["pp", {"theta_zeta": 1e-1}, {"theta_zeta": 1e-2},
                                          {"theta_zeta": 1e-3}, {"theta_zeta": 1e-4}]}
          ]
        })");
    }
    if (name == "fig10") {
        json j = json::parse(R"({
          "grid": {"min": 1e-2, "max": 1e3, "points": 61},
          "curves": [
            {"mode": "xi", "patches": ["ip", {"theta_zeta": 0.4}, {"theta_zeta": 0.04}]},
            {"mode": "eta", "patches": [{"theta_zeta": 0.4}, {"theta_zeta": 0.04}]}
          ]
        })");
        j["geometry"] = {{"kind", "prolate"}, {"xi0", 100.0 / (3.0 * std::sqrt(1111.0))}};
        return j;
    }
    if (name == "fig11") {
        return json::parse(R"({
          "geometry": {"kind": "oblate", "xi0": 0.0},
          "delta": 0.1,
          "grid": {"min": 1e-3, "max": 1e2, "points": 51},
          "curves": [
            {"mode": "xi", "patches": ["ip", {"theta_zeta": 0.4}, {"theta_zeta": 0.04}]},
            {"mode": "eta", "patches": [{"theta_zeta": 0.4}, {"theta_zeta": 0.04}]}
          ]
        })");
    }
    throw ConfigError("unknown preset '" + name + "' (use fig8, fig10 or fig11)");
}

struct ModelHandle {
    pn_model* m = nullptr;
    ~ModelHandle() { pn_model_destroy(m); }
};

void make_model(const Config& c, ModelHandle& h) {
    pn_status s = pn_model_create(c.kind, c.xi0, &h.m);
    if (s != PN_OK) throw ConfigError(pn_status_message(s));
    if (pn_model_set_lmax(h.m, c.lmax) != PN_OK) throw ConfigError("bad lmax");
    if (c.delta > 0.0 && pn_model_set_edge_delta(h.m, c.delta) != PN_OK)
        throw ConfigError("bad delta");
    if (pn_model_set_area_ratio(h.m, c.a_over_n) != PN_OK) throw ConfigError("bad a_over_n");
    if (pn_model_set_log_step(h.m, c.h, c.richardson ? 1 : 0) != PN_OK)
        throw ConfigError("bad log step h");
}

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

const char* backend_name(int b) {
    switch (b) {
        case PN_BACKEND_CLOSED: return "closed";
        case PN_BACKEND_SPECTRAL: return "spectral";
        case PN_BACKEND_QUADRATURE: return "quadrature";
    }
    return "auto";
}

struct CurveData {
    std::string mode, patch, backend;
    std::vector<double> d, lambda, alpha;
};

int run_curves(const Config& c, std::vector<CurveData>& out, std::string& diag) {
    ModelHandle h;
    make_model(c, h);
    std::vector<double> grid(static_cast<size_t>(c.grid_points));
    if (c.grid_points < 2 || !(c.grid_min > 0.0) || !(c.grid_max > c.grid_min))
        throw ConfigError("grid needs 0 < min < max and points >= 2");
    const double l0 = std::log10(c.grid_min), l1 = std::log10(c.grid_max);
    for (int i = 0; i < c.grid_points; ++i)
        grid[static_cast<size_t>(i)] = std::pow(10.0, l0 + (l1 - l0) * i / (c.grid_points - 1));

    for (const auto& curve : c.curves) {
        for (const auto& patch : curve.patches) {
            CurveData data;
            data.mode = curve.mode_label;
            data.patch = patch.label;
            pn_eval probe;
            pn_status s = pn_lambda(h.m, curve.mode, patch.patch, c.backend, grid[0], &probe);
            if (s != PN_OK) {
                diag = std::string(pn_status_message(s)) + ": " + pn_model_last_error(h.m);
                return exit_for(s);
            }
            data.backend = backend_name(probe.backend_used);
            data.d = grid;
            data.lambda.resize(grid.size());
            data.alpha.resize(grid.size());
            s = pn_sweep(h.m, curve.mode, patch.patch, c.backend, grid.data(), grid.size(),
                         data.lambda.data(), data.alpha.data());
            if (s != PN_OK) {
                diag = std::string(pn_status_message(s)) + ": " + pn_model_last_error(h.m);
                return exit_for(s);
            }
            out.push_back(std::move(data));
        }
    }
    return exit_ok;
}

void write_csv(const Config& c, const std::vector<CurveData>& curves, std::ostream& os) {
    os << "geometry,mode,patch,backend,D,lambda,alpha\n";
    for (const auto& cv : curves)
        for (size_t i = 0; i < cv.d.size(); ++i)
            os << c.geometry_label << ',' << cv.mode << ',' << cv.patch << ',' << cv.backend << ','
               << fmt9(cv.d[i]) << ',' << fmt9(cv.lambda[i]) << ',' << fmt9(cv.alpha[i]) << '\n';
}

// minimal self-contained SVG: log-x axis, one polyline per curve, reference
// alpha = 4 dashed, truncated curves dotted, IP/PP solid
void write_svg(const std::vector<CurveData>& curves, std::ostream& os) {
    const double w = 760, hgt = 500, ml = 64, mr = 150, mt = 24, mb = 48;
    double xmin = 1e300, xmax = -1e300, ymin = 0.0, ymax = 4.0;
    for (const auto& cv : curves)
        for (size_t i = 0; i < cv.d.size(); ++i) {
            xmin = std::min(xmin, std::log10(cv.d[i]));
            xmax = std::max(xmax, std::log10(cv.d[i]));
            ymin = std::min(ymin, cv.alpha[i]);
            ymax = std::max(ymax, cv.alpha[i]);
        }
    ymax += 0.3;
    ymin -= 0.3;
    auto X = [&](double lx) { return ml + (lx - xmin) / (xmax - xmin) * (w - ml - mr); };
    auto Y = [&](double a) { return hgt - mb - (a - ymin) / (ymax - ymin) * (hgt - mt - mb); };
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << hgt
       << "\" viewBox=\"0 0 " << w << ' ' << hgt << "\">\n";
    os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << (w - ml - mr) << "\" height=\""
       << (hgt - mt - mb) << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int e = static_cast<int>(std::ceil(xmin)); e <= static_cast<int>(std::floor(xmax)); ++e) {
        os << "<line x1=\"" << fmt9(X(e)) << "\" y1=\"" << (hgt - mb) << "\" x2=\"" << fmt9(X(e))
           << "\" y2=\"" << (hgt - mb + 6) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << fmt9(X(e)) << "\" y=\"" << (hgt - mb + 20)
           << "\" font-size=\"11\" text-anchor=\"middle\">1e" << e << "</text>\n";
    }
    for (int a = static_cast<int>(std::ceil(ymin)); a <= static_cast<int>(std::floor(ymax)); ++a) {
        os << "<line x1=\"" << (ml - 6) << "\" y1=\"" << fmt9(Y(a)) << "\" x2=\"" << ml
           << "\" y2=\"" << fmt9(Y(a)) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << (ml - 10) << "\" y=\"" << fmt9(Y(a) + 4)
           << "\" font-size=\"11\" text-anchor=\"end\">" << a << "</text>\n";
    }
    os << "<text x=\"" << (ml + (w - ml - mr) / 2) << "\" y=\"" << (hgt - 10)
       << "\" font-size=\"12\" text-anchor=\"middle\">D</text>\n";
    os << "<text x=\"16\" y=\"" << (mt + (hgt - mt - mb) / 2)
       << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
       << (mt + (hgt - mt - mb) / 2) << ")\">alpha</text>\n";
    if (ymin <= 4.0 && 4.0 <= ymax)
        os << "<line x1=\"" << ml << "\" y1=\"" << fmt9(Y(4.0)) << "\" x2=\"" << (w - mr)
           << "\" y2=\"" << fmt9(Y(4.0))
           << "\" stroke=\"gray\" stroke-dasharray=\"8,4\"/>\n";
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    int ci = 0, ly = static_cast<int>(mt) + 10;
    for (const auto& cv : curves) {
        const char* color = colors[ci % 8];
        const bool dotted = cv.patch.rfind("trunc", 0) == 0;
        os << "<polyline fill=\"none\" stroke=\"" << color << "\"";
        if (dotted) os << " stroke-dasharray=\"2,3\"";
        os << " points=\"";
        for (size_t i = 0; i < cv.d.size(); ++i)
            os << fmt9(X(std::log10(cv.d[i]))) << ',' << fmt9(Y(cv.alpha[i])) << ' ';
        os << "\"/>\n";
        os << "<text x=\"" << (w - mr + 8) << "\" y=\"" << ly << "\" font-size=\"11\" fill=\""
           << color << "\">" << cv.mode << ":" << cv.patch << "</text>\n";
        ly += 14;
        ++ci;
    }
    os << "</svg>\n";
}

int cmd_point(const Config& c) {
    if (c.curves.empty() || c.curves[0].patches.empty())
        throw ConfigError("point needs a mode and a patch model");
    ModelHandle h;
    make_model(c, h);
    const auto& cv = c.curves[0];
    const auto& p = cv.patches[0];
    pn_eval ev;
    pn_status s = pn_lambda(h.m, cv.mode, p.patch, c.backend, c.d_point, &ev);
    if (s != PN_OK) {
        std::cerr << "error: " << pn_status_message(s) << ": " << pn_model_last_error(h.m) << "\n";
        return exit_for(s);
    }
    double alpha;
    s = pn_alpha(h.m, cv.mode, p.patch, c.backend, c.d_point, &alpha);
    if (s != PN_OK) {
        std::cerr << "error: " << pn_status_message(s) << ": " << pn_model_last_error(h.m) << "\n";
        return exit_for(s);
    }
    std::cout << c.geometry_label << ',' << cv.mode_label << ',' << p.label << ','
              << backend_name(ev.backend_used) << ',' << fmt9(c.d_point) << ',' << fmt9(ev.lambda)
              << ',' << fmt9(alpha) << '\n';
    return exit_ok;
}

int cmd_sweep(const Config& c) {
    if (c.curves.empty()) throw ConfigError("sweep needs at least one curve (mode + patches)");
    std::vector<CurveData> curves;
    std::string diag;
    const int rc = run_curves(c, curves, diag);
    if (rc != exit_ok) {
        std::cerr << "error: " << diag << "\n";
        return rc;
    }
    if (c.out_path.empty()) {
        write_csv(c, curves, std::cout);
    } else {
        std::ofstream os(c.out_path, std::ios::binary);
        if (!os) throw ConfigError("cannot open output file '" + c.out_path + "'");
        write_csv(c, curves, os);
    }
    if (!c.svg_path.empty()) {
        std::ofstream os(c.svg_path, std::ios::binary);
        if (!os) throw ConfigError("cannot open svg file '" + c.svg_path + "'");
        write_svg(curves, os);
    }
    return exit_ok;
}

void validate_print(const char* name, int pass, double worst, double tol, void* user) {
    auto* failed = static_cast<int*>(user);
    if (!pass) ++*failed;
    std::printf("%s %-32s worst=%.3e tol=%.1e\n", pass ? "PASS" : "FAIL", name, worst, tol);
}

int cmd_validate(const std::string& subset) {
    int failed = 0;
    const pn_status s = pn_validate(subset.c_str(), validate_print, &failed, nullptr);
    if (s != PN_OK) {
        std::cerr << "error: " << pn_status_message(s) << "\n";
        return exit_numerical;
    }
    if (failed > 0) {
        std::printf("%d check(s) failed\n", failed);
        return exit_validation;
    }
    std::printf("all checks passed\n");
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"patch-potential field noise above conducting electrodes"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print help"); // keep -h free for the --h step option

    std::string config_path, preset, out_path, svg_path, subset;
    double delta = -1.0, a_over_n = -1.0, h = -1.0, d_point = -1.0;
    int lmax = -1;
    std::string geometry_arg, mode_arg, patch_arg, backend_arg;
    bool richardson = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->set_help_flag("--help", "print help");
        cmd->add_option("--config", config_path, "JSON configuration file");
        cmd->add_option("--preset", preset, "fig8|fig10|fig11");
        cmd->add_option("--out", out_path, "CSV output path (default stdout)");
        cmd->add_option("--svg", svg_path, "SVG output path");
        cmd->add_option("--delta", delta, "edge exclusion parameter");
        cmd->add_option("--a-over-n", a_over_n, "patch area ratio A/N");
        cmd->add_option("--lmax", lmax, "series degree cap");
        cmd->add_option("--h", h, "log-distance step for alpha");
        cmd->add_flag("--richardson", richardson, "Richardson-extrapolate alpha");
        cmd->add_option("--geometry", geometry_arg, "plane|hole|sphere|prolate:XI0|oblate:XI0");
        cmd->add_option("--mode", mode_arg, "field mode label (z,x,s,r,theta,xi,eta)");
        cmd->add_option("--patch", patch_arg, "ip|pp|truncN|thetaN (theta_zeta value)");
        cmd->add_option("--backend", backend_arg, "auto|closed|spectral|quadrature");
    };

    CLI::App* point = app.add_subcommand("point", "evaluate lambda and alpha at one distance");
    add_common(point);
    point->add_option("--D", d_point, "dimensionless distance");

    CLI::App* sweep = app.add_subcommand("sweep", "distance sweep to CSV (and optional SVG)");
    add_common(sweep);

    CLI::App* validate = app.add_subcommand("validate", "run the cross-backend check suite");
    validate->add_option("--subset", subset, "run only checks whose name contains this substring");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_config;
    }

    try {
        if (validate->parsed()) return cmd_validate(subset);

        Config cfg;
        json j;
        if (!preset.empty()) j = preset_config(preset);
        if (!config_path.empty()) {
            std::ifstream is(config_path);
            if (!is) throw ConfigError("cannot open config file '" + config_path + "'");
            json file_j = json::parse(is);
            j.merge_patch(file_j);
        }
        // flag overrides
        if (!geometry_arg.empty()) {
            const auto colon = geometry_arg.find(':');
            if (colon == std::string::npos) j["geometry"] = geometry_arg;
            else
                j["geometry"] = {{"kind", geometry_arg.substr(0, colon)},
                                 {"xi0", std::stod(geometry_arg.substr(colon + 1))}};
        }
        if (!mode_arg.empty()) {
            j["mode"] = mode_arg;
            j.erase("curves");
        }
        if (!patch_arg.empty()) {
            if (patch_arg.rfind("theta", 0) == 0 && patch_arg != "theta")
                j["patch"] = {{"theta_zeta", std::stod(patch_arg.substr(5))}};
            else
                j["patch"] = patch_arg;
            if (j.contains("mode")) j.erase("patches");
        }
        if (!backend_arg.empty()) j["backend"] = backend_arg;
        apply_json(cfg, j);
        if (lmax > 0) cfg.lmax = lmax;
        if (delta >= 0.0) cfg.delta = delta;
        if (a_over_n > 0.0) cfg.a_over_n = a_over_n;
        if (h > 0.0) cfg.h = h;
        if (richardson) cfg.richardson = true;
        if (d_point > 0.0) cfg.d_point = d_point;
        if (!out_path.empty()) cfg.out_path = out_path;
        if (!svg_path.empty()) cfg.svg_path = svg_path;

        if (point->parsed()) return cmd_point(cfg);
        return cmd_sweep(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_numerical;
    }
}
