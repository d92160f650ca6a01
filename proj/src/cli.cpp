#include "slapmap/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "slapmap/ergodic.hpp"
#include "slapmap/geometry.hpp"
#include "slapmap/kite.hpp"
#include "slapmap/lorenz.hpp"
#include "slapmap/nonergodic.hpp"
#include "slapmap/regular.hpp"
#include "slapmap/triangles.hpp"

namespace slapmap {

namespace {

struct RunConfig {
    int bins_per_unit = 3000;
    double tolerance = 1e-10;
    long max_iter = 1000000;
    int newton_max_iter = 100;
    std::string format = "json";
    std::string out_dir;
};

void emit(const RunConfig& cfg, const std::string& name, const std::string& text) {
    if (cfg.out_dir.empty()) {
        std::cout << text << "\n";
    } else {
        std::filesystem::create_directories(cfg.out_dir);
        std::ofstream f(std::filesystem::path(cfg.out_dir) / name);
        f << text << "\n";
    }
}

nlohmann::json report_json(const ErgodicReport& rep) {
    return nlohmann::json::parse(report_to_json(rep));
}

std::string report_csv(const ErgodicReport& rep) {
    std::ostringstream out;
    out.precision(17);
    out << "component,period,support_lo,support_hi\n";
    for (std::size_t i = 0; i < rep.components.size(); ++i)
        for (auto [lo, hi] : rep.components[i].support)
            out << i << "," << rep.components[i].period << "," << lo << "," << hi << "\n";
    return out.str();
}

void emit_report(const RunConfig& cfg, const std::string& stem, const nlohmann::json& j,
                 const ErgodicReport* rep) {
    if (cfg.format == "csv" && rep != nullptr)
        emit(cfg, stem + ".csv", report_csv(*rep));
    else
        emit(cfg, stem + ".json", j.dump(2));
}

AnalyzeOptions analyze_options(const RunConfig& cfg, bool densities) {
    AnalyzeOptions opts;
    opts.compute_density = densities;
    opts.power_max_iter = cfg.max_iter;
    return opts;
}

int bins_for(const RunConfig& cfg, const Polygon& P) {
    return std::max(100, static_cast<int>(cfg.bins_per_unit * P.perimeter()));
}

void emit_densities(const RunConfig& cfg, const std::string& stem,
                    const ErgodicReport& rep, nlohmann::json* j) {
    if (cfg.out_dir.empty()) return;
    for (std::size_t i = 0; i < rep.components.size(); ++i) {
        if (rep.components[i].density.empty()) continue;
        std::string name = stem + "_density_" + std::to_string(i) + ".csv";
        emit(cfg, name, density_csv(rep, rep.components[i]));
        (*j)["components"][i]["density_csv"] = name;
    }
}

int cmd_analyze(const RunConfig& cfg, const std::string& file) {
    std::ifstream in(file);
    if (!in) {
        std::cerr << "cannot read " << file << "\n";
        return 1;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    Polygon P = polygon_from_json(buf.str());
    if (has_parallel_facing(P)) {
        std::cerr << "polygon has parallel facing sides; slap map is not expanding\n";
        return 3;
    }
    PiecewiseAffineMap psi = extract_slap_map(P);
    ErgodicReport rep = analyze(psi, bins_for(cfg, P), analyze_options(cfg, true));
    nlohmann::json j = report_json(rep);
    emit_densities(cfg, "analyze", rep, &j);
    emit_report(cfg, "analyze", j, &rep);
    return rep.refinement_stable ? 0 : 2;
}

int cmd_regular(const RunConfig& cfg, int d) {
    if (d % 2 == 0) {
        nlohmann::json j;
        j["d"] = d;
        j["involution"] = true;
        j["note"] = "even d: the slap map is an involution; every point has period two";
        emit(cfg, "regular.json", j.dump(2));
        return 0;
    }
    nlohmann::json j = nlohmann::json::parse(regular_report_json(d));
    j["tower"] = nlohmann::json::parse(
        tower_to_json(renormalization_tower(1.0 / std::cos(M_PI / d))));
    Polygon P = regular_polygon(d);
    ErgodicReport rep =
        analyze(extract_slap_map(P), bins_for(cfg, P), analyze_options(cfg, false));
    auto [pred_ergodic, pred_mixing] = predict_acips(d);
    int measured_ergodic = static_cast<int>(rep.components.size());
    int measured_mixing = rep.components.empty() ? 0 : rep.components.front().period;
    bool period_uniform = true;
    for (const auto& c : rep.components)
        if (c.period != measured_mixing) period_uniform = false;
    bool match = measured_ergodic == pred_ergodic && measured_mixing == pred_mixing &&
                 period_uniform && rep.refinement_stable;
    j["measured"] = {{"ergodic", measured_ergodic}, {"mixing", measured_mixing}};
    j["match"] = match;
    j["ulam"] = report_json(rep);
    emit_report(cfg, "regular", j, &rep);
    return match ? 0 : 2;
}

int cmd_triangle(const RunConfig& cfg, double a1, double a2) {
    TriangleSpec spec = triangle_spec(a1, a2);
    TriangleClass cls = classify(spec);
    TrianglePrediction pred = predict_triangle(spec);
    Polygon T = triangle_from_angles(a1, a2);
    ErgodicReport rep =
        analyze(extract_slap_map(T), bins_for(cfg, T), analyze_options(cfg, false));

    nlohmann::json j;
    j["angles"] = {spec.angles[0], spec.angles[1], spec.angles[2]};
    j["class"] = cls == TriangleClass::acute   ? "acute"
                 : cls == TriangleClass::right ? "right"
                                               : "obtuse";
    j["predicted"] = {{"ergodic", pred.ergodic_count},
                      {"parity", pred.parity == MixingParity::one   ? "mixing"
                                 : pred.parity == MixingParity::two ? "period-two"
                                                                    : "even-period"}};
    int measured_period = rep.components.empty() ? 0 : rep.components.front().period;
    j["measured"] = {{"ergodic", static_cast<int>(rep.components.size())},
                     {"period", measured_period}};
    bool match = rep.components.size() == 1 && rep.refinement_stable;
    switch (cls) {
        case TriangleClass::acute:
            match = match && measured_period == 1;
            break;
        case TriangleClass::right:
            match = match && measured_period == 2;
            break;
        case TriangleClass::obtuse:
            match = match && measured_period % 2 == 0;
            break;
    }
    if (cls != TriangleClass::acute) {
        bool inv = check_second_iterate_invariance(T);
        j["second_iterate_invariance"] = inv;
        match = match && inv;
    }
    j["match"] = match;
    j["ulam"] = report_json(rep);
    emit_report(cfg, "triangle", j, &rep);
    return match ? 0 : 2;
}

int cmd_kite_solve(const RunConfig& cfg, double guess_alpha, double guess_beta) {
    NewtonResult root =
        newton_solve(guess_alpha, guess_beta, 1e-12, cfg.newton_max_iter);
    Jacobian2 J = jacobian_pi(root.alpha, root.beta);
    DoublingOrbitReport orbit = verify_doubling_orbit(root.alpha, root.beta, false);
    DoublingOrbitReport mirror = verify_doubling_orbit(root.alpha, root.beta, true);
    nlohmann::json j;
    j["alpha"] = root.alpha;
    j["beta"] = root.beta;
    j["det"] = J.det();
    j["residual"] = root.residual;
    j["iterations"] = root.iterations;
    j["orbit_verified"] = orbit.passed && mirror.passed;
    j["gamma_plus"] = orbit.gamma_plus;
    j["gamma_minus"] = orbit.gamma_minus;
    j["eta"] = orbit.eta;
    emit(cfg, "kite_solve.json", j.dump(2));
    return 0;
}

int cmd_kite_probe(const RunConfig& cfg, double epsilon, int bins) {
    NewtonResult root = newton_solve(1.0, 0.5, 1e-12, cfg.newton_max_iter);
    ProbeResult probe = bifurcation_probe(root.alpha, root.beta, epsilon, bins);
    nlohmann::json j = report_json(probe.report);
    j["quadrant"] = {probe.quadrant[0], probe.quadrant[1]};
    j["perturbation"] = {probe.perturbation[0], probe.perturbation[1]};
    j["pi"] = {probe.pi.plus, probe.pi.minus};
    emit_report(cfg, "kite_probe", j, &probe.report);
    return 0;
}

int cmd_nonergodic(const RunConfig& cfg, int n) {
    NonErgodicResult result = build_nonergodic(n, cfg.bins_per_unit);
    nlohmann::json j;
    j["polygon"] = nlohmann::json::parse(polygon_to_json(result.polygon));
    j["report"] = report_json(result.report);
    j["apex_angle"] = result.apex_angle;
    j["n"] = n;
    emit_report(cfg, "nonergodic", j, &result.report);
    bool ok = static_cast<int>(result.report.components.size()) == n &&
              result.report.refinement_stable;
    for (const auto& c : result.report.components)
        if (c.period % 2 != 0) ok = false;
    return ok ? 0 : 2;
}

}  // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"slap map construction and ergodic analysis for simple polygons"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    app.add_option("--bins", cfg.bins_per_unit, "cells per unit of perimeter");
    app.add_option("--tol", cfg.tolerance, "numerical tolerance");
    app.add_option("--max-iter", cfg.max_iter, "power iteration cap");
    app.add_option("--format", cfg.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", cfg.out_dir, "output directory (default: stdout)");

    std::string polygon_file;
    auto* analyze_cmd = app.add_subcommand("analyze", "analyze a polygon JSON file");
    analyze_cmd->add_option("file", polygon_file, "polygon JSON")->required();

    int d = 0;
    auto* regular_cmd = app.add_subcommand("regular", "regular d-gon report");
    regular_cmd->add_option("d", d, "number of sides")->required()
        ->check(CLI::Range(3, 1000));

    double a1 = 0.0, a2 = 0.0;
    auto* triangle_cmd = app.add_subcommand("triangle", "triangle report");
    triangle_cmd->add_option("a1", a1, "first angle (radians)")->required();
    triangle_cmd->add_option("a2", a2, "second angle (radians)")->required();

    auto* kite_cmd = app.add_subcommand("kite", "kite doubling-orbit tools");
    double guess_alpha = 1.0, guess_beta = 0.5, epsilon = 1e-3;
    int probe_bins = 4000;
    auto* solve_cmd = kite_cmd->add_subcommand("solve", "Newton solve for the root");
    solve_cmd->add_option("--alpha", guess_alpha, "initial alpha");
    solve_cmd->add_option("--beta", guess_beta, "initial beta");
    auto* probe_cmd = kite_cmd->add_subcommand("probe", "bifurcation probe");
    probe_cmd->add_option("--epsilon", epsilon, "perturbation radius");
    probe_cmd->add_option("--probe-bins", probe_bins, "Ulam cells for the probe");
    kite_cmd->require_subcommand(1);

    int ncomp = 0;
    auto* nonergodic_cmd =
        app.add_subcommand("nonergodic", "convex 3n-gon with n ergodic components");
    nonergodic_cmd->add_option("n", ncomp, "number of components")->required()
        ->check(CLI::Range(2, 64));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*analyze_cmd) return cmd_analyze(cfg, polygon_file);
        if (*regular_cmd) return cmd_regular(cfg, d);
        if (*triangle_cmd) return cmd_triangle(cfg, a1, a2);
        if (*kite_cmd) {
            if (*solve_cmd) return cmd_kite_solve(cfg, guess_alpha, guess_beta);
            return cmd_kite_probe(cfg, epsilon, probe_bins);
        }
        if (*nonergodic_cmd) return cmd_nonergodic(cfg, ncomp);
    } catch (const NotExpanding& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace slapmap
