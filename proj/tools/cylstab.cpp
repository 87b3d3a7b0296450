// Command-line front end: single-point index queries, spectrum tables,
// parameter sweeps, solver cross-checks, and bifurcation reports.
//
// Exit codes: 0 ok, 1 usage or domain error, 2 strict-mode disagreement,
// 3 oracle non-convergence or failed cross-check.  Output is fully buffered
// and written only after the computation finishes, so an error never leaves
// partial output behind.

#include <clocale>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cylstab/bifurcation.hpp"
#include "cylstab/geometry.hpp"
#include "cylstab/oracle.hpp"
#include "cylstab/report.hpp"
#include "cylstab/spectra.hpp"

namespace {

using namespace cylstab;

struct CommonOpts {
    std::string scenario;
    double R = 0.0;
    double r = 0.0;
    double T = 0.0;
    double H0 = 0.0;
    double rho = 0.0;
    double tau = 0.0;
    int grid_n = 2000;
    int m_max = 8;
    int n_max = 3;
    double tol = 1e-3;
    std::string format;
    std::string output;
    bool strict = false;
    bool with_oracle = false;
    bool half_circle = false;
    bool has_R = false, has_r = false, has_T = false, has_H0 = false, has_rho = false,
         has_tau = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_scenario) {
    if (needs_scenario)
        cmd->add_option("--scenario", o.scenario,
                        "dirichlet | geodesic-spheres | horospheres | half-geodesic-plane"
                        " | half-horosphere | equidistant | ball | slab-horosphere")
            ->required();
    auto* optR = cmd->add_option("--R", o.R, "cylinder parameter R (radius sinh R)");
    auto* optr = cmd->add_option("--r", o.r, "cylinder radius r = sinh R");
    optR->excludes(optr);
    cmd->add_option("--T", o.T, "piece length");
    cmd->add_option("--H0", o.H0, "mean curvature of the support surface");
    cmd->add_option("--rho", o.rho, "radius of the supporting sphere");
    cmd->add_option("--tau", o.tau, "height of the horosphere strip");
    cmd->add_option("--grid-n", o.grid_n, "solver subintervals")->capture_default_str();
    cmd->add_option("--m-max", o.m_max, "longitudinal modes listed")
        ->capture_default_str();
    cmd->add_option("--n-max", o.n_max, "angular modes listed")->capture_default_str();
    cmd->add_option("--tol", o.tol, "tolerance for cross-checks")->capture_default_str();
    cmd->add_option("--format", o.format, "csv or json");
    cmd->add_option("--output", o.output, "output file (default: standard output)");
    cmd->add_flag("--strict", o.strict, "exit 2 when formula or oracle disagree");
    cmd->add_flag("--oracle", o.with_oracle, "also run the independent solver");
    cmd->add_flag("--half-circle", o.half_circle,
                  "angular half circle with fixed sides (dirichlet scenario only)");
    cmd->callback([cmd, &o]() {
        o.has_R = cmd->count("--R") > 0;
        o.has_r = cmd->count("--r") > 0;
        o.has_T = cmd->count("--T") > 0;
        o.has_H0 = cmd->count("--H0") > 0;
        o.has_rho = cmd->count("--rho") > 0;
        o.has_tau = cmd->count("--tau") > 0;
    });
}

ScenarioKind parse_scenario(const std::string& name) {
    if (name == "dirichlet") return ScenarioKind::Dirichlet;
    if (name == "geodesic-spheres" || name == "spheres") return ScenarioKind::GeodesicSpheres;
    if (name == "horospheres") return ScenarioKind::Horospheres;
    if (name == "half-geodesic-plane" || name == "half-plane")
        return ScenarioKind::HalfGeodesicPlane;
    if (name == "half-horosphere") return ScenarioKind::HalfHorosphere;
    if (name == "equidistant") return ScenarioKind::Equidistant;
    if (name == "ball") return ScenarioKind::Ball;
    if (name == "slab-horosphere" || name == "slab") return ScenarioKind::SlabHorosphere;
    throw std::domain_error("unknown scenario: " + name);
}

bool needs_radius(ScenarioKind k) { return k != ScenarioKind::SlabHorosphere; }
bool needs_T(ScenarioKind k) {
    return k != ScenarioKind::Ball;
}

std::optional<CylinderGeometry> make_geometry(ScenarioKind k, const CommonOpts& o) {
    if (!needs_radius(k)) {
        if (o.has_R || o.has_r)
            throw std::domain_error("the horosphere strip takes no cylinder radius");
        return std::nullopt;
    }
    if (o.has_R == o.has_r)
        throw std::domain_error("provide exactly one of --R and --r");
    if (o.has_R) return cylinder_geometry(o.R);
    return cylinder_geometry_from_r(o.r);
}

SupportScenario make_scenario(ScenarioKind k, const CommonOpts& o) {
    if (o.half_circle && k != ScenarioKind::Dirichlet)
        throw std::domain_error("--half-circle applies to the dirichlet scenario only");
    if (needs_T(k) && !o.has_T) throw std::domain_error("--T is required");
    if (!needs_T(k) && o.has_T)
        throw std::domain_error("the ball scenario derives its length, drop --T");
    switch (k) {
        case ScenarioKind::Dirichlet: {
            SupportScenario s = SupportScenario::dirichlet(o.T);
            if (o.half_circle) s.angular_domain = AngularDomain::HalfCircleDirichlet;
            return s;
        }
        case ScenarioKind::GeodesicSpheres: return SupportScenario::geodesic_spheres(o.T);
        case ScenarioKind::Horospheres: return SupportScenario::horospheres(o.T);
        case ScenarioKind::HalfGeodesicPlane:
            return SupportScenario::half_geodesic_plane(o.T);
        case ScenarioKind::HalfHorosphere: return SupportScenario::half_horosphere(o.T);
        case ScenarioKind::Equidistant:
            if (!o.has_H0) throw std::domain_error("--H0 is required for equidistant");
            return SupportScenario::equidistant(o.H0, o.T);
        case ScenarioKind::Ball:
            if (!o.has_H0 || !o.has_rho)
                throw std::domain_error("--H0 and --rho are required for ball");
            return SupportScenario::ball(o.H0, o.rho);
        case ScenarioKind::SlabHorosphere:
            if (!o.has_tau) throw std::domain_error("--tau is required for slab-horosphere");
            return SupportScenario::slab_horosphere(o.tau, o.T);
    }
    throw std::logic_error("unhandled scenario kind");
}

std::string pick_format(const CommonOpts& o, const char* def) {
    std::string f = o.format.empty() ? def : o.format;
    if (f != "csv" && f != "json") throw std::domain_error("--format must be csv or json");
    return f;
}

void emit(const CommonOpts& o, const std::string& text) {
    if (o.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(o.output, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + o.output);
    out << text;
}

double effective_T(const SupportScenario& s, const std::optional<CylinderGeometry>& geom) {
    if (s.kind == ScenarioKind::Ball) return ball_geometry(s.H0, s.rho, geom->r).T;
    return s.T;
}

int run_index(const CommonOpts& o) {
    const ScenarioKind kind = parse_scenario(o.scenario);
    const auto geom = make_geometry(kind, o);
    const SupportScenario s = make_scenario(kind, o);
    IndexOptions opts;
    opts.m_max = o.m_max;
    opts.n_max = o.n_max;
    const IndexReport rep = index_report(s, geom, opts);
    std::optional<OracleIndex> oracle;
    if (o.with_oracle) oracle = oracle_index(s, geom, o.grid_n);
    const std::string fmt = pick_format(o, "json");
    std::string text = fmt == "json"
                           ? index_json(s, geom, rep, oracle).dump(2) + "\n"
                           : index_csv(s, geom, rep, oracle);
    emit(o, text);
    if (oracle && !oracle->converged) return 3;
    const bool oracle_mismatch = oracle && oracle->count != rep.counted_index;
    if (o.strict && (!rep.agrees || oracle_mismatch)) return 2;
    return 0;
}

int run_spectrum(const CommonOpts& o) {
    const ScenarioKind kind = parse_scenario(o.scenario);
    const auto geom = make_geometry(kind, o);
    const SupportScenario s = make_scenario(kind, o);
    const auto entries = scenario_spectrum(s, geom, o.m_max, o.n_max);
    const std::string fmt = pick_format(o, "csv");
    std::string text =
        fmt == "csv" ? spectrum_csv(entries) : spectrum_json(entries).dump(2) + "\n";
    emit(o, text);
    return 0;
}

struct SweepOpts {
    std::string param = "T";
    double from = 0.0;
    double to = 0.0;
    double step = 0.0;
    int points = 0;
    bool log_scale = false;
};

std::vector<double> sweep_values(const SweepOpts& so) {
    std::vector<double> vals;
    if (so.log_scale || so.points > 0) {
        if (so.points < 2)
            throw std::domain_error("--points must be >= 2 for a point-count sweep");
        if (so.log_scale && !(so.from > 0.0 && so.to > 0.0))
            throw std::domain_error("--log requires positive endpoints");
        for (int i = 0; i < so.points; ++i) {
            const double f = static_cast<double>(i) / (so.points - 1);
            vals.push_back(so.log_scale
                               ? so.from * std::pow(so.to / so.from, f)
                               : so.from + (so.to - so.from) * f);
        }
        return vals;
    }
    if (!(so.step > 0.0)) throw std::domain_error("--step must be positive");
    for (double v = so.from; v <= so.to + 1e-9 * so.step; v += so.step) vals.push_back(v);
    return vals;
}

int run_sweep(const CommonOpts& o, const SweepOpts& so) {
    const ScenarioKind kind = parse_scenario(o.scenario);
    if (so.param != "T" && so.param != "r")
        throw std::domain_error("--sweep-param must be T or r");
    if (so.param == "T" && kind == ScenarioKind::Ball)
        throw std::domain_error("the ball scenario derives its length, sweep r instead");
    if (so.param == "r" && !needs_radius(kind))
        throw std::domain_error("the horosphere strip takes no cylinder radius");

    const std::vector<double> vals = sweep_values(so);

    // Pre-validate and build every point before producing any output.
    struct Point {
        SupportScenario s;
        std::optional<CylinderGeometry> geom;
    };
    std::vector<Point> pts;
    pts.reserve(vals.size());
    for (double v : vals) {
        CommonOpts p = o;
        if (so.param == "T") {
            p.T = v;
            p.has_T = true;
        } else {
            p.r = v;
            p.has_r = true;
            p.has_R = false;
        }
        const auto geom = make_geometry(kind, p);
        pts.push_back({make_scenario(kind, p), geom});
    }

    IndexOptions opts;
    opts.m_max = o.m_max;
    opts.n_max = o.n_max;
    std::vector<SweepRow> rows;
    rows.reserve(pts.size());
    for (const auto& pt : pts) {
        const IndexReport rep = index_report(pt.s, pt.geom, opts);
        SweepRow row;
        row.scenario = scenario_name(kind);
        if (pt.geom) {
            row.R = pt.geom->R;
            row.r = pt.geom->r;
            row.threshold_strong = critical_length(*pt.geom, CriticalKind::Strong);
            row.threshold_stable = critical_length(*pt.geom, CriticalKind::Stable);
        }
        row.T = effective_T(pt.s, pt.geom);
        if (kind == ScenarioKind::Ball || kind == ScenarioKind::Equidistant)
            row.H0 = pt.s.H0;
        row.counted_index = rep.counted_index;
        row.paper_index = rep.paper_index;
        row.lambda_min = rep.lambda_min;
        rows.push_back(std::move(row));
    }
    const std::string fmt = pick_format(o, "csv");
    std::string text = fmt == "csv" ? sweep_csv(rows) : sweep_json(rows).dump(2) + "\n";
    emit(o, text);
    return 0;
}

int run_oracle_check(const CommonOpts& o) {
    const ScenarioKind kind = parse_scenario(o.scenario);
    const auto geom = make_geometry(kind, o);
    const SupportScenario s = make_scenario(kind, o);
    const CrosscheckReport rep = crosscheck(s, geom, o.grid_n, o.tol);
    const std::string fmt = pick_format(o, "json");
    std::string text = fmt == "json" ? crosscheck_json(s, o.grid_n, rep).dump(2) + "\n"
                                     : crosscheck_csv(s, o.grid_n, rep);
    emit(o, text);
    return rep.pass ? 0 : 3;
}

int run_bifurcation(const CommonOpts& o, double T_min, double T_max) {
    if (!o.has_R && !o.has_r) throw std::domain_error("provide exactly one of --R and --r");
    if (o.has_R && o.has_r) throw std::domain_error("provide exactly one of --R and --r");
    const CylinderGeometry g =
        o.has_R ? cylinder_geometry(o.R) : cylinder_geometry_from_r(o.r);
    if (T_max <= 0.0) T_max = 5.0 * critical_length(g, CriticalKind::Stable);
    const auto points = find_bifurcation_points(g, T_min, T_max);
    std::vector<CrConditions> conditions;
    conditions.reserve(points.size());
    for (const auto& p : points) conditions.push_back(check_cr_conditions(g, p.m, p.T0));
    const std::string fmt = pick_format(o, "json");
    std::string text = fmt == "json"
                           ? bifurcation_json(g, T_min, T_max, points, conditions).dump(2) +
                                 "\n"
                           : bifurcation_csv(points, conditions);
    emit(o, text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_ALL, "C");
    CLI::App app{"stability index and spectra of capillary cylinders in hyperbolic space"};
    app.require_subcommand(1);

    CommonOpts oi, os, ow, oo, ob;
    SweepOpts so;
    double bif_T_min = 1e-3, bif_T_max = 0.0;

    auto* cmd_index = app.add_subcommand("index", "negative eigenvalue count and report");
    add_common(cmd_index, oi, true);
    auto* cmd_spectrum = app.add_subcommand("spectrum", "eigenvalue table");
    add_common(cmd_spectrum, os, true);
    auto* cmd_sweep = app.add_subcommand("sweep", "index along a parameter range");
    add_common(cmd_sweep, ow, true);
    cmd_sweep->add_option("--sweep-param", so.param, "T or r")->capture_default_str();
    cmd_sweep->add_option("--from", so.from, "range start")->required();
    cmd_sweep->add_option("--to", so.to, "range end")->required();
    cmd_sweep->add_option("--step", so.step, "linear step");
    cmd_sweep->add_option("--points", so.points, "number of points (with --log or alone)");
    cmd_sweep->add_flag("--log", so.log_scale, "logarithmic spacing (needs --points)");
    auto* cmd_oracle = app.add_subcommand("oracle-check",
                                          "catalogue versus independent solver");
    add_common(cmd_oracle, oo, true);
    auto* cmd_bif = app.add_subcommand("bifurcation", "kernel periods of the closed family");
    add_common(cmd_bif, ob, false);
    cmd_bif->add_option("--T-min", bif_T_min, "lower end of the period window")
        ->capture_default_str();
    cmd_bif->add_option("--T-max", bif_T_max,
                        "upper end of the period window (default: five stable thresholds)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (cmd_index->parsed()) return run_index(oi);
        if (cmd_spectrum->parsed()) return run_spectrum(os);
        if (cmd_sweep->parsed()) return run_sweep(ow, so);
        if (cmd_oracle->parsed()) return run_oracle_check(oo);
        if (cmd_bif->parsed()) return run_bifurcation(ob, bif_T_min, bif_T_max);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << "error: no subcommand\n";
    return 1;
}
