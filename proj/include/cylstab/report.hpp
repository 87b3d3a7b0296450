#pragma once

// Deterministic rendering of results: CSV with fixed 6-significant-digit
// numbers for sweep and table output, JSON with shortest round-trip numbers
// for single reports.  No locale, wall clock, or pointer values enter any
// output path, so identical inputs render byte-identical text.

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cylstab/bifurcation.hpp"
#include "cylstab/geometry.hpp"
#include "cylstab/oracle.hpp"
#include "cylstab/spectra.hpp"

namespace cylstab {

using ordered_json = nlohmann::ordered_json;

/// Fixed 6-significant-digit decimal, round half to even, trailing zeros
/// kept.  Values whose decimal exponent lies in [-4, 8] render in plain
/// positional notation ("-0.399290", "10.9200", "123456000"); anything
/// farther out falls back to scientific with a two-digit exponent.
inline std::string format_sig6(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
    if (v == 0.0) v = 0.0;  // normalize the sign of zero
    char buf[48];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 5);
    std::string s(buf, res.ptr);
    const auto epos = s.find('e');
    std::string mant = s.substr(0, epos);
    const int exp10 = std::atoi(s.c_str() + epos + 1);
    const bool neg = mant.front() == '-';
    if (neg) mant.erase(0, 1);
    mant.erase(1, 1);  // drop the decimal point: six raw digits remain
    std::string out = neg ? "-" : "";
    if (exp10 >= -4 && exp10 <= 8) {
        if (exp10 >= 5) {
            out += mant;
            out.append(static_cast<std::size_t>(exp10 - 5), '0');
        } else if (exp10 >= 0) {
            out += mant.substr(0, static_cast<std::size_t>(exp10) + 1);
            out += '.';
            out += mant.substr(static_cast<std::size_t>(exp10) + 1);
        } else {
            out += "0.";
            out.append(static_cast<std::size_t>(-exp10 - 1), '0');
            out += mant;
        }
        return out;
    }
    out += mant.substr(0, 1);
    out += '.';
    out += mant.substr(1);
    out += 'e';
    out += exp10 < 0 ? '-' : '+';
    const int ae = std::abs(exp10);
    if (ae < 10) out += '0';
    out += std::to_string(ae);
    return out;
}

inline std::string spectrum_csv(const std::vector<EigenvalueEntry>& entries) {
    std::string out = "branch,m,n,delta,lambda\n";
    for (const auto& e : entries) {
        out += branch_name(e.branch);
        out += ',';
        out += std::to_string(e.m);
        out += ',';
        out += std::to_string(e.n);
        out += ',';
        if (e.has_delta) out += format_sig6(e.delta);
        out += ',';
        out += format_sig6(e.lambda);
        out += '\n';
    }
    return out;
}

inline ordered_json entry_json(const EigenvalueEntry& e) {
    ordered_json j;
    j["branch"] = branch_name(e.branch);
    j["m"] = e.m;
    j["n"] = e.n;
    if (e.has_delta)
        j["delta"] = e.delta;
    else
        j["delta"] = nullptr;
    j["lambda"] = e.lambda;
    return j;
}

inline ordered_json spectrum_json(const std::vector<EigenvalueEntry>& entries) {
    ordered_json j;
    j["entries"] = ordered_json::array();
    for (const auto& e : entries) j["entries"].push_back(entry_json(e));
    return j;
}

/// One sweep output row.  Cells without a value for the scenario at hand
/// (H0 for supports that have none, R/r and the thresholds for the strip)
/// stay empty in the CSV and null in JSON.
struct SweepRow {
    std::string scenario;
    std::optional<double> R;
    std::optional<double> r;
    double T = 0.0;
    std::optional<double> H0;
    int counted_index = 0;
    int paper_index = 0;
    double lambda_min = 0.0;
    std::optional<double> threshold_strong;
    std::optional<double> threshold_stable;
};

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out =
        "scenario,R,r,T,H0,counted_index,paper_index,lambda_min,"
        "threshold_strong,threshold_stable\n";
    auto cell = [](const std::optional<double>& v) {
        return v ? format_sig6(*v) : std::string();
    };
    for (const auto& row : rows) {
        out += row.scenario;
        out += ',';
        out += cell(row.R);
        out += ',';
        out += cell(row.r);
        out += ',';
        out += format_sig6(row.T);
        out += ',';
        out += cell(row.H0);
        out += ',';
        out += std::to_string(row.counted_index);
        out += ',';
        out += std::to_string(row.paper_index);
        out += ',';
        out += format_sig6(row.lambda_min);
        out += ',';
        out += cell(row.threshold_strong);
        out += ',';
        out += cell(row.threshold_stable);
        out += '\n';
    }
    return out;
}

inline ordered_json sweep_json(const std::vector<SweepRow>& rows) {
    auto put = [](ordered_json& j, const char* key, const std::optional<double>& v) {
        if (v)
            j[key] = *v;
        else
            j[key] = nullptr;
    };
    ordered_json arr = ordered_json::array();
    for (const auto& row : rows) {
        ordered_json j;
        j["scenario"] = row.scenario;
        put(j, "R", row.R);
        put(j, "r", row.r);
        j["T"] = row.T;
        put(j, "H0", row.H0);
        j["counted_index"] = row.counted_index;
        j["paper_index"] = row.paper_index;
        j["lambda_min"] = row.lambda_min;
        put(j, "threshold_strong", row.threshold_strong);
        put(j, "threshold_stable", row.threshold_stable);
        arr.push_back(std::move(j));
    }
    ordered_json j;
    j["rows"] = std::move(arr);
    return j;
}

inline ordered_json index_json(const SupportScenario& s,
                               const std::optional<CylinderGeometry>& geom,
                               const IndexReport& rep,
                               const std::optional<OracleIndex>& oracle) {
    ordered_json j;
    j["scenario"] = scenario_name(s.kind);
    if (geom) {
        j["R"] = geom->R;
        j["r"] = geom->r;
    } else {
        j["R"] = nullptr;
        j["r"] = nullptr;
    }
    j["T"] = s.T;
    if (s.kind == ScenarioKind::Ball || s.kind == ScenarioKind::Equidistant)
        j["H0"] = s.H0;
    if (s.kind == ScenarioKind::Ball) {
        j["rho"] = s.rho;
        const BallGeometry b = ball_geometry(s.H0, s.rho, geom->r);
        j["T"] = b.T;  // derived piece length
        j["sigma"] = b.sigma;
    }
    if (s.kind == ScenarioKind::SlabHorosphere) j["tau"] = s.tau;
    j["counted_index"] = rep.counted_index;
    j["paper_index"] = rep.paper_index;
    j["agrees"] = rep.agrees;
    j["nullity"] = rep.nullity;
    j["weak_lower"] = rep.weak_lower;
    j["weak_upper"] = rep.weak_upper;
    j["lambda_min"] = rep.lambda_min;
    if (rep.counted_index == 0 && rep.nullity == 0) j["stability"] = "strongly stable";
    j["negatives"] = ordered_json::array();
    for (const auto& e : rep.negatives) j["negatives"].push_back(entry_json(e));
    if (oracle) {
        ordered_json o;
        o["count"] = oracle->count;
        o["converged"] = oracle->converged;
        o["count_coarse"] = oracle->count_coarse;
        o["count_fine"] = oracle->count_fine;
        o["matches_counted"] = oracle->count == rep.counted_index;
        j["oracle"] = std::move(o);
    }
    return j;
}

/// Key,value CSV rendering of an index report, for pipelines that insist on
/// CSV everywhere.  The negatives list is flattened to one row per entry.
inline std::string index_csv(const SupportScenario& s,
                             const std::optional<CylinderGeometry>& geom,
                             const IndexReport& rep,
                             const std::optional<OracleIndex>& oracle) {
    std::string out = "key,value\n";
    auto add = [&out](const std::string& k, const std::string& v) {
        out += k;
        out += ',';
        out += v;
        out += '\n';
    };
    add("scenario", scenario_name(s.kind));
    if (geom) {
        add("R", format_sig6(geom->R));
        add("r", format_sig6(geom->r));
    }
    if (s.kind == ScenarioKind::Ball) {
        const BallGeometry b = ball_geometry(s.H0, s.rho, geom->r);
        add("T", format_sig6(b.T));
        add("H0", format_sig6(s.H0));
        add("rho", format_sig6(s.rho));
        add("sigma", format_sig6(b.sigma));
    } else {
        add("T", format_sig6(s.T));
        if (s.kind == ScenarioKind::Equidistant) add("H0", format_sig6(s.H0));
        if (s.kind == ScenarioKind::SlabHorosphere) add("tau", format_sig6(s.tau));
    }
    add("counted_index", std::to_string(rep.counted_index));
    add("paper_index", std::to_string(rep.paper_index));
    add("agrees", rep.agrees ? "true" : "false");
    add("nullity", std::to_string(rep.nullity));
    add("weak_lower", std::to_string(rep.weak_lower));
    add("weak_upper", std::to_string(rep.weak_upper));
    add("lambda_min", format_sig6(rep.lambda_min));
    if (rep.counted_index == 0 && rep.nullity == 0) add("stability", "strongly stable");
    for (std::size_t i = 0; i < rep.negatives.size(); ++i) {
        const auto& e = rep.negatives[i];
        add("negative_" + std::to_string(i + 1),
            std::string(branch_name(e.branch)) + " m=" + std::to_string(e.m) +
                " n=" + std::to_string(e.n) + " lambda=" + format_sig6(e.lambda));
    }
    if (oracle) {
        add("oracle_count", std::to_string(oracle->count));
        add("oracle_converged", oracle->converged ? "true" : "false");
        add("oracle_matches_counted",
            oracle->count == rep.counted_index ? "true" : "false");
    }
    return out;
}

inline ordered_json crosscheck_json(const SupportScenario& s, int grid_n,
                                    const CrosscheckReport& rep) {
    ordered_json j;
    j["scenario"] = scenario_name(s.kind);
    j["grid_n"] = grid_n;
    j["tol"] = rep.tol;
    j["max_deviation"] = rep.max_deviation;
    j["median_order"] = rep.median_order;
    j["order_samples"] = rep.order_samples;
    j["pass"] = rep.pass;
    j["matched"] = ordered_json::array();
    for (const auto& ce : rep.matched) {
        ordered_json e;
        e["n"] = ce.n;
        e["closed"] = ce.closed;
        e["oracle"] = ce.oracle;
        e["deviation"] = ce.deviation;
        if (ce.has_order)
            e["order"] = ce.order;
        else
            e["order"] = nullptr;
        j["matched"].push_back(std::move(e));
    }
    j["unmatched_oracle"] = rep.unmatched_oracle;
    return j;
}

inline std::string crosscheck_csv(const SupportScenario& s, int grid_n,
                                  const CrosscheckReport& rep) {
    std::string out = "key,value\n";
    auto add = [&out](const std::string& k, const std::string& v) {
        out += k;
        out += ',';
        out += v;
        out += '\n';
    };
    add("scenario", scenario_name(s.kind));
    add("grid_n", std::to_string(grid_n));
    add("tol", format_sig6(rep.tol));
    add("max_deviation", format_sig6(rep.max_deviation));
    add("median_order", format_sig6(rep.median_order));
    add("order_samples", std::to_string(rep.order_samples));
    add("matched_count", std::to_string(rep.matched.size()));
    add("unmatched_count", std::to_string(rep.unmatched_oracle.size()));
    for (std::size_t i = 0; i < rep.unmatched_oracle.size(); ++i)
        add("unmatched_" + std::to_string(i + 1), format_sig6(rep.unmatched_oracle[i]));
    add("pass", rep.pass ? "true" : "false");
    return out;
}

inline ordered_json bifurcation_json(const CylinderGeometry& g, double T_min, double T_max,
                                     const std::vector<BifurcationPoint>& points,
                                     const std::vector<CrConditions>& conditions) {
    ordered_json j;
    j["R"] = g.R;
    j["r"] = g.r;
    j["T_min"] = T_min;
    j["T_max"] = T_max;
    j["stable_threshold"] = critical_length(g, CriticalKind::Stable);
    j["points"] = ordered_json::array();
    for (std::size_t i = 0; i < points.size(); ++i) {
        ordered_json p;
        p["m"] = points[i].m;
        p["T0"] = points[i].T0;
        p["kernel_dim"] = conditions[i].kernel_dim;
        p["kernel_dim_even"] = conditions[i].kernel_dim_even;
        p["transversality"] = conditions[i].transversality;
        p["slope"] = conditions[i].slope;
        j["points"].push_back(std::move(p));
    }
    return j;
}

inline std::string bifurcation_csv(const std::vector<BifurcationPoint>& points,
                                   const std::vector<CrConditions>& conditions) {
    std::string out = "m,T0,kernel_dim,kernel_dim_even,transversality,slope\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
        out += std::to_string(points[i].m);
        out += ',';
        out += format_sig6(points[i].T0);
        out += ',';
        out += std::to_string(conditions[i].kernel_dim);
        out += ',';
        out += std::to_string(conditions[i].kernel_dim_even);
        out += ',';
        out += format_sig6(conditions[i].transversality);
        out += ',';
        out += format_sig6(conditions[i].slope);
        out += '\n';
    }
    return out;
}

}  // namespace cylstab
