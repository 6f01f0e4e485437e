#include "dynkin/report.hpp"

#include <cmath>
#include <stdexcept>

namespace dynkin::cli {

using nlohmann::json;
using nlohmann::ordered_json;

nlohmann::ordered_json model_json(const levy::Model& m) {
    ordered_json j;
    j["family"] = levy::family_name(m.family);
    switch (m.family) {
        case levy::Family::BrownianMotion:
            j["c"] = m.c;
            j["sigma"] = m.sigma;
            break;
        case levy::Family::CramerLundberg:
            j["c"] = m.c;
            j["lambda1"] = m.lambda1;
            j["alpha1"] = m.alpha1;
            break;
        case levy::Family::CompoundPoisson:
            j["alpha1"] = m.alpha1;
            j["lambda1"] = m.lambda1;
            j["alpha2"] = m.alpha2;
            j["lambda2"] = m.lambda2;
            break;
    }
    return j;
}

nlohmann::ordered_json solution_json(const game::Solution& s) {
    ordered_json j;
    j["model"] = model_json(s.spec.model);
    j["r"] = s.spec.r;
    j["delta"] = s.spec.delta;
    j["alpha"] = s.alpha;
    j["factors"] = {{"r_I", s.factors.rate_inf},
                    {"r_S", s.factors.rate_sup},
                    {"pi_I", s.factors.atom_inf},
                    {"pi_S", s.factors.atom_sup}};
    j["constants"] = {{"E_I", s.constants.mean_inf},
                      {"E_S", s.constants.mean_sup},
                      {"F_I", s.constants.factor_inf},
                      {"F_S", s.constants.factor_sup},
                      {"G_I", s.constants.excess_inf},
                      {"G_S", s.constants.excess_sup}};
    j["identity_error"] =
        wh::identity_error(s.spec.model, s.spec.r, s.factors);
    j["u"] = s.gap;
    j["x_I"] = s.x_inf;
    j["x_S"] = s.x_sup;
    j["A_I"] = s.coeff_inf;
    j["A_S"] = s.coeff_sup;
    j["jump_I"] = s.jump_inf;
    j["jump_S"] = s.jump_sup;
    j["conditions"] = {{"grid_size", s.checks.grid_size},
                       {"sandwich_margin", s.checks.sandwich_margin},
                       {"mono_inf_min", s.checks.mono_inf_min},
                       {"mono_sup_min", s.checks.mono_sup_min},
                       {"boundary_inf", s.checks.boundary_inf},
                       {"boundary_sup", s.checks.boundary_sup},
                       {"continuity_inf", s.checks.continuity_inf},
                       {"continuity_sup", s.checks.continuity_sup},
                       {"gap_residual", s.checks.gap_residual},
                       {"pasting_inf", s.checks.pasting_inf},
                       {"pasting_sup", s.checks.pasting_sup},
                       {"pass", s.checks.all_ok()}};
    j["coeff_signs_ok"] = s.coeff_signs_ok;
    j["certified"] = s.certified;
    return j;
}

namespace {

constexpr double kIdentityTolerance = 1e-10;

ordered_json estimate_json(double x0, const mc::Estimate& est, double target,
                           double tolerance, bool pass) {
    return {{"x0", x0},
            {"estimate", est.mean},
            {"std_error", est.std_error},
            {"target", target},
            {"tolerance", tolerance},
            {"pass", pass}};
}

ordered_json atom_json(const mc::AtomCheck& a) {
    return {{"estimate", a.estimate},
            {"std_error", a.std_error},
            {"expected", a.expected},
            {"pass", a.pass}};
}

ordered_json ks_json(double stat, double critical) {
    return {{"statistic", stat},
            {"critical", critical},
            {"pass", stat < critical}};
}

}  // namespace

VerifyOutcome run_verify(const game::Solution& s, const RunConfig& cfg) {
    VerifyOutcome out;
    out.certified = s.certified;

    ordered_json& doc = out.doc;
    doc["model"] = model_json(s.spec.model);
    doc["r"] = s.spec.r;
    doc["delta"] = s.spec.delta;
    doc["solution"] = {{"u", s.gap},         {"x_I", s.x_inf},
                       {"x_S", s.x_sup},     {"A_I", s.coeff_inf},
                       {"A_S", s.coeff_sup}, {"certified", s.certified}};

    if (!s.certified) {
        // Nothing to verify against an uncertified solution; the report
        // records the failure and stops.
        out.pass = false;
        doc["pass"] = false;
        return out;
    }

    doc["mc"] = {{"paths", cfg.sim.paths},
                 {"seed", cfg.sim.seed},
                 {"dt", mc::effective_dt(cfg.sim, s.spec.r)},
                 {"horizon", mc::effective_horizon(cfg.sim, s.spec.r)}};

    const double id_err = wh::identity_error(s.spec.model, s.spec.r, s.factors);
    const bool id_pass = id_err <= kIdentityTolerance;
    doc["identity"] = {{"max_error", id_err},
                       {"tolerance", kIdentityTolerance},
                       {"pass", id_pass}};

    // Extrema laws. The jump families are simulated exactly, so their atom
    // fractions and KS distances gate the verdict; the Euler-discretised
    // Brownian extrema are reported but not gated (grid-point extrema leave
    // a spurious atom of order sqrt(dt)).
    const bool exact = s.spec.model.family != levy::Family::BrownianMotion;
    mc::SimConfig ex_cfg = cfg.sim;
    ex_cfg.seed = mc::stream_seed(cfg.sim.seed, 0xe7);
    const auto samples = mc::simulate_extrema(s.spec.model, s.spec.r, ex_cfg);
    std::vector<double> mag_inf(samples.size()), mag_sup(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        mag_inf[i] = -samples[i].inf;
        mag_sup[i] = samples[i].sup;
    }
    const auto atom_inf = mc::check_atom(mag_inf, s.factors.atom_inf);
    const auto atom_sup = mc::check_atom(mag_sup, s.factors.atom_sup);
    const double crit = mc::ks_critical(cfg.sim.paths);
    const double ks_inf = mc::ks_statistic(mag_inf, wh::infimum_law(s.factors));
    const double ks_sup =
        mc::ks_statistic(mag_sup, wh::supremum_law(s.factors));
    const bool extrema_pass =
        !exact || (atom_inf.pass && atom_sup.pass && ks_sup < crit);
    doc["extrema"] = {{"gated", exact},
                      {"atom_inf", atom_json(atom_inf)},
                      {"atom_sup", atom_json(atom_sup)},
                      {"ks_inf", ks_json(ks_inf, crit)},
                      {"ks_sup", ks_json(ks_sup, crit)},
                      {"pass", extrema_pass}};

    // Equilibrium payoff across a grid of starting points spanning one unit
    // beyond each threshold.
    const double allowance =
        mc::bias_allowance(s.spec.model, s.spec.r, cfg.sim);
    constexpr int kPayoffPoints = 9;
    ordered_json cells = ordered_json::array();
    bool payoff_pass = true;
    for (int i = 0; i < kPayoffPoints; ++i) {
        const double x0 = (s.x_inf - 1.0) + (s.gap + 2.0) * i /
                                                (kPayoffPoints - 1);
        mc::SimConfig cell = cfg.sim;
        cell.seed = mc::stream_seed(cfg.sim.seed,
                                    0x9a50ff + static_cast<std::uint64_t>(i));
        const auto est = mc::estimate_payoff(s.spec, x0, s.x_inf, s.x_sup, cell);
        const double target = game::value(s, x0);
        const double tol = 3.5 * est.std_error + allowance;
        const bool pass = std::abs(est.mean - target) <= tol;
        payoff_pass = payoff_pass && pass;
        cells.push_back(estimate_json(x0, est, target, tol, pass));
    }
    doc["payoff"] = {{"allowance", allowance},
                     {"cells", std::move(cells)},
                     {"pass", payoff_pass}};

    // Saddle inequalities at the midpoint of the continuation interval.
    mc::SimConfig sd_cfg = cfg.sim;
    sd_cfg.seed = mc::stream_seed(cfg.sim.seed, 0x5ad);
    const double x_mid = 0.5 * (s.x_inf + s.x_sup);
    const auto saddle = mc::saddle_check(s, x_mid, cfg.offsets, sd_cfg);
    ordered_json sd_cells = ordered_json::array();
    for (const auto& c : saddle.cells) {
        sd_cells.push_back({{"offset", c.offset},
                            {"side", c.perturbs_upper ? "upper" : "lower"},
                            {"estimate", c.est.mean},
                            {"std_error", c.est.std_error},
                            {"bound", c.bound},
                            {"tolerance", c.tolerance},
                            {"pass", c.pass}});
    }
    doc["saddle"] = {{"x0", saddle.x0},
                     {"allowance", saddle.allowance},
                     {"cells", std::move(sd_cells)},
                     {"pass", saddle.all_pass}};

    out.pass = id_pass && extrema_pass && payoff_pass && saddle.all_pass;
    doc["pass"] = out.pass;
    return out;
}

namespace {

const char* type_name(const json& v) {
    if (v.is_object()) return "object";
    if (v.is_array()) return "array";
    if (v.is_string()) return "string";
    if (v.is_boolean()) return "boolean";
    if (v.is_number_integer()) return "integer";
    if (v.is_number()) return "number";
    if (v.is_null()) return "null";
    return "?";
}

bool type_matches(const json& v, const std::string& t) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "boolean") return v.is_boolean();
    if (t == "integer") return v.is_number_integer();
    if (t == "number") return v.is_number();
    if (t == "null") return v.is_null();
    return false;
}

void check_node(const json& doc, const json& schema, const std::string& path,
                std::vector<std::string>& errs) {
    if (schema.contains("type")) {
        const std::string t = schema["type"].get<std::string>();
        if (!type_matches(doc, t)) {
            errs.push_back(path + ": expected " + t + ", got " +
                           type_name(doc));
            return;
        }
    }
    if (schema.contains("enum")) {
        bool hit = false;
        for (const auto& v : schema["enum"])
            if (doc == v) hit = true;
        if (!hit) errs.push_back(path + ": value not in enum");
    }
    if (doc.is_number()) {
        const double v = doc.get<double>();
        if (schema.contains("minimum") &&
            v < schema["minimum"].get<double>())
            errs.push_back(path + ": below minimum");
        if (schema.contains("exclusiveMinimum") &&
            v <= schema["exclusiveMinimum"].get<double>())
            errs.push_back(path + ": not above exclusiveMinimum");
        if (schema.contains("maximum") &&
            v > schema["maximum"].get<double>())
            errs.push_back(path + ": above maximum");
    }
    if (doc.is_object()) {
        if (schema.contains("required"))
            for (const auto& k : schema["required"]) {
                const std::string key = k.get<std::string>();
                if (!doc.contains(key))
                    errs.push_back(path + ": missing required '" + key + "'");
            }
        const json props = schema.value("properties", json::object());
        const bool extra_ok = schema.value("additionalProperties", true);
        for (const auto& [key, v] : doc.items()) {
            if (props.contains(key))
                check_node(v, props[key], path + "/" + key, errs);
            else if (!extra_ok)
                errs.push_back(path + ": unexpected property '" + key + "'");
        }
    }
    if (doc.is_array() && schema.contains("items")) {
        std::size_t i = 0;
        for (const auto& v : doc)
            check_node(v, schema["items"], path + "/" + std::to_string(i++),
                       errs);
    }
}

}  // namespace

std::vector<std::string> schema_errors(const json& doc, const json& schema) {
    std::vector<std::string> errs;
    check_node(doc, schema, "", errs);
    return errs;
}

}  // namespace dynkin::cli
