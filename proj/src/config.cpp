#include "filtrate/config.hpp"

#include <fstream>
#include <set>

#include "filtrate/errors.hpp"

namespace filtrate::config {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& prefix,
                    const std::set<std::string>& allowed) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (!allowed.count(key))
            throw ConfigError("unknown configuration key", prefix + key);
    }
}

double get_number(const json& obj, const std::string& prefix, const std::string& key,
                  double fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ConfigError("expected a number", prefix + key);
    return v.get<double>();
}

int get_int(const json& obj, const std::string& prefix, const std::string& key,
            int fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) throw ConfigError("expected an integer", prefix + key);
    return v.get<int>();
}

std::string get_string(const json& obj, const std::string& prefix, const std::string& key,
                       const std::string& fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_string()) throw ConfigError("expected a string", prefix + key);
    return v.get<std::string>();
}

const json& section(const json& doc, const std::string& name, const json& empty) {
    if (!doc.contains(name)) return empty;
    if (!doc.at(name).is_object())
        throw ConfigError("expected an object", name);
    return doc.at(name);
}

}  // namespace

RunConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("configuration root must be an object", "");
    reject_unknown(doc, "", {"gas", "medium", "solution", "corrections", "region", "numerics"});
    static const json empty = json::object();

    RunConfig cfg;

    const json& gas = section(doc, "gas", empty);
    reject_unknown(gas, "gas.", {"kind", "n", "a", "b", "r_gas", "attraction_sign"});
    cfg.gas_kind = get_string(gas, "gas.", "kind", cfg.gas_kind);
    if (cfg.gas_kind != "ideal" && cfg.gas_kind != "vdw_exact" &&
        cfg.gas_kind != "vdw_first_order")
        throw ConfigError("kind must be ideal, vdw_exact or vdw_first_order", "gas.kind");
    cfg.gas_n = get_number(gas, "gas.", "n", cfg.gas_n);
    cfg.gas_a = get_number(gas, "gas.", "a", cfg.gas_a);
    cfg.gas_b = get_number(gas, "gas.", "b", cfg.gas_b);
    cfg.gas_r = get_number(gas, "gas.", "r_gas", 0.0);
    cfg.gas_attraction_sign = get_number(gas, "gas.", "attraction_sign", 1.0);
    if (!(cfg.gas_r > 0.0))
        throw ConfigError("r_gas is required and must be positive", "gas.r_gas");
    if (!(cfg.gas_n > 0.0)) throw ConfigError("n must be positive", "gas.n");
    if (cfg.gas_a < 0.0) throw ConfigError("a must be non-negative", "gas.a");
    if (cfg.gas_b < 0.0) throw ConfigError("b must be non-negative", "gas.b");

    const json& medium = section(doc, "medium", empty);
    reject_unknown(medium, "medium.", {"family", "alpha", "beta", "gamma"});
    cfg.medium_family = get_string(medium, "medium.", "family", cfg.medium_family);
    if (cfg.medium_family != "power_law" && cfg.medium_family != "ratio_power")
        throw ConfigError("family must be power_law or ratio_power", "medium.family");
    cfg.medium_alpha = get_number(medium, "medium.", "alpha", cfg.medium_alpha);
    cfg.medium_beta = get_number(medium, "medium.", "beta", cfg.medium_beta);
    cfg.medium_gamma = get_number(medium, "medium.", "gamma", cfg.medium_gamma);
    if (!(cfg.medium_alpha > 0.0))
        throw ConfigError("alpha must be positive", "medium.alpha");

    const json& sol = section(doc, "solution", empty);
    reject_unknown(sol, "solution.", {"q", "c1", "c2", "pressure_mode", "r0", "p0"});
    cfg.q = get_number(sol, "solution.", "q", cfg.q);
    cfg.c1 = get_number(sol, "solution.", "c1", cfg.c1);
    cfg.c2 = get_number(sol, "solution.", "c2", cfg.c2);
    cfg.pressure_mode = get_string(sol, "solution.", "pressure_mode", cfg.pressure_mode);
    cfg.r0 = get_number(sol, "solution.", "r0", cfg.r0);
    cfg.p0 = get_number(sol, "solution.", "p0", cfg.p0);
    if (!(cfg.q > 0.0 && cfg.q < 1.0))
        throw ConfigError("q must lie in (0, 1)", "solution.q");
    if (!(cfg.c1 > 0.0)) throw ConfigError("c1 must be positive", "solution.c1");
    static const std::set<std::string> modes = {"case1", "case2", "case3", "case4",
                                                "numeric"};
    if (!modes.count(cfg.pressure_mode))
        throw ConfigError("pressure_mode must be case1..case4 or numeric",
                          "solution.pressure_mode");

    const json& corr = section(doc, "corrections", empty);
    reject_unknown(corr, "corrections.", {"a", "b", "c3", "c4", "r_ref"});
    cfg.corr_a = get_number(corr, "corrections.", "a", cfg.corr_a);
    cfg.corr_b = get_number(corr, "corrections.", "b", cfg.corr_b);
    cfg.corr_c3 = get_number(corr, "corrections.", "c3", cfg.corr_c3);
    cfg.corr_c4 = get_number(corr, "corrections.", "c4", cfg.corr_c4);
    cfg.corr_r_ref = get_number(corr, "corrections.", "r_ref", cfg.corr_r_ref);
    if (cfg.corr_a < 0.0) throw ConfigError("a must be non-negative", "corrections.a");
    if (cfg.corr_b < 0.0) throw ConfigError("b must be non-negative", "corrections.b");

    const json& reg = section(doc, "region", empty);
    reject_unknown(reg, "region.",
                   {"v_min", "p_min", "p_max", "temp_min", "temp_max", "d_max", "t_max",
                    "nx", "ny"});
    cfg.region.v_min = get_number(reg, "region.", "v_min", cfg.region.v_min);
    cfg.region.p_min = get_number(reg, "region.", "p_min", cfg.region.p_min);
    cfg.region.p_max = get_number(reg, "region.", "p_max", cfg.region.p_max);
    cfg.region.temp_min = get_number(reg, "region.", "temp_min", cfg.region.temp_min);
    cfg.region.temp_max = get_number(reg, "region.", "temp_max", cfg.region.temp_max);
    cfg.region.d_max = get_number(reg, "region.", "d_max", cfg.region.d_max);
    cfg.region.t_max = get_number(reg, "region.", "t_max", cfg.region.t_max);
    cfg.region.nx = get_int(reg, "region.", "nx", cfg.region.nx);
    cfg.region.ny = get_int(reg, "region.", "ny", cfg.region.ny);
    try {
        cfg.region.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what(), "region");
    }

    const json& numz = section(doc, "numerics", empty);
    reject_unknown(numz, "numerics.",
                   {"ode_rel_tol", "quad_tol", "fd_step", "trace_samples",
                    "coex_t_floor_frac", "r_min", "r_max", "steps"});
    cfg.numerics.ode_rel_tol =
        get_number(numz, "numerics.", "ode_rel_tol", cfg.numerics.ode_rel_tol);
    cfg.numerics.quad_tol = get_number(numz, "numerics.", "quad_tol", cfg.numerics.quad_tol);
    cfg.numerics.fd_step = get_number(numz, "numerics.", "fd_step", cfg.numerics.fd_step);
    cfg.numerics.trace_samples =
        get_int(numz, "numerics.", "trace_samples", cfg.numerics.trace_samples);
    cfg.numerics.coex_t_floor_frac =
        get_number(numz, "numerics.", "coex_t_floor_frac", cfg.numerics.coex_t_floor_frac);
    cfg.numerics.r_min = get_number(numz, "numerics.", "r_min", cfg.numerics.r_min);
    cfg.numerics.r_max = get_number(numz, "numerics.", "r_max", cfg.numerics.r_max);
    cfg.numerics.steps = get_int(numz, "numerics.", "steps", cfg.numerics.steps);
    if (!(cfg.numerics.r_min > 0.0) || !(cfg.numerics.r_max > cfg.numerics.r_min))
        throw ConfigError("need 0 < r_min < r_max", "numerics.r_min");
    if (cfg.numerics.steps < 2) throw ConfigError("steps must be >= 2", "numerics.steps");

    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open configuration file: " + path, "");
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("configuration is not valid JSON: ") + e.what(), "");
    }
    return parse_config(doc);
}

thermo::PotentialModel RunConfig::make_potential() const {
    thermo::PotentialModel m;
    if (gas_kind == "ideal")
        m = thermo::PotentialModel::ideal(gas_n, gas_r);
    else if (gas_kind == "vdw_exact")
        m = thermo::PotentialModel::vdw_exact(gas_n, gas_a, gas_b, gas_r);
    else
        m = thermo::PotentialModel::vdw_first_order(gas_n, gas_a, gas_b, gas_r);
    m.attraction_sign = gas_attraction_sign;
    m.validate();
    return m;
}

media::MediumLaw RunConfig::make_law() const {
    if (medium_family == "power_law")
        return media::MediumLaw::power_law(medium_alpha, medium_beta, medium_gamma);
    return media::MediumLaw::ratio_power(medium_alpha, medium_beta);
}

selfsim::SelfSimilarSolution RunConfig::make_solution() const {
    selfsim::PressureMode mode;
    if (pressure_mode == "case1")
        mode = selfsim::PressureMode::Case1;
    else if (pressure_mode == "case2")
        mode = selfsim::PressureMode::Case2;
    else if (pressure_mode == "case3")
        mode = selfsim::PressureMode::Case3;
    else if (pressure_mode == "case4")
        mode = selfsim::PressureMode::Case4;
    else
        mode = selfsim::PressureMode::Numeric;
    auto sol = selfsim::SelfSimilarSolution::make(q, c1, c2, gas_r, make_law(), mode, r0, p0);
    sol.ode_rel_tol = numerics.ode_rel_tol;
    return sol;
}

perturb::CorrectionSet RunConfig::make_corrections() const {
    auto cs = perturb::CorrectionSet::make(make_solution(), corr_a, corr_b, corr_c3, corr_c4,
                                           gas_n, corr_r_ref);
    cs.quad_tol = numerics.quad_tol;
    return cs;
}

}  // namespace filtrate::config
