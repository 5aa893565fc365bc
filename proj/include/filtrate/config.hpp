#pragma once

#include <string>

#include <json.hpp>

#include "filtrate/media.hpp"
#include "filtrate/perturb.hpp"
#include "filtrate/regions.hpp"
#include "filtrate/selfsim.hpp"
#include "filtrate/thermo.hpp"

namespace filtrate::config {

/// Numerical knobs with their library-wide defaults.
struct Numerics {
    double ode_rel_tol = 1e-9;
    double quad_tol = 1e-10;
    double fd_step = 1e-4;
    int trace_samples = 2048;
    double coex_t_floor_frac = 0.15;
    double r_min = 0.1;  // default radial output grid
    double r_max = 3.0;
    int steps = 64;
};

/// One JSON document configuring every command. Keys are lower_snake_case;
/// unknown keys are rejected with the offending path. gas.r_gas is required,
/// everything else has defaults.
struct RunConfig {
    // gas
    std::string gas_kind = "ideal";  // ideal | vdw_exact | vdw_first_order
    double gas_n = 3.0;
    double gas_a = 0.0;
    double gas_b = 0.0;
    double gas_r = 0.0;  // required
    double gas_attraction_sign = 1.0;
    // medium
    std::string medium_family = "power_law";  // power_law | ratio_power
    double medium_alpha = 5e-4;
    double medium_beta = 1.0;
    double medium_gamma = -1.0;
    // solution
    double q = 0.55;
    double c1 = 2.7e-3;
    double c2 = 3e5;
    std::string pressure_mode = "case2";
    double r0 = 1.0;
    double p0 = 0.0;
    // corrections
    double corr_a = 9e-5;
    double corr_b = 3e-3;
    double corr_c3 = 0.0;
    double corr_c4 = 0.0;
    double corr_r_ref = 1.0;
    // region
    regions::RegionSpec region{0.05, 1e3, 3e5, 90.0, 810.0, 4.0, 4.0, 200, 200};

    Numerics numerics;

    thermo::PotentialModel make_potential() const;
    media::MediumLaw make_law() const;
    selfsim::SelfSimilarSolution make_solution() const;
    perturb::CorrectionSet make_corrections() const;
};

/// Parse and validate; throws ConfigError with the offending key path.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config_file(const std::string& path);

}  // namespace filtrate::config
