#pragma once

#include <ostream>
#include <string>

#include "filtrate/config.hpp"

namespace filtrate::cli {

/// Command implementations behind the `filtrate` binary. Each writes its
/// primary payload to the given stream and throws on failure (ConfigError /
/// DomainError for invalid input, NumericError for numerical failure).

void cmd_state(const config::RunConfig& cfg, double v, double T, std::ostream& out);

void cmd_solve(const config::RunConfig& cfg, double r_min, double r_max, int steps,
               std::ostream& out);

void cmd_correct(const config::RunConfig& cfg, double r_min, double r_max, int steps,
                 std::ostream& out);

void cmd_region(const config::RunConfig& cfg, std::ostream& grid_out,
                std::ostream& curves_out, std::ostream& summary_out);

void cmd_classify(const config::RunConfig& cfg, std::ostream& out);

/// check is one of: residual, symmetry, reduced-ode, order.
void cmd_verify(const config::RunConfig& cfg, const std::string& check, std::ostream& out);

}  // namespace filtrate::cli
