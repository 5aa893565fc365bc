#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "filtrate/cli.hpp"
#include "filtrate/errors.hpp"

namespace {

using filtrate::cli::cmd_classify;
using filtrate::cli::cmd_correct;
using filtrate::cli::cmd_region;
using filtrate::cli::cmd_solve;
using filtrate::cli::cmd_state;
using filtrate::cli::cmd_verify;

struct OutFile {
    std::unique_ptr<std::ofstream> file;
    std::ostream& stream(std::ostream& fallback) {
        return file ? static_cast<std::ostream&>(*file) : fallback;
    }
};

OutFile open_out(const std::string& path) {
    OutFile out;
    if (!path.empty()) {
        out.file = std::make_unique<std::ofstream>(path, std::ios::binary);
        if (!*out.file)
            throw filtrate::ConfigError("cannot open output file: " + path, "--out");
    }
    return out;
}

void emit_error(int code, const std::string& type, const std::string& message,
                const std::string& key_path) {
    nlohmann::ordered_json err;
    err["error"]["code"] = code;
    err["error"]["type"] = type;
    err["error"]["message"] = message;
    if (!key_path.empty()) err["error"]["key_path"] = key_path;
    std::cerr << err.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Self-similar gas filtration toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string curves_path;
    double opt_v = 1.0, opt_T = 1.0;
    double r_min = 0.0, r_max = 0.0;
    int steps = 0;
    std::string check = "residual";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "configuration JSON file")->required();
        sub->add_option("--out", out_path, "output file (default: stdout)");
    };
    auto add_grid = [&](CLI::App* sub) {
        sub->add_option("--r-min", r_min, "first radius of the output grid");
        sub->add_option("--r-max", r_max, "last radius of the output grid");
        sub->add_option("--steps", steps, "number of grid rows");
    };

    CLI::App* state = app.add_subcommand("state", "thermodynamic state at (v, T)");
    add_common(state);
    state->add_option("--v", opt_v, "specific volume")->required();
    state->add_option("--T", opt_T, "temperature")->required();

    CLI::App* solve = app.add_subcommand("solve", "self-similar profiles over r");
    add_common(solve);
    add_grid(solve);

    CLI::App* correct = app.add_subcommand("correct", "temperature corrections over r");
    add_common(correct);
    add_grid(correct);

    CLI::App* region = app.add_subcommand("region", "(d, t) classification grid and curves");
    add_common(region);
    region->add_option("--curves-out", curves_path, "curves CSV file");

    CLI::App* classify = app.add_subcommand("classify", "admitted symmetry generators");
    add_common(classify);

    CLI::App* verify_cmd = app.add_subcommand("verify", "numerical verification reports");
    add_common(verify_cmd);
    verify_cmd->add_option("--check", check, "residual | symmetry | reduced-ode | order");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        const auto cfg = filtrate::config::parse_config_file(config_path);
        const double g_r_min = r_min > 0.0 ? r_min : cfg.numerics.r_min;
        const double g_r_max = r_max > 0.0 ? r_max : cfg.numerics.r_max;
        const int g_steps = steps > 0 ? steps : cfg.numerics.steps;

        if (*state) {
            auto out = open_out(out_path);
            cmd_state(cfg, opt_v, opt_T, out.stream(std::cout));
        } else if (*solve) {
            auto out = open_out(out_path);
            cmd_solve(cfg, g_r_min, g_r_max, g_steps, out.stream(std::cout));
        } else if (*correct) {
            auto out = open_out(out_path);
            cmd_correct(cfg, g_r_min, g_r_max, g_steps, out.stream(std::cout));
        } else if (*region) {
            if (out_path.empty())
                throw filtrate::ConfigError("region requires --out for the grid CSV", "--out");
            if (curves_path.empty()) curves_path = out_path + ".curves.csv";
            auto grid_out = open_out(out_path);
            std::ofstream curves_out(curves_path, std::ios::binary);
            if (!curves_out)
                throw filtrate::ConfigError("cannot open output file: " + curves_path,
                                            "--curves-out");
            cmd_region(cfg, grid_out.stream(std::cout), curves_out, std::cout);
        } else if (*classify) {
            auto out = open_out(out_path);
            cmd_classify(cfg, out.stream(std::cout));
        } else if (*verify_cmd) {
            auto out = open_out(out_path);
            cmd_verify(cfg, check, out.stream(std::cout));
        }
    } catch (const filtrate::ConfigError& e) {
        emit_error(1, "config", e.what(), e.key_path());
        return 1;
    } catch (const filtrate::DomainError& e) {
        emit_error(1, "domain", e.what(), "");
        return 1;
    } catch (const filtrate::NumericError& e) {
        emit_error(2, "numeric", e.what(), e.diagnostics());
        return 2;
    } catch (const std::exception& e) {
        emit_error(2, "internal", e.what(), "");
        return 2;
    }
    return 0;
}
