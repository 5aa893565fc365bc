#include "filtrate/cli.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "filtrate/errors.hpp"
#include "filtrate/io.hpp"
#include "filtrate/numerics.hpp"
#include "filtrate/perturb.hpp"
#include "filtrate/verify.hpp"

namespace filtrate::cli {

namespace {

using ojson = nlohmann::ordered_json;

std::vector<Point4> sample_points(const selfsim::SelfSimilarSolution& sol,
                                  const config::Numerics& numz) {
    // Radii inside the configured output window, mixed direction, two times.
    const double lo = numz.r_min;
    const double hi = numz.r_max;
    std::vector<Point4> pts;
    for (double f : {0.35, 0.55, 0.75}) {
        const double r = lo * std::pow(hi / lo, f);
        for (double t : {1.0, 2.25}) {
            const double d = r * std::sqrt(t);
            pts.push_back({t, 0.6 * d, 0.64 * d, 0.48 * d});
        }
    }
    (void)sol;
    return pts;
}

}  // namespace

void cmd_state(const config::RunConfig& cfg, double v, double T, std::ostream& out) {
    const auto model = cfg.make_potential();
    if (v <= model.b && model.b > 0.0)
        throw ConfigError("state point requires v above the co-volume", "gas.b");
    const auto st = thermo::state_from_potential(model, v, T);
    const auto flags = thermo::applicability(model, v, T);
    ojson doc;
    doc["p"] = st.p;
    doc["epsilon"] = st.epsilon;
    doc["s"] = st.s;
    doc["convexity_ok"] = flags.convexity_ok;
    doc["heat_capacity_ok"] = flags.heat_capacity_ok;
    out << doc.dump() << "\n";
}

void cmd_solve(const config::RunConfig& cfg, double r_min, double r_max, int steps,
               std::ostream& out) {
    if (!(r_min > 0.0)) throw ConfigError("solve grid requires r_min > 0", "numerics.r_min");
    if (!(r_max > r_min)) throw ConfigError("solve grid requires r_max > r_min",
                                            "numerics.r_max");
    if (steps < 2) throw ConfigError("solve grid requires steps >= 2", "numerics.steps");
    const auto sol = cfg.make_solution();

    io::CsvWriter csv(out);
    csv.cell(std::string("r")).cell(std::string("v")).cell(std::string("p"))
        .cell(std::string("T")).cell(std::string("u_mag"));
    csv.end_row();
    for (double r : num::linspace(r_min, r_max, steps)) {
        const double v = selfsim::volume_profile(sol, r);
        const double p = selfsim::pressure(sol, r);
        const double T = p * v / sol.r_gas;
        const double mu = media::eval_mobility(sol.law, v, T);
        const double u_mag = std::fabs(mu * selfsim::pressure_deriv(sol, r));
        csv.cell(r).cell(v).cell(p).cell(T).cell(u_mag);
        csv.end_row();
    }
}

void cmd_correct(const config::RunConfig& cfg, double r_min, double r_max, int steps,
                 std::ostream& out) {
    if (!(r_min > 0.0)) throw ConfigError("correct grid requires r_min > 0", "numerics.r_min");
    if (!(r_max > r_min)) throw ConfigError("correct grid requires r_max > r_min",
                                            "numerics.r_max");
    if (steps < 2) throw ConfigError("correct grid requires steps >= 2", "numerics.steps");
    const auto cs = cfg.make_corrections();

    io::CsvWriter csv(out);
    csv.cell(std::string("r")).cell(std::string("T0")).cell(std::string("T1"))
        .cell(std::string("T2")).cell(std::string("T_corr"));
    csv.end_row();
    for (double r : num::linspace(r_min, r_max, steps)) {
        const double T0 = selfsim::temperature_profile(cs.base, r);
        const double T1 = perturb::t1_correction(cs, r);
        const double T2 = perturb::t2_correction(cs, r);
        const double T_corr = T0 + cs.a * T1 + cs.b * T2;
        csv.cell(r).cell(T0).cell(T1).cell(T2).cell(T_corr);
        csv.end_row();
    }
}

void cmd_region(const config::RunConfig& cfg, std::ostream& grid_out,
                std::ostream& curves_out, std::ostream& summary_out) {
    const auto sol = cfg.make_solution();
    const auto& spec = cfg.region;

    io::CsvWriter grid_csv(grid_out);
    grid_csv.cell(std::string("d")).cell(std::string("t")).cell(std::string("density_ok"))
        .cell(std::string("pressure_ok")).cell(std::string("temperature_ok"))
        .cell(std::string("all_ok"));
    grid_csv.end_row();
    bool any_ok = false;
    for (const auto& row : regions::region_grid(sol, spec)) {
        grid_csv.cell(row.d).cell(row.t).cell(row.flags.density_ok)
            .cell(row.flags.pressure_ok).cell(row.flags.temperature_ok)
            .cell(row.flags.all_ok);
        grid_csv.end_row();
        any_ok = any_ok || row.flags.all_ok;
    }

    const auto curves = regions::boundary_curves(sol, spec);
    regions::PhaseTraceOptions topts;
    topts.samples = cfg.numerics.trace_samples;
    topts.coex_T_floor_frac = cfg.numerics.coex_t_floor_frac;
    const auto report = regions::physical_phase_report(sol, cfg.make_potential(), spec, topts);

    io::CsvWriter curve_csv(curves_out);
    curve_csv.cell(std::string("label")).cell(std::string("kind"))
        .cell(std::string("r_star"));
    curve_csv.end_row();
    for (const auto& bc : curves) {
        curve_csv.cell(bc.label).cell(std::string("boundary")).cell(bc.r_star);
        curve_csv.end_row();
    }
    for (const auto& pc : report.curves) {
        curve_csv.cell(std::string("phase"))
            .cell(std::string(pc.kind == regions::PhaseCurveKind::Coexistence ? "coexistence"
                                                                              : "spinodal"))
            .cell(pc.r_star);
        curve_csv.end_row();
    }

    ojson summary;
    summary["all_ok_nonempty"] = any_ok;
    summary["no_phase_transition_in_physical_region"] =
        report.no_phase_transition_in_physical_region;
    summary["boundary_curve_count"] = curves.size();
    summary["phase_curve_count"] = report.curves.size();
    summary["min_distances"] = report.min_distances;
    summary_out << summary.dump() << "\n";
}

void cmd_classify(const config::RunConfig& cfg, std::ostream& out) {
    const auto law = cfg.make_law();
    const auto gens = media::classify_symmetries(law, cfg.q);
    ojson doc;
    doc["q"] = cfg.q;
    ojson list = ojson::array();
    bool degenerate_present = false;
    for (const auto& g : gens) {
        ojson item;
        item["name"] = g.name;
        item["row"] = g.table_row;
        switch (g.kind) {
            case media::GeneratorKind::Translation: {
                item["kind"] = "translation";
                static const char* names[6] = {"t", "x", "y", "z", "v", "T"};
                item["axis"] = names[static_cast<int>(g.axis)];
                break;
            }
            case media::GeneratorKind::Rotation: {
                item["kind"] = "rotation";
                static const char* names[6] = {"t", "x", "y", "z", "v", "T"};
                item["plane"] = {names[static_cast<int>(g.plane_a)],
                                 names[static_cast<int>(g.plane_b)]};
                break;
            }
            case media::GeneratorKind::Scaling: {
                item["kind"] = "scaling";
                ojson coeffs;
                coeffs["t"] = g.scale[0];
                coeffs["x"] = g.scale[1];
                coeffs["y"] = g.scale[2];
                coeffs["z"] = g.scale[3];
                coeffs["v"] = g.scale[4];
                coeffs["T"] = g.scale[5];
                item["coefficients"] = coeffs;
                break;
            }
        }
        item["degenerate"] = g.degenerate;
        if (!g.note.empty()) item["note"] = g.note;
        degenerate_present = degenerate_present || g.degenerate;
        list.push_back(item);
    }
    doc["generators"] = list;
    doc["degenerate_present"] = degenerate_present;
    out << doc.dump() << "\n";
}

void cmd_verify(const config::RunConfig& cfg, const std::string& check, std::ostream& out) {
    ojson doc;
    doc["check"] = check;

    if (check == "residual") {
        const auto sol = cfg.make_solution();
        const auto fields =
            verify::field_set_from_solution(sol, thermo::PotentialModel::ideal(cfg.gas_n,
                                                                               cfg.gas_r));
        const auto pts = sample_points(sol, cfg.numerics);
        std::vector<double> l1;
        for (double h : {cfg.numerics.fd_step, cfg.numerics.fd_step / 2,
                         cfg.numerics.fd_step / 4}) {
            double sum = 0.0;
            for (const auto& P : pts) {
                const auto res = verify::pde_residual(fields, sol.law, sol.q, P, h);
                sum += res.normalized_darcy() + res.normalized_mass() +
                       res.normalized_entropy();
            }
            l1.push_back(sum);
        }
        std::vector<double> orders;
        for (std::size_t i = 0; i + 1 < l1.size(); ++i)
            orders.push_back(std::log2(l1[i] / std::max(l1[i + 1], 1e-300)));
        bool pass = true;
        for (double o : orders) pass = pass && o >= 1.7 && o <= 2.3;
        doc["l1_residuals"] = l1;
        doc["orders"] = orders;
        doc["pass"] = pass;
    } else if (check == "symmetry") {
        const auto sol = cfg.make_solution();
        const auto potential = thermo::PotentialModel::ideal(cfg.gas_n, cfg.gas_r);
        const auto fields = verify::field_set_from_solution(sol, potential);
        const auto pts = sample_points(sol, cfg.numerics);
        double floor = 0.0;
        for (const auto& P : pts)
            floor = std::max(
                floor, verify::pde_residual(fields, sol.law, sol.q, P, cfg.numerics.fd_step)
                           .max_normalized());
        doc["floor"] = floor;
        ojson gens = ojson::array();
        bool pass = true;
        for (const auto& g : media::classify_symmetries(sol.law, sol.q)) {
            if (g.degenerate) continue;
            for (double lambda : {0.1, 0.3}) {
                const double worst = verify::symmetry_orbit_check(
                    fields, g, lambda, pts, sol.law, sol.q, cfg.numerics.fd_step);
                const double ratio = worst / std::max(floor, 1e-300);
                ojson item;
                item["name"] = g.name;
                item["row"] = g.table_row;
                item["lambda"] = lambda;
                item["max_residual"] = worst;
                item["ratio_to_floor"] = ratio;
                gens.push_back(item);
                pass = pass && ratio <= 10.0;
            }
        }
        doc["generators"] = gens;
        doc["pass"] = pass;
    } else if (check == "reduced-ode") {
        const auto sol = cfg.make_solution();
        double worst1 = 0.0, worst2 = 0.0;
        for (double r :
             num::linspace(cfg.numerics.r_min, cfg.numerics.r_max, cfg.numerics.steps)) {
            const auto [r1, r2] = selfsim::reduced_ode_residual(sol, r, cfg.gas_n);
            worst1 = std::max(worst1, r1);
            worst2 = std::max(worst2, r2);
        }
        doc["max_res1"] = worst1;
        doc["max_res2"] = worst2;
        doc["pass"] = worst1 < 1e-8 && worst2 < 1e-8;
    } else if (check == "order") {
        const auto cs = cfg.make_corrections();
        const auto rep = perturb::correction_order_check(cs, {1.0, 0.5, 0.25},
                                                         cfg.numerics.fd_step);
        doc["residuals"] = rep.residuals;
        doc["ratios"] = rep.ratios;
        doc["darcy_floor"] = rep.darcy_floor;
        doc["pass"] = rep.pass;
    } else {
        throw ConfigError("check must be residual, symmetry, reduced-ode or order",
                          "--check");
    }
    out << doc.dump() << "\n";
}

}  // namespace filtrate::cli
