// tdse — CLI front end.
//
//   tdse run <config.json> [--out PATH]        trajectory computation
//   tdse verify-algebra --dim N [--out PATH]   commutator/Casimir suite
//   tdse verify-classical <config.json>        Hamilton-equation residuals
//   tdse sho-check --omega W --r R --theta TH  dual-path oscillator check
//
// Exit codes: 0 success, 2 validation error, 3 numerical failure
// (Wronskian drift, imaginary residue), 4 suite assertion failure.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>

#include "tdse/errors.hpp"
#include "tdse/fock_rep.hpp"
#include "tdse/kernels.hpp"
#include "tdse/observables.hpp"
#include "tdse/run_config.hpp"

namespace {

using nlohmann::json;

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw tdse::ConfigError("cannot open output file '" + path + "'");
    out << text;
}

int cmd_run(const std::string& config_path, const std::string& out_override) {
    tdse::RunConfig cfg = tdse::load_config(config_path);
    if (!out_override.empty()) cfg.output_path = out_override;

    const int threads = tdse::effective_threads(0);
    tdse::PipelineResult result = tdse::run_pipeline(cfg, threads);

    if (cfg.output_format == "csv") {
        std::ostringstream os;
        tdse::write_trajectory_csv(os, result.trajectory);
        write_text(cfg.output_path, os.str());
    } else {
        write_text(cfg.output_path, tdse::trajectory_json(cfg, result).dump(2) + "\n");
    }

    if (cfg.run_algebra_suite) {
        double worst = 0.0;
        for (const auto& r : tdse::algebra_relation_residuals(cfg.fock_dim))
            worst = std::max(worst, r.residual);
        if (worst > 1e-12) {
            std::cerr << "algebra suite residual " << worst << " exceeds 1e-12\n";
            return 4;
        }
    }
    if (cfg.run_classical_check) {
        const auto v = tdse::verify_classical(cfg, threads);
        std::cerr << "classical residual " << v.coarse.max_residual() << " at delta "
                  << v.coarse.delta << ", convergence ratio " << v.convergence_ratio << "\n";
    }
    return 0;
}

int cmd_verify_algebra(int dim, const std::string& out_path) {
    const auto residuals = tdse::algebra_relation_residuals(dim);
    const auto closure = tdse::closure_report(dim);

    json j;
    j["dim"] = dim;
    j["relations"] = json::array();
    double worst = 0.0;
    for (const auto& r : residuals) {
        j["relations"].push_back(
            {{"relation", r.relation}, {"N", r.dim}, {"band", r.band}, {"residual", r.residual}});
        worst = std::max(worst, r.residual);
    }
    j["closure"] = {{"max_decomposition_residual", closure.max_decomposition_residual},
                    {"max_coefficient_error", closure.max_coefficient_error}};
    write_text(out_path, j.dump(2) + "\n");

    if (worst > 1e-12 || closure.max_decomposition_residual > 1e-10 ||
        closure.max_coefficient_error > 1e-10) {
        std::cerr << "algebra suite failed: worst relation residual " << worst
                  << ", closure residual " << closure.max_decomposition_residual << "\n";
        return 4;
    }
    return 0;
}

int cmd_verify_classical(const std::string& config_path) {
    tdse::RunConfig cfg = tdse::load_config(config_path);
    const auto v = tdse::verify_classical(cfg, tdse::effective_threads(0));

    json j;
    j["class"] = tdse::to_string(cfg.cls);
    j["delta"] = v.coarse.delta;
    j["max_residual"] = v.coarse.max_residual();
    j["max_residual_refined"] = v.refined.max_residual();
    j["convergence_ratio"] = v.convergence_ratio;
    std::cout << j.dump(2) << "\n";

    // second-order stencil: the residual must drop by ~4 under refinement,
    // unless it already sits at the rounding floor
    const bool at_floor = v.coarse.max_residual() < 1e-9;
    if (!at_floor && (v.convergence_ratio < 3.0 || v.convergence_ratio > 5.5)) {
        std::cerr << "classical check: convergence ratio " << v.convergence_ratio
                  << " is not second order\n";
        return 4;
    }
    return 0;
}

int cmd_sho_check(double omega, double r, double theta, std::size_t samples, double tol) {
    // dual path: generic squeezed product from the integrated auxiliary
    // solution vs the closed harmonic-oscillator form
    tdse::RunConfig cfg;
    cfg.cls = tdse::SystemClass::TO;
    char g2[64];
    std::snprintf(g2, sizeof g2, "%.17g", 0.5 * omega * omega);
    cfg.g2 = g2;
    cfg.t_o = 0.0;
    cfg.t_end = 10.0;
    cfg.n_samples = samples;
    cfg.alpha = tdse::Complex{0.0, 0.0};
    cfg.r = r;
    cfg.theta = theta;

    const tdse::PipelineResult result = tdse::run_pipeline(cfg, 1);
    double max_dev = 0.0;
    for (std::size_t i = 0; i < result.trajectory.size(); ++i) {
        const double closed =
            tdse::sho_squeezed_product(omega, r, theta, result.trajectory.grid[i] - cfg.t_o);
        max_dev = std::max(max_dev, std::abs(result.trajectory.product[i] - closed));
    }
    std::cout << "sho-check omega=" << omega << " r=" << r << " theta=" << theta
              << " samples=" << samples << " max_deviation=" << max_dev << "\n";
    if (max_dev > tol) {
        std::cerr << "sho-check deviation " << max_dev << " exceeds tolerance " << tol << "\n";
        return 4;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"time-dependent Schrodinger symmetry-algebra toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    int dim = 40;
    double omega = 1.0, r = 0.5, theta = 0.3, tol = 1e-8;
    std::size_t samples = 200;

    auto* run = app.add_subcommand("run", "compute a trajectory from a config file");
    run->add_option("config", config_path, "JSON configuration")->required();
    run->add_option("--out", out_path, "override the configured output path");

    auto* va = app.add_subcommand("verify-algebra", "commutator and Casimir residuals");
    va->add_option("--dim", dim, "truncation dimension")->capture_default_str();
    va->add_option("--out", out_path, "write the JSON report to a file");

    auto* vc = app.add_subcommand("verify-classical", "Hamilton-equation residual check");
    vc->add_option("config", config_path, "JSON configuration")->required();

    auto* sho = app.add_subcommand("sho-check", "squeezed oscillator closed-form check");
    sho->add_option("--omega", omega, "oscillator frequency")->capture_default_str();
    sho->add_option("--r", r, "squeeze amplitude")->capture_default_str();
    sho->add_option("--theta", theta, "squeeze phase")->capture_default_str();
    sho->add_option("--samples", samples, "number of samples")->capture_default_str();
    sho->add_option("--tol", tol, "failure tolerance")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, out_path);
        if (va->parsed()) return cmd_verify_algebra(dim, out_path);
        if (vc->parsed()) return cmd_verify_classical(config_path);
        if (sho->parsed()) return cmd_sho_check(omega, r, theta, samples, tol);
    } catch (const tdse::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const tdse::ParseError& e) {
        std::cerr << "expression error: " << e.what() << " (offset " << e.offset << ")\n";
        return 2;
    } catch (const tdse::WronskianDriftError& e) {
        std::cerr << "numerical failure: " << e.what() << " (defect " << e.defect << " at t' "
                  << e.at_time << ")\n";
        return 3;
    } catch (const tdse::InvalidInitialData& e) {
        std::cerr << "numerical failure: " << e.what() << " (defect " << e.defect << ")\n";
        return 3;
    } catch (const tdse::ImaginaryResidueError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const tdse::EvalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
