// run_config.hpp — JSON run configuration, pipeline orchestration
// (parse -> time map -> auxiliary solve -> generators -> observables ->
// checks), and result emission.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "tdse/aux_solver.hpp"
#include "tdse/classical_check.hpp"
#include "tdse/generators.hpp"
#include "tdse/observables.hpp"
#include "tdse/system_model.hpp"

#include <json.hpp>

namespace tdse {

inline constexpr int kSchemaVersion = 1;

struct RunConfig {
    SystemClass cls = SystemClass::TO;

    // expression sources, kept verbatim for metadata echo
    std::string g2 = "0.5", g1 = "0", g0 = "0";
    std::string nu = "0", mu = "0", kappa = "0";
    std::optional<std::array<std::string, 6>> tq;  // k, h, g, h0, h1, h2

    double t_o = 0.0;
    double t_end = 10.0;
    std::size_t n_samples = 200;

    // state: exactly one of alpha / (x_o, p_o)
    std::optional<Complex> alpha;
    std::optional<std::pair<double, double>> phase_point;
    double r = 0.0;
    double theta = 0.0;

    std::optional<AuxInitialData> aux_init;  // defaults to the SHO-style data
    Complex c_naught{0.0, 0.0};

    int fock_dim = 40;
    bool run_algebra_suite = false;
    bool run_classical_check = false;

    std::string output_path;         // empty -> stdout
    std::string output_format = "csv";  // csv | json
};

// Parses and schema-validates; throws ConfigError on any violation.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

// Round-trippable metadata echo; parse_config(config_to_json(c)) succeeds.
nlohmann::json config_to_json(const RunConfig& c);

struct PipelineResult {
    TimeMap tmap;
    AuxSolution aux;
    WeylCoefficients weyl;
    Complex alpha;
    Trajectory trajectory;
};

// Runs the full closed-form pipeline.  threads <= 0 selects the
// TDSE_THREADS / OpenMP default.
PipelineResult run_pipeline(const RunConfig& cfg, int threads = 1);

// Classical system matching the configuration: TO uses the g-coefficients,
// TM composes f_j = e^{-2 nu} (g_j o t'), TQ uses the user-supplied inputs.
ClassicalSystem classical_system_for(const RunConfig& cfg, const TimeMap& tmap);

struct ClassicalVerification {
    ClassicalResidualReport coarse;   // at the configured spacing
    ClassicalResidualReport refined;  // at half the spacing
    double convergence_ratio;         // coarse / refined, ~4 for O(delta^2)
};

// Runs the pipeline at the configured resolution and at doubled resolution
// and reports residuals plus the observed convergence ratio.
ClassicalVerification verify_classical(const RunConfig& cfg, int threads = 1);

// CSV with header t,x_mean,p_mean,var_x,var_p,product; 17 significant
// digits, '.' decimal separator, LF line endings.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

// JSON mirror with run metadata.
nlohmann::json trajectory_json(const RunConfig& cfg, const PipelineResult& result);

}  // namespace tdse
