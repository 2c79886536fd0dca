#include "tdse/run_config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "tdse/errors.hpp"

namespace tdse {

namespace {

using nlohmann::json;

SystemClass class_from_string(const std::string& s) {
    if (s == "TO") return SystemClass::TO;
    if (s == "TM") return SystemClass::TM;
    if (s == "TQ") return SystemClass::TQ;
    throw ConfigError("class must be one of TO, TM, TQ (got '" + s + "')");
}

std::string require_string(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_string())
        throw ConfigError(std::string("missing or non-string field '") + key + "'");
    return j.at(key).get<std::string>();
}

double require_number(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number())
        throw ConfigError(std::string("missing or non-numeric field '") + key + "'");
    return j.at(key).get<double>();
}

std::string expr_or(const json& j, const char* key, const char* fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_string())
        throw ConfigError(std::string("field '") + key + "' must be an expression string");
    return j.at(key).get<std::string>();
}

// validate an expression string early so errors carry the field name
CoeffExpr parse_field(const std::string& src, const char* field) {
    try {
        return CoeffExpr::parse(src);
    } catch (const ParseError& e) {
        throw ConfigError(std::string(field) + ": " + e.what() + " at offset " +
                          std::to_string(e.offset));
    }
}

}  // namespace

RunConfig parse_config(const json& j) {
    if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
    if (!j.contains("schema_version") || !j.at("schema_version").is_number_integer())
        throw ConfigError("missing integer field 'schema_version'");
    if (j.at("schema_version").get<int>() != kSchemaVersion)
        throw ConfigError("unsupported schema_version");

    RunConfig c;
    c.cls = class_from_string(require_string(j, "class"));

    if (!j.contains("system") || !j.at("system").is_object())
        throw ConfigError("missing object field 'system'");
    const json& sys = j.at("system");
    c.g2 = require_string(sys, "g2");
    c.g1 = expr_or(sys, "g1", "0");
    c.g0 = expr_or(sys, "g0", "0");
    parse_field(c.g2, "system.g2");
    parse_field(c.g1, "system.g1");
    parse_field(c.g0, "system.g0");

    if (j.contains("gauge")) {
        const json& g = j.at("gauge");
        if (!g.is_object()) throw ConfigError("'gauge' must be an object");
        c.nu = expr_or(g, "nu", "0");
        c.mu = expr_or(g, "mu", "0");
        c.kappa = expr_or(g, "kappa", "0");
        parse_field(c.nu, "gauge.nu");
        parse_field(c.mu, "gauge.mu");
        parse_field(c.kappa, "gauge.kappa");
    }

    if (c.cls == SystemClass::TQ) {
        if (!j.contains("tq") || !j.at("tq").is_object())
            throw ConfigError("class TQ requires the 'tq' coefficient block");
        const json& q = j.at("tq");
        c.tq = {require_string(q, "k"), require_string(q, "h"), require_string(q, "g"),
                expr_or(q, "h0", "0"), require_string(q, "h1"), require_string(q, "h2")};
        const char* names[] = {"tq.k", "tq.h", "tq.g", "tq.h0", "tq.h1", "tq.h2"};
        for (std::size_t i = 0; i < 6; ++i) parse_field((*c.tq)[i], names[i]);
    }

    if (!j.contains("window") || !j.at("window").is_object())
        throw ConfigError("missing object field 'window'");
    const json& w = j.at("window");
    c.t_o = require_number(w, "t_o");
    c.t_end = require_number(w, "t_end");
    const double ns = require_number(w, "n_samples");
    if (!(c.t_end > c.t_o)) throw ConfigError("window must satisfy t_end > t_o");
    if (!(ns >= 2) || ns != std::floor(ns)) throw ConfigError("n_samples must be an integer >= 2");
    c.n_samples = static_cast<std::size_t>(ns);

    if (!j.contains("state") || !j.at("state").is_object())
        throw ConfigError("missing object field 'state'");
    const json& st = j.at("state");
    const bool has_alpha = st.contains("alpha_re") || st.contains("alpha_im");
    const bool has_point = st.contains("x_o") || st.contains("p_o");
    if (has_alpha == has_point)
        throw ConfigError("state must supply exactly one of alpha_re/alpha_im or x_o/p_o");
    if (has_alpha)
        c.alpha = Complex(st.value("alpha_re", 0.0), st.value("alpha_im", 0.0));
    else
        c.phase_point = {require_number(st, "x_o"), require_number(st, "p_o")};
    c.r = st.value("r", 0.0);
    c.theta = st.value("theta", 0.0);
    if (c.r < 0.0) throw ConfigError("squeeze amplitude r must be >= 0");

    if (j.contains("aux")) {
        const json& a = j.at("aux");
        if (a.contains("xi0_re") || a.contains("xi0_im") || a.contains("xidot0_re") ||
            a.contains("xidot0_im")) {
            c.aux_init = AuxInitialData{
                Complex(require_number(a, "xi0_re"), require_number(a, "xi0_im")),
                Complex(require_number(a, "xidot0_re"), require_number(a, "xidot0_im"))};
        }
        c.c_naught = Complex(a.value("c0_re", 0.0), a.value("c0_im", 0.0));
    }

    if (j.contains("verification")) {
        const json& v = j.at("verification");
        c.fock_dim = static_cast<int>(v.value("fock_dim", 40.0));
        if (c.fock_dim < 4) throw ConfigError("fock_dim must be >= 4");
        c.run_algebra_suite = v.value("run_algebra_suite", false);
        c.run_classical_check = v.value("run_classical_check", false);
    }

    if (j.contains("output")) {
        const json& o = j.at("output");
        c.output_path = o.value("path", std::string{});
        c.output_format = o.value("format", std::string{"csv"});
        if (c.output_format != "csv" && c.output_format != "json")
            throw ConfigError("output.format must be 'csv' or 'json'");
    }
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open configuration file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("configuration is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

json config_to_json(const RunConfig& c) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["class"] = to_string(c.cls);
    j["system"] = {{"g2", c.g2}, {"g1", c.g1}, {"g0", c.g0}};
    j["gauge"] = {{"nu", c.nu}, {"mu", c.mu}, {"kappa", c.kappa}};
    if (c.tq)
        j["tq"] = {{"k", (*c.tq)[0]}, {"h", (*c.tq)[1]},  {"g", (*c.tq)[2]},
                   {"h0", (*c.tq)[3]}, {"h1", (*c.tq)[4]}, {"h2", (*c.tq)[5]}};
    j["window"] = {{"t_o", c.t_o}, {"t_end", c.t_end}, {"n_samples", c.n_samples}};
    json st;
    if (c.alpha) {
        st["alpha_re"] = c.alpha->real();
        st["alpha_im"] = c.alpha->imag();
    } else if (c.phase_point) {
        st["x_o"] = c.phase_point->first;
        st["p_o"] = c.phase_point->second;
    }
    st["r"] = c.r;
    st["theta"] = c.theta;
    j["state"] = st;
    if (c.aux_init || c.c_naught != Complex{}) {
        json a;
        if (c.aux_init) {
            a["xi0_re"] = c.aux_init->xi.real();
            a["xi0_im"] = c.aux_init->xi.imag();
            a["xidot0_re"] = c.aux_init->xi_dot.real();
            a["xidot0_im"] = c.aux_init->xi_dot.imag();
        }
        a["c0_re"] = c.c_naught.real();
        a["c0_im"] = c.c_naught.imag();
        j["aux"] = a;
    }
    j["verification"] = {{"fock_dim", c.fock_dim},
                         {"run_algebra_suite", c.run_algebra_suite},
                         {"run_classical_check", c.run_classical_check}};
    j["output"] = {{"path", c.output_path}, {"format", c.output_format}};
    return j;
}

namespace {

PipelineResult run_pipeline_with_samples(const RunConfig& cfg, std::size_t n_samples,
                                         int threads) {
    const CoeffExpr g2 = CoeffExpr::parse(cfg.g2);
    const CoeffExpr g1 = CoeffExpr::parse(cfg.g1);
    const GaugeFunctions gauge{CoeffExpr::parse(cfg.nu), CoeffExpr::parse(cfg.mu),
                               CoeffExpr::parse(cfg.kappa)};

    const bool to = (cfg.cls == SystemClass::TO);
    TimeMap tmap = to ? TimeMap::identity(cfg.t_o, cfg.t_end, n_samples)
                      : TimeMap::build(gauge.nu, cfg.t_o, cfg.t_end, n_samples);

    // TO systems live directly on the window; TM/TQ push the window through
    // the reparameterization, so the oscillator-side functions see the
    // normalized t' that starts at 0.
    std::vector<double> aux_grid;
    if (to)
        aux_grid.assign(tmap.grid_t().begin(), tmap.grid_t().end());
    else
        aux_grid.assign(tmap.grid_tprime().begin(), tmap.grid_tprime().end());

    const AuxInitialData init =
        cfg.aux_init ? *cfg.aux_init : default_initial_data(g2, aux_grid.front());
    AuxSolution aux = solve_auxiliary(g2, aux_grid, init);
    aux = integrate_c(g1, std::move(aux), cfg.c_naught);

    WeylCoefficients weyl = weyl_coefficients(cfg.cls, aux, gauge, tmap);

    StateSpec state{cfg.alpha, cfg.phase_point, SqueezeParams{cfg.r, cfg.theta}};
    const Complex alpha = resolve_alpha(state, weyl);
    Trajectory traj = evaluate_trajectory(weyl, alpha, state.squeeze, threads);

    return PipelineResult{std::move(tmap), std::move(aux), std::move(weyl), alpha,
                          std::move(traj)};
}

}  // namespace

PipelineResult run_pipeline(const RunConfig& cfg, int threads) {
    return run_pipeline_with_samples(cfg, cfg.n_samples, threads);
}

ClassicalSystem classical_system_for(const RunConfig& cfg, const TimeMap& tmap) {
    switch (cfg.cls) {
        case SystemClass::TO:
            return ClassicalSystem::to_class(as_time_fn(CoeffExpr::parse(cfg.g2)),
                                             as_time_fn(CoeffExpr::parse(cfg.g1)));
        case SystemClass::TM: {
            const CoeffExpr nu = CoeffExpr::parse(cfg.nu);
            const CoeffExpr g2 = CoeffExpr::parse(cfg.g2);
            const CoeffExpr g1 = CoeffExpr::parse(cfg.g1);
            // f_j(t) = e^{-2 nu(t)} g_j(t'(t)); the map is copied so the
            // returned functions own everything they need
            auto compose = [](CoeffExpr nu_, CoeffExpr gj, TimeMap m) -> TimeFn {
                return [nu_, gj, m](double t) {
                    return std::exp(-2.0 * nu_.eval(t)) * gj.eval(m.tprime_at(t));
                };
            };
            return ClassicalSystem::tm_class(as_time_fn(nu), compose(nu, g2, tmap),
                                             compose(nu, g1, tmap));
        }
        case SystemClass::TQ: {
            if (!cfg.tq) throw ConfigError("TQ classical check needs the tq block");
            return ClassicalSystem::tq_class(as_time_fn(CoeffExpr::parse((*cfg.tq)[0])),
                                             as_time_fn(CoeffExpr::parse((*cfg.tq)[1])),
                                             as_time_fn(CoeffExpr::parse((*cfg.tq)[2])),
                                             as_time_fn(CoeffExpr::parse((*cfg.tq)[5])),
                                             as_time_fn(CoeffExpr::parse((*cfg.tq)[4])));
        }
    }
    throw ConfigError("unreachable system class");
}

ClassicalVerification verify_classical(const RunConfig& cfg, int threads) {
    PipelineResult coarse = run_pipeline_with_samples(cfg, cfg.n_samples, threads);
    PipelineResult fine = run_pipeline_with_samples(cfg, 2 * cfg.n_samples - 1, threads);

    ClassicalVerification v{
        verify_classical_motion(coarse.trajectory, classical_system_for(cfg, coarse.tmap)),
        verify_classical_motion(fine.trajectory, classical_system_for(cfg, fine.tmap)), 0.0};
    v.convergence_ratio =
        (v.refined.max_residual() > 0.0) ? v.coarse.max_residual() / v.refined.max_residual()
                                         : 0.0;
    return v;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    os << "t,x_mean,p_mean,var_x,var_p,product\n";
    char buf[160];
    for (std::size_t i = 0; i < traj.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", traj.grid[i],
                      traj.x_mean[i], traj.p_mean[i], traj.var_x[i], traj.var_p[i],
                      traj.product[i]);
        os << buf;
    }
}

json trajectory_json(const RunConfig& cfg, const PipelineResult& result) {
    json j;
    j["config"] = config_to_json(cfg);
    j["alpha"] = {result.alpha.real(), result.alpha.imag()};
    const Trajectory& t = result.trajectory;
    j["trajectory"] = {{"t", t.grid},         {"x_mean", t.x_mean}, {"p_mean", t.p_mean},
                       {"var_x", t.var_x},    {"var_p", t.var_p},  {"product", t.product}};
    return j;
}

}  // namespace tdse
