// system_model.hpp — definitions of the three system classes, the gauge
// functions, and the t <-> t' reparameterization connecting the laboratory
// time of TM/TQ systems to the oscillator time t'.

#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "tdse/coeff_expr.hpp"

namespace tdse {

enum class SystemClass { TO, TM, TQ };

const char* to_string(SystemClass cls);

// Oscillator-picture system: coefficients of X^2, X, I as functions of t'.
struct ToSystem {
    CoeffExpr g2, g1, g0;
};

// Gauge functions of t.  f(t) = exp(-2 nu(t)) is the inverse time-dependent
// mass, so nu alone controls the time reparameterization.
struct GaugeFunctions {
    CoeffExpr nu, mu, kappa;

    static GaugeFunctions identity();
};

// Quadratic-Hamiltonian picture inputs, all functions of t.  These are user
// data; the library never derives them from the TO side.
struct TqSystem {
    CoeffExpr k, h, g, h0, h1, h2;
};

// Monotone map t -> t'(t) = \int_{t_o}^{t} exp(-2 nu(s)) ds on a uniform
// t-grid, with cubic Hermite dense output between samples (the derivative
// dt'/dt = exp(-2 nu) is available exactly everywhere).
class TimeMap {
public:
    // Adaptive Simpson per grid interval, absolute tolerance 1e-12.
    static TimeMap build(const CoeffExpr& nu, double t_o, double t_end, std::size_t n_samples);

    // t' == t - t_o (nu = 0); used for the TO class.
    static TimeMap identity(double t_o, double t_end, std::size_t n_samples);

    double t_start() const { return grid_t_.front(); }
    double t_end() const { return grid_t_.back(); }
    double tprime_end() const { return grid_tp_.back(); }
    std::size_t size() const { return grid_t_.size(); }

    std::span<const double> grid_t() const { return grid_t_; }
    std::span<const double> grid_tprime() const { return grid_tp_; }

    // Dense evaluation for t inside the window; throws EvalError outside.
    double tprime_at(double t) const;
    // dt'/dt = exp(-2 nu(t)).
    double dtprime_dt(double t) const;

private:
    explicit TimeMap(CoeffExpr nu) : nu_(std::move(nu)) {}

    std::vector<double> grid_t_;
    std::vector<double> grid_tp_;
    std::vector<double> f_;  // exp(-2 nu) at the samples
    CoeffExpr nu_;
};

// f^(0)(t) = exp(-2 nu(t)) g^(0)(t'(t)), sampled on the map's t-grid (the
// inversion of g^(0)-hat = exp(2 nu) f^(0)).
std::vector<double> derive_tm_f0(const CoeffExpr& g0, const TimeMap& map, const CoeffExpr& nu);

// Composition (fn o t')(t): the "hat" of a t'-side function.  Works for any
// callable of double; the return type follows the callable.
template <class F>
auto hat_at(F&& fn, const TimeMap& map, double t) {
    return fn(map.tprime_at(t));
}

template <class F>
auto hat_samples(F&& fn, const TimeMap& map) {
    using V = decltype(fn(0.0));
    std::vector<V> out;
    out.reserve(map.size());
    for (double tp : map.grid_tprime()) out.push_back(fn(tp));
    return out;
}

}  // namespace tdse
