#include "tdse/system_model.hpp"

#include <algorithm>
#include <cmath>

#include "tdse/quadrature.hpp"

namespace tdse {

const char* to_string(SystemClass cls) {
    switch (cls) {
        case SystemClass::TO: return "TO";
        case SystemClass::TM: return "TM";
        case SystemClass::TQ: return "TQ";
    }
    return "?";
}

GaugeFunctions GaugeFunctions::identity() {
    return GaugeFunctions{CoeffExpr::parse("0"), CoeffExpr::parse("0"), CoeffExpr::parse("0")};
}

TimeMap TimeMap::build(const CoeffExpr& nu, double t_o, double t_end, std::size_t n_samples) {
    if (!(t_end > t_o))
        throw ConfigError("time window must satisfy t_end > t_o");
    if (n_samples < 2)
        throw ConfigError("time map needs at least 2 samples");

    TimeMap m(nu);
    m.grid_t_.resize(n_samples);
    m.grid_tp_.resize(n_samples);
    m.f_.resize(n_samples);

    const double dt = (t_end - t_o) / static_cast<double>(n_samples - 1);
    auto f = [&nu](double s) { return std::exp(-2.0 * nu.eval(s)); };

    double acc = 0.0;
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double t = (i + 1 == n_samples) ? t_end : t_o + dt * static_cast<double>(i);
        m.grid_t_[i] = t;
        m.f_[i] = f(t);
        if (i > 0)
            acc += adaptive_simpson<double>(f, m.grid_t_[i - 1], t, 1e-12);
        m.grid_tp_[i] = acc;
    }

    // dt'/dt = exp(-2 nu) > 0, so the image grid must be strictly increasing
    for (std::size_t i = 1; i < n_samples; ++i)
        if (!(m.grid_tp_[i] > m.grid_tp_[i - 1]))
            throw EvalError("time map is not strictly increasing");
    return m;
}

TimeMap TimeMap::identity(double t_o, double t_end, std::size_t n_samples) {
    return build(CoeffExpr::parse("0"), t_o, t_end, n_samples);
}

double TimeMap::tprime_at(double t) const {
    const double lo = grid_t_.front(), hi = grid_t_.back();
    if (t < lo - 1e-12 || t > hi + 1e-12)
        throw EvalError("time outside the mapped window");
    t = std::clamp(t, lo, hi);

    auto it = std::upper_bound(grid_t_.begin(), grid_t_.end(), t);
    std::size_t i = (it == grid_t_.begin()) ? 0 : static_cast<std::size_t>(it - grid_t_.begin()) - 1;
    if (i + 1 >= grid_t_.size()) i = grid_t_.size() - 2;

    const double h = grid_t_[i + 1] - grid_t_[i];
    const double s = (t - grid_t_[i]) / h;
    const double y0 = grid_tp_[i], y1 = grid_tp_[i + 1];
    const double d0 = f_[i] * h, d1 = f_[i + 1] * h;

    // cubic Hermite in the normalized coordinate s
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * d0 +
           (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * d1;
}

double TimeMap::dtprime_dt(double t) const {
    return std::exp(-2.0 * nu_.eval(t));
}

std::vector<double> derive_tm_f0(const CoeffExpr& g0, const TimeMap& map, const CoeffExpr& nu) {
    std::vector<double> out;
    out.reserve(map.size());
    auto ts = map.grid_t();
    auto tps = map.grid_tprime();
    for (std::size_t i = 0; i < map.size(); ++i)
        out.push_back(std::exp(-2.0 * nu.eval(ts[i])) * g0.eval(tps[i]));
    return out;
}

}  // namespace tdse
