// quadrature.hpp — adaptive Simpson integration for real and complex
// integrands.  Shared by the time-map construction and the drift integral.

#pragma once

#include <cmath>
#include <complex>
#include <functional>

namespace tdse {

namespace detail {

template <class F, class V>
V adaptive_simpson_rec(const F& f, double a, double b, V fa, V fm, V fb,
                       V whole, double tol, int depth) {
    const double m  = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const V flm = f(lm);
    const V frm = f(rm);
    const V left  = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const V right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const V delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Integrates f over [a, b] to absolute tolerance `tol`.  V is double or
// std::complex<double>.
template <class V, class F>
V adaptive_simpson(const F& f, double a, double b, double tol, int max_depth = 48) {
    if (a == b) return V{};
    const V fa = f(a);
    const V fb = f(b);
    const V fm = f(0.5 * (a + b));
    const V whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson_rec<F, V>(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace tdse
