#include "mdd/numerics.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>

namespace mdd::numerics {

double integrate(const Fn& f, double a, double b, double abs_tol, double* error_estimate) {
    using boost::math::quadrature::gauss_kronrod;
    if (a == b) return 0.0;
    double l1 = 0.0;
    double err = 0.0;
    // boost's tolerance is relative to the L1 norm; scale so the absolute
    // target is honored for integrands of any magnitude.
    const double first = gauss_kronrod<double, 15>::integrate(f, a, b, 0, 1e-3, &err, &l1);
    const double rel = l1 > 0.0 ? std::max(abs_tol / l1, 1e-13) : 1e-13;
    if (err <= abs_tol) {
        if (error_estimate) *error_estimate = err;
        return first;
    }
    const double value = gauss_kronrod<double, 31>::integrate(f, a, b, 15, rel, &err, &l1);
    if (error_estimate) *error_estimate = err;
    return value;
}

double bisect_increasing(const Fn& f, double target, double lo, double hi, double width_tol,
                         int max_iter) {
    const double flo = f(lo) - target;
    if (flo >= 0.0) return lo;
    const double fhi = f(hi) - target;
    if (fhi <= 0.0) return hi;
    std::uintmax_t iters = static_cast<std::uintmax_t>(max_iter);
    auto [a, b] = boost::math::tools::bisect([&](double x) { return f(x) - target; }, lo, hi,
                                             [width_tol](double l, double r) {
                                                 return r - l <= width_tol;
                                             },
                                             iters);
    return 0.5 * (a + b);
}

double invert_increasing(const Fn& f, double target, double lo, double hi, double width_tol,
                         int max_iter) {
    const double flo = f(lo) - target;
    if (flo >= 0.0) return lo;
    const double fhi = f(hi) - target;
    if (fhi <= 0.0) return hi;
    std::uintmax_t iters = static_cast<std::uintmax_t>(max_iter);
    auto [a, b] = boost::math::tools::bisect([&](double x) { return f(x) - target; }, lo, hi,
                                             [width_tol](double l, double r) {
                                                 return r - l <= width_tol;
                                             },
                                             iters);
    double fa = f(a) - target;
    double fb = f(b) - target;
    double x = 0.5 * (a + b);
    for (int i = 0; i < 4 && fb != fa; ++i) {
        const double s = b - fb * (b - a) / (fb - fa);
        if (!(s >= a && s <= b)) break;
        const double fs = f(s) - target;
        x = s;
        if (fs == 0.0) break;
        if (fs < 0.0) {
            a = s;
            fa = fs;
        } else {
            b = s;
            fb = fs;
        }
    }
    return x;
}

double newton_polish(const Fn& f, const Fn& df, double target, double x, double lo, double hi,
                     int steps) {
    double resid = f(x) - target;
    for (int i = 0; i < steps && resid != 0.0; ++i) {
        const double slope = df(x);
        if (!(slope > 0.0) || !std::isfinite(slope)) break;
        const double next = std::clamp(x - resid / slope, lo, hi);
        const double next_resid = f(next) - target;
        if (next == x || std::abs(next_resid) >= std::abs(resid)) break;
        x = next;
        resid = next_resid;
    }
    return x;
}

double gauss_legendre(const Fn& f, double a, double b) {
    return boost::math::quadrature::gauss<double, 128>::integrate(f, a, b);
}

double gauss_legendre_unit_square(const std::function<double(double, double)>& f) {
    using boost::math::quadrature::gauss;
    return gauss<double, 128>::integrate(
        [&](double u) {
            return gauss<double, 128>::integrate([&](double v) { return f(u, v); }, 0.0, 1.0);
        },
        0.0, 1.0);
}

}  // namespace mdd::numerics
