#ifndef MDD_NUMERICS_HPP
#define MDD_NUMERICS_HPP

#include <functional>

namespace mdd::numerics {

using Fn = std::function<double(double)>;

// Adaptive Gauss-Kronrod (7/15) on [a, b]; b may be +infinity, in which case
// the tail is mapped onto a finite interval.
double integrate(const Fn& f, double a, double b, double abs_tol = 1e-11,
                 double* error_estimate = nullptr);

// Root of increasing f(x) = target on [lo, hi] by bisection until the bracket
// is narrower than width_tol (or max_iter halvings). Ends outside the range of
// f return the corresponding bracket end.
double bisect_increasing(const Fn& f, double target, double lo, double hi,
                         double width_tol = 1e-12, int max_iter = 200);

// bisect_increasing followed by secant steps kept inside the final bracket.
double invert_increasing(const Fn& f, double target, double lo, double hi,
                         double width_tol = 1e-12, int max_iter = 200);

// Newton polish for increasing f with derivative df, clamped to [lo, hi].
double newton_polish(const Fn& f, const Fn& df, double target, double x, double lo, double hi,
                     int steps = 3);

// Integral over [0,1]^2 of f by a 128-point Gauss-Legendre product rule.
double gauss_legendre_unit_square(const std::function<double(double, double)>& f);

// Integral over [a,b] by a 128-point Gauss-Legendre rule.
double gauss_legendre(const Fn& f, double a, double b);

}  // namespace mdd::numerics

#endif
