#include "mdd/marginals.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "mdd/errors.hpp"
#include "mdd/spec_string.hpp"

namespace mdd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::domain_error("quantile: probability " + format_double(p) + " outside [0,1]");
    }
}

}  // namespace

double std_normal_cdf(double z) {
    if (std::isnan(z)) return z;
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

// Acklam's rational approximation (relative error < 1.2e-9) followed by one
// Newton step against the erfc-based cdf.
double std_normal_quantile(double p) {
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    if (p <= 0.0) return -kInf;
    if (p >= 1.0) return kInf;

    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    const double phi = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
    // Work in the smaller tail so the residual keeps its relative precision.
    const double resid = p < 0.5 ? std_normal_cdf(x) - p : (1.0 - p) - std_normal_cdf(-x);
    return x - resid / phi;
}

UnivariateDist UnivariateDist::exponential(double mean) {
    if (!(mean > 0.0) || !std::isfinite(mean)) {
        throw SpecError("exponential mean must be positive, got " + format_double(mean));
    }
    return UnivariateDist(Exponential{mean});
}

UnivariateDist UnivariateDist::normal(double mu, double sd) {
    if (!std::isfinite(mu)) throw SpecError("normal mu must be finite");
    if (!(sd > 0.0) || !std::isfinite(sd)) {
        throw SpecError("normal sd must be positive, got " + format_double(sd));
    }
    return UnivariateDist(Normal{mu, sd});
}

UnivariateDist UnivariateDist::uniform(double lo, double hi) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw SpecError("uniform requires finite lo < hi");
    }
    return UnivariateDist(Uniform{lo, hi});
}

UnivariateDist UnivariateDist::parse(std::string_view text) {
    const SpecString s = SpecString::parse(text);
    if (s.name == "exp" || s.name == "exponential") {
        s.expect_only({"mean"});
        return exponential(s.get_double("mean", 1.0));
    }
    if (s.name == "normal") {
        s.expect_only({"mu", "sd"});
        return normal(s.get_double("mu", 0.0), s.get_double("sd", 1.0));
    }
    if (s.name == "uniform") {
        s.expect_only({"lo", "hi"});
        return uniform(s.get_double("lo", 0.0), s.get_double("hi", 1.0));
    }
    throw SpecError("unknown distribution family '" + s.name + "'");
}

std::string UnivariateDist::to_string() const {
    return std::visit(
        Overloaded{
            [](const Exponential& e) { return "exp:mean=" + format_double(e.mean); },
            [](const Normal& n) {
                return "normal:mu=" + format_double(n.mu) + ",sd=" + format_double(n.sd);
            },
            [](const Uniform& u) {
                return "uniform:lo=" + format_double(u.lo) + ",hi=" + format_double(u.hi);
            },
        },
        family_);
}

double UnivariateDist::cdf(double x) const {
    return std::visit(Overloaded{
                          [x](const Exponential& e) {
                              return x <= 0.0 ? 0.0 : -std::expm1(-x / e.mean);
                          },
                          [x](const Normal& n) { return std_normal_cdf((x - n.mu) / n.sd); },
                          [x](const Uniform& u) {
                              if (x <= u.lo) return 0.0;
                              if (x >= u.hi) return 1.0;
                              return (x - u.lo) / (u.hi - u.lo);
                          },
                      },
                      family_);
}

double UnivariateDist::survival(double x) const {
    return std::visit(Overloaded{
                          [x](const Exponential& e) {
                              return x <= 0.0 ? 1.0 : std::exp(-x / e.mean);
                          },
                          [x](const Normal& n) { return std_normal_cdf(-(x - n.mu) / n.sd); },
                          [x](const Uniform& u) {
                              if (x <= u.lo) return 1.0;
                              if (x >= u.hi) return 0.0;
                              return (u.hi - x) / (u.hi - u.lo);
                          },
                      },
                      family_);
}

double UnivariateDist::pdf(double x) const {
    return std::visit(Overloaded{
                          [x](const Exponential& e) {
                              return x < 0.0 ? 0.0 : std::exp(-x / e.mean) / e.mean;
                          },
                          [x](const Normal& n) {
                              const double z = (x - n.mu) / n.sd;
                              return std::exp(-0.5 * z * z) /
                                     (n.sd * std::sqrt(2.0 * std::numbers::pi));
                          },
                          [x](const Uniform& u) {
                              return (x < u.lo || x > u.hi) ? 0.0 : 1.0 / (u.hi - u.lo);
                          },
                      },
                      family_);
}

double UnivariateDist::quantile(double p) const {
    check_probability(p);
    const double lo = support_lower();
    const double hi = support_upper();
    if (p == 0.0 || p == 1.0) {
        const double end = p == 0.0 ? lo : hi;
        if (!std::isfinite(end)) {
            throw std::domain_error("quantile: probability " + format_double(p) +
                                    " maps to an infinite support endpoint");
        }
        return end;
    }
    return std::visit(Overloaded{
                          [p](const Exponential& e) { return -e.mean * std::log1p(-p); },
                          [p](const Normal& n) { return n.mu + n.sd * std_normal_quantile(p); },
                          [p](const Uniform& u) { return u.lo + p * (u.hi - u.lo); },
                      },
                      family_);
}

double UnivariateDist::residual_survival(double t, double x) const {
    const double st = survival(t);
    if (!(st > 0.0)) {
        throw ConditioningError("residual survival: Pr(X > " + format_double(t) + ") is 0");
    }
    if (x <= 0.0) return 1.0;
    return survival(t + x) / st;
}

double UnivariateDist::support_lower() const {
    return std::visit(Overloaded{
                          [](const Exponential&) { return 0.0; },
                          [](const Normal&) { return -kInf; },
                          [](const Uniform& u) { return u.lo; },
                      },
                      family_);
}

double UnivariateDist::support_upper() const {
    return std::visit(Overloaded{
                          [](const Exponential&) { return kInf; },
                          [](const Normal&) { return kInf; },
                          [](const Uniform& u) { return u.hi; },
                      },
                      family_);
}

double UnivariateDist::mean() const {
    return std::visit(Overloaded{
                          [](const Exponential& e) { return e.mean; },
                          [](const Normal& n) { return n.mu; },
                          [](const Uniform& u) { return 0.5 * (u.lo + u.hi); },
                      },
                      family_);
}

bool operator==(const UnivariateDist& a, const UnivariateDist& b) {
    if (a.family_.index() != b.family_.index()) return false;
    return a.to_string() == b.to_string();
}

}  // namespace mdd
