#include "mdd/regression.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "mdd/errors.hpp"
#include "mdd/numerics.hpp"
#include "mdd/spec_string.hpp"

namespace mdd {

namespace {

double d1(const Distortion& d, double u, double v) {
    const std::array<double, 2> p{u, v};
    return d.partial(0, p);
}

}  // namespace

ConditionalLaw::ConditionalLaw(MddModel model, double given_x)
    : model_(std::move(model)), x_(given_x) {
    if (model_.dim() != 2) throw std::invalid_argument("conditional law needs a bivariate model");
    if (std::isnan(given_x)) throw std::invalid_argument("conditional law: x is NaN");
    u_ = std::clamp(model_.baselines()[0].cdf(given_x), kMinLevel, 1.0);
    const Distortion& d = model_.distortion();
    norm_ = d1(d, u_, 1.0);
    if (!(norm_ > 0.0)) {
        throw ConditioningError("conditional law: dD/du vanishes at u=" + format_double(u_));
    }
    const double low = d1(d, u_, 1e-8) / norm_;
    if (low > 1e-6) {
        throw std::domain_error("conditional law: dD/du(u, v) does not vanish as v -> 0 (ratio " +
                                format_double(low) + " at v=1e-8)");
    }
}

double ConditionalLaw::conditional_distortion(double v) const {
    if (v <= 0.0) return 0.0;
    if (v >= 1.0) return 1.0;
    return std::clamp(d1(model_.distortion(), u_, v) / norm_, 0.0, 1.0);
}

double ConditionalLaw::conditional_distortion_density(double v) const {
    const Distortion& d = model_.distortion();
    if (d.has_density()) {
        const std::array<double, 2> p{u_, v};
        return std::max(0.0, d.density(p) / norm_);
    }
    constexpr double h = 1e-6;
    const double lo = std::max(0.0, v - h), hi = std::min(1.0, v + h);
    return std::max(0.0, (conditional_distortion(hi) - conditional_distortion(lo)) / (hi - lo));
}

double ConditionalLaw::conditional_cdf(double y) const {
    return conditional_distortion(model_.baselines()[1].cdf(y));
}

double ConditionalLaw::conditional_pdf(double y) const {
    const UnivariateDist& g = model_.baselines()[1];
    const double f = g.pdf(y);
    if (f == 0.0) return 0.0;
    return f * conditional_distortion_density(g.cdf(y));
}

double ConditionalLaw::inverse_distortion(double q) const {
    auto f = [this](double v) { return conditional_distortion(v); };
    double v = numerics::bisect_increasing(f, q, 0.0, 1.0, 1e-12, 200);
    if (model_.distortion().has_density()) {
        auto df = [this](double w) { return conditional_distortion_density(w); };
        v = numerics::newton_polish(f, df, q, v, 0.0, 1.0, 3);
    }
    return v;
}

double ConditionalLaw::conditional_quantile(double q) const {
    if (!(q > 0.0 && q < 1.0)) {
        throw std::domain_error("conditional_quantile: q=" + format_double(q) + " outside (0,1)");
    }
    const UnivariateDist& g = model_.baselines()[1];
    const double v = inverse_distortion(q);
    if (v <= 0.0) return g.support_lower();
    if (v >= 1.0) return g.support_upper();
    return g.quantile(v);
}

namespace {

// Start of the integration split: x for ordered pairs, else a finite point of
// the baseline support.
double split_point(const ConditionalLaw& law) {
    const UnivariateDist& g = law.model().baselines()[1];
    if (law.model().distortion().provenance() == Provenance::OrderedPair) {
        return std::clamp(law.given_x(), g.support_lower(), g.support_upper());
    }
    if (std::isfinite(g.support_lower())) return g.support_lower();
    return g.quantile(0.5);
}

// int_{-inf}^{s} h(y) dy over the part of the support below s.
double integrate_below(const numerics::Fn& h, double s, double support_lower) {
    if (std::isfinite(support_lower)) {
        if (s <= support_lower) return 0.0;
        return numerics::integrate(h, support_lower, s);
    }
    return numerics::integrate([&](double t) { return h(s - t); }, 0.0, INFINITY);
}

double integrate_above(const numerics::Fn& h, double s, double support_upper) {
    if (std::isfinite(support_upper)) {
        if (s >= support_upper) return 0.0;
        return numerics::integrate(h, s, support_upper);
    }
    return numerics::integrate(h, s, INFINITY);
}

}  // namespace

double mean_regression(const ConditionalLaw& law) {
    const UnivariateDist& g = law.model().baselines()[1];
    const double s = split_point(law);
    const double above = integrate_above([&](double y) { return 1.0 - law.conditional_cdf(y); }, s,
                                         g.support_upper());
    const double below =
        integrate_below([&](double y) { return law.conditional_cdf(y); }, s, g.support_lower());
    return s + above - below;
}

double mean_regression_density(const ConditionalLaw& law) {
    const UnivariateDist& g = law.model().baselines()[1];
    const double s = split_point(law);
    auto h = [&](double y) { return y * law.conditional_pdf(y); };
    return integrate_above(h, s, g.support_upper()) + integrate_below(h, s, g.support_lower());
}

QuantileBand quantile_band(const LawFamily& laws, const std::vector<double>& xs,
                           const std::vector<std::pair<double, double>>& levels, Exec exec) {
    for (const auto& [lo, hi] : levels) {
        if (!(lo > 0.0 && lo <= hi && hi < 1.0)) {
            throw std::invalid_argument("quantile_band: levels must satisfy 0 < lower <= upper < 1");
        }
    }
    QuantileBand band;
    band.levels = levels;
    band.xs = xs;
    band.median.assign(xs.size(), 0.0);
    band.lower.assign(levels.size(), std::vector<double>(xs.size()));
    band.upper.assign(levels.size(), std::vector<double>(xs.size()));
    const long n = static_cast<long>(xs.size());
    auto one = [&](long i) {
        const std::size_t k = static_cast<std::size_t>(i);
        const ConditionalLaw law = laws(xs[k]);
        band.median[k] = law.median_regression();
        for (std::size_t l = 0; l < levels.size(); ++l) {
            band.lower[l][k] = law.conditional_quantile(levels[l].first);
            band.upper[l][k] = law.conditional_quantile(levels[l].second);
        }
    };
    if (exec == Exec::Parallel) {
        // Exceptions cannot cross the OpenMP region; keep the first one.
        std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < n; ++i) {
            try {
                one(i);
            } catch (...) {
#pragma omp critical
                if (!error) error = std::current_exception();
            }
        }
        if (error) std::rethrow_exception(error);
    } else {
        for (long i = 0; i < n; ++i) one(i);
    }
    return band;
}

QuantileBand quantile_band(const MddModel& model, const std::vector<double>& xs,
                           const std::vector<std::pair<double, double>>& levels, Exec exec) {
    return quantile_band([&model](double x) { return ConditionalLaw(model, x); }, xs, levels, exec);
}

double marginal_pdf(const MddModel& model, std::size_t i, double x) {
    if (i >= model.dim()) throw std::out_of_range("marginal_pdf: index out of range");
    const UnivariateDist& g = model.baselines()[i];
    const double f = g.pdf(x);
    if (f == 0.0) return 0.0;
    std::vector<double> u(model.dim(), 1.0);
    u[i] = g.cdf(x);
    return f * model.distortion().partial(i, u);
}

}  // namespace mdd
