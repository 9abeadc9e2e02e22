#ifndef MDD_REGRESSION_HPP
#define MDD_REGRESSION_HPP

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "mdd/distortion.hpp"
#include "mdd/exec.hpp"

namespace mdd {

// Law of (X2 | X1 = x) for a bivariate model:
//   F_{2|1}(y|x) = D_{2|1}(G_2(y) | G_1(x)),
//   D_{2|1}(v|u) = dD/du(u, v) / dD/du(u, 1).
// Below the support of G_1 the conditioning level is held at 1e-10, the
// continuity limit of the conditional law.
class ConditionalLaw {
public:
    static constexpr double kMinLevel = 1e-10;

    // Throws ConditioningError when dD/du(u,1) vanishes and std::domain_error
    // when dD/du(u, 1e-8) / dD/du(u, 1) > 1e-6 (the conditional would put mass
    // at the bottom of the support).
    ConditionalLaw(MddModel model, double given_x);

    double given_x() const { return x_; }
    double level() const { return u_; }
    const MddModel& model() const { return model_; }

    // D_{2|1}(v | G_1(x)) and its derivative in v.
    double conditional_distortion(double v) const;
    double conditional_distortion_density(double v) const;

    double conditional_cdf(double y) const;
    double conditional_pdf(double y) const;
    // G_2^{-1}(D_{2|1}^{-1}(q)); q in (0,1).
    double conditional_quantile(double q) const;
    double median_regression() const { return conditional_quantile(0.5); }

private:
    double inverse_distortion(double q) const;

    MddModel model_;
    double x_;
    double u_;
    double norm_;
};

// E(X2 | X1 = x) as s + int_s^inf (1 - F) dy - int_{-inf}^s F dy, started at
// x for ordered pairs (the conditional support begins there).
double mean_regression(const ConditionalLaw& law);
// Same quantity from the conditional density: int y f_{2|1}(y|x) dy.
double mean_regression_density(const ConditionalLaw& law);

struct QuantileBand {
    std::vector<std::pair<double, double>> levels;  // e.g. (0.05, 0.95)
    std::vector<double> xs;
    std::vector<double> median;
    std::vector<std::vector<double>> lower;  // [level][x]
    std::vector<std::vector<double>> upper;
};

using LawFamily = std::function<ConditionalLaw(double)>;

QuantileBand quantile_band(const LawFamily& laws, const std::vector<double>& xs,
                           const std::vector<std::pair<double, double>>& levels,
                           Exec exec = Exec::Parallel);
QuantileBand quantile_band(const MddModel& model, const std::vector<double>& xs,
                           const std::vector<std::pair<double, double>>& levels,
                           Exec exec = Exec::Parallel);

// Density of the i-th coordinate, g_i(x) * D_i'(G_i(x)).
double marginal_pdf(const MddModel& model, std::size_t i, double x);

}  // namespace mdd

#endif
