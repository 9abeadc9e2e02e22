#ifndef MDD_CONFIG_HPP
#define MDD_CONFIG_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mdd/constructions.hpp"
#include "mdd/distortion.hpp"

namespace mdd {

// Everything a CLI run depends on. Round-trips through JSON unchanged.
struct RunConfig {
    std::string command = "validate";
    std::string copula = "indep:n=2";
    std::string marginal = "uniform:lo=0,hi=1";
    // copula | ordered-pair | order-stats-3 | residual:... | coherent:...
    std::string construction = "copula";
    std::string distortion;  // "mean-aggregation[:n=..]" replaces the construction
    std::string compare_with;
    std::size_t grid = 21;
    std::size_t boxes = 2000;
    std::uint64_t seed = 42;
    std::size_t n = 100000;
    std::optional<double> x_min;  // unset: the 1% marginal quantile
    std::optional<double> x_max;  // unset: the 99% marginal quantile
    std::size_t x_points = 0;     // 0: 41 points
    double perturb = 0.0;
    std::string output;

    std::string to_json() const;
    static RunConfig from_json(std::string_view text);

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// A model assembled from spec strings. Residual constructions give a dual
// distortion and no baselines (residual laws are not parametric families in
// general); the rest give a distortion with one baseline per coordinate.
struct BuiltModel {
    std::string kind;  // copula, ordered-pair, order-stats-3, residual, coherent, mean-aggregation
    std::optional<Distortion> distortion;
    std::optional<DualDistortion> dual;
    std::vector<UnivariateDist> baselines;
    Copula copula;
    std::optional<ResidualSpec> residual;
    std::optional<StructureFunction> psi;
    std::optional<StructureFunction> psi_star;

    // The distortion, or the dual's underlying function for residual models.
    const Distortion& function() const;
    MddModel model() const;  // throws SpecError for residual models
};

// Throws SpecError for malformed or inconsistent specs.
BuiltModel build_model(const RunConfig& cfg, const std::string& construction);
inline BuiltModel build_model(const RunConfig& cfg) { return build_model(cfg, cfg.construction); }

// The x grid a config asks for; unset ends come from the quantiles of `g`.
std::vector<double> x_grid(const RunConfig& cfg, const UnivariateDist& g);

}  // namespace mdd

#endif
