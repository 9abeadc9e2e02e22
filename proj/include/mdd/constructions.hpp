#ifndef MDD_CONSTRUCTIONS_HPP
#define MDD_CONSTRUCTIONS_HPP

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mdd/copulas.hpp"
#include "mdd/distortion.hpp"
#include "mdd/marginals.hpp"

namespace mdd {

// ---- residual lifetimes ----------------------------------------------------

enum class ResidualConditioning { AllAlive, LastFailedByT, SubsetAlive };

// What the conditioning event says about each component at time t.
enum class ResidualRole {
    Tracked,    // alive at t, residual life X_i - t is part of the vector
    AliveOnly,  // alive at t, not part of the vector
    FailedByT,  // X_i <= t
    Ignored,    // unconstrained
};

struct ResidualSpec {
    SurvivalCopula survival_copula;
    std::vector<UnivariateDist> marginals;
    double t = 0.0;
    ResidualConditioning conditioning = ResidualConditioning::AllAlive;
    // Components of the residual vector (0-based). Empty means all of them
    // (AllAlive) or all but `failed` (LastFailedByT). For AllAlive the other
    // components are unconstrained; for SubsetAlive they are known alive.
    std::vector<std::size_t> keep;
    std::size_t failed = 0;  // LastFailedByT only

    std::vector<ResidualRole> roles() const;
    // k_i = F-bar_i(t); throws ConditioningError when any needed one is 0.
    std::vector<double> levels() const;
};

// Dual distortion of the tracked residual lifetimes for the given roles and
// per-component survival levels k_i = F-bar_i(t):
//   Pr(X_i > t + x_i tracked, X_j > t alive, X_l <= t failed)
//   / Pr(X_j > t tracked or alive, X_l <= t failed)
// evaluated at u_i = F-bar_{i,t}(x_i), expanding each failed component by
// inclusion-exclusion over C-hat.
DualDistortion residual_dual(const SurvivalCopula& c_hat, std::vector<double> k,
                             std::vector<ResidualRole> roles);

DualDistortion residual_dual_distortion(const ResidualSpec& spec);
DualDistortion residual_dual_last_failed(const ResidualSpec& spec);
DualDistortion residual_dual_subset_alive(const ResidualSpec& spec);
// Dispatches on spec.conditioning.
DualDistortion residual_dual_for(const ResidualSpec& spec);

// ---- ordered pairs (L, U) = (min, max) ---------------------------------------

// D(u,v) = C(v,v) for v <= u, C(u,v) + C(v,u) - C(u,u) for u < v, with
// analytic partials and, when C has one, the density c(u,v) + c(v,u) on u <= v.
Distortion ordered_pair_distortion(const Copula& c);
double ordered_pair_density(const Copula& c, double u, double v);
MddModel ordered_pair_model(const Copula& c, const UnivariateDist& f);

// ---- order statistics ------------------------------------------------------

// D(u1,u2,u3) = Pr(X_{1:3} <= u1, X_{2:3} <= u2, X_{3:3} <= u3) for uniform
// margins, by inclusion-exclusion over the nine events
//   {U_i <= u1} & {U_a, U_b <= u2} & {all <= u3}.
// Requires u1 <= u2 <= u3.
double order_stats_distortion_3(const Copula& c, double u1, double u2, double u3);
// Same function on the whole cube (the event form stays valid unordered).
Distortion order_stats_3(const Copula& c);
// Sum over permutations of c(u_sigma), or n! c(u) for an exchangeable copula.
double order_stats_density(const Copula& c, std::span<const double> u);

// ---- coherent systems ------------------------------------------------------

// T = min over cut sets of the max lifetime inside the set.
class StructureFunction {
public:
    // cuts hold 0-based component indices.
    StructureFunction(std::size_t n_components, std::vector<std::vector<std::size_t>> cuts);

    // {"n": 3, "cuts": [[1],[2],[3]]} with 1-based indices.
    static StructureFunction from_json(std::string_view text);
    // [[1],[2],[3]] (1-based) with the component count given separately.
    static StructureFunction from_cuts_text(std::string_view text, std::size_t n_components);
    std::string to_json() const;

    std::size_t n_components() const { return n_; }
    const std::vector<std::vector<std::size_t>>& cuts() const { return cuts_; }

    // System lifetime for one vector of component lifetimes.
    double lifetime(std::span<const double> x) const;

private:
    std::size_t n_;
    std::vector<std::vector<std::size_t>> cuts_;
};

StructureFunction series_system(std::size_t n);
StructureFunction parallel_system(std::size_t n);

// Pr(T <= F^{-1}(u)) for identically distributed components with copula c.
double system_distortion(const StructureFunction& psi, const Copula& c, double u);

// D(u,v) with (T, T*) ~ D(F(x), F(y)), by inclusion-exclusion over the s*s*
// events B_ij = {cut i failed by x} & {cut j of psi* failed by y}. Valid for
// both u <= v and u > v. Requires s * s* <= 16.
double coherent_pair_distortion(const StructureFunction& psi, const StructureFunction& psi_star,
                                const Copula& c, double u, double v);
Distortion coherent_pair(const StructureFunction& psi, const StructureFunction& psi_star,
                         const Copula& c);

// Joint survival distortion of (X_{1:3}, max(X_1, min(X_2, X_3))) for v <= u:
// C-hat(u,v,v) + C-hat(v,u,u) - C-hat(v,v,v).
double coherent_pair_survival_example(const SurvivalCopula& c_hat, double u, double v);

}  // namespace mdd

#endif
