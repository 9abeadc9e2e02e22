#ifndef MDD_COPULAS_HPP
#define MDD_COPULAS_HPP

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>

namespace mdd {

enum class CopulaFamily {
    Independence,
    Fgm,         // single-parameter FGM, dim 2 or 3
    Clayton1,    // uv / (u + v - uv)
    Comonotone,  // min(u_1, ..., u_n); no density
    Reflected,   // survival copula of another copula, by inclusion-exclusion
};

// n-variate copula with the analytic derivatives the distortion constructions
// need. Inputs within 1e-14 of [0,1] are snapped onto it; anything further out
// is rejected with std::domain_error.
class Copula {
public:
    static Copula independence(std::size_t n);
    static Copula fgm(std::size_t n, double theta);
    static Copula clayton1();
    static Copula comonotone(std::size_t n);

    // "indep:n=2", "fgm:n=3,theta=-0.5", "clayton1", "min:n=2",
    // "survival(<copula spec>)".
    static Copula parse(std::string_view spec);
    std::string to_string() const;

    std::size_t dim() const { return dim_; }
    CopulaFamily family() const { return family_; }
    double theta() const { return theta_; }
    bool exchangeable() const { return true; }
    bool has_density() const;

    double cdf(std::span<const double> u) const;
    double density(std::span<const double> u) const;
    // dC/du_k, 0-based k.
    double partial(std::size_t k, std::span<const double> u) const;

    // Bivariate only: Pr(V <= v | U = given_u) and its inverse in v.
    double conditional_cdf(double v, double given_u) const;
    double conditional_quantile(double q, double given_u) const;

    // Underlying copula of a Reflected one.
    const Copula& base() const;

private:
    Copula(CopulaFamily f, std::size_t dim, double theta) : family_(f), dim_(dim), theta_(theta) {}

    CopulaFamily family_;
    std::size_t dim_;
    double theta_ = 0.0;
    std::shared_ptr<const Copula> base_;

    friend Copula reflect(const Copula& c);
};

// Survival copula C-hat in the joint-survival role: Pr(X > x) = C-hat(F-bar(x)).
struct SurvivalCopula {
    Copula copula;

    // Use `c` directly as the survival copula (the residual-lifetime example
    // specifies C-hat itself).
    static SurvivalCopula given(Copula c) { return SurvivalCopula{std::move(c)}; }

    std::size_t dim() const { return copula.dim(); }
    double operator()(std::span<const double> u) const { return copula.cdf(u); }
};

// C-hat from C. Independence, bivariate FGM and the comonotone copula are
// radially symmetric; trivariate FGM maps theta to -theta; anything else is
// wrapped as a Reflected copula evaluated by inclusion-exclusion.
SurvivalCopula survival_copula(const Copula& c);

// Reflected wrapper with no family shortcuts (used by tests as an oracle).
Copula reflect(const Copula& c);

// Snap u into [0,1] within 1e-14; throws std::domain_error otherwise.
double snap_unit(double u);

}  // namespace mdd

#endif
