#ifndef MDD_DISTORTION_HPP
#define MDD_DISTORTION_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mdd/copulas.hpp"
#include "mdd/exec.hpp"
#include "mdd/marginals.hpp"

namespace mdd {

enum class Provenance { FromCopula, OrderedPair, ResidualLifetime, OrderStats, CoherentPair, Custom };

std::string to_string(Provenance p);

// A multivariate distortion function D: [0,1]^n -> [0,1], i.e. a continuous
// distribution function supported in the unit cube. Immutable; evaluation is
// pure and may be shared across threads.
//
// Partial derivatives fall back to finite differences (h = 1e-6, one-sided
// within h of the boundary) unless an analytic form was attached.
class Distortion {
public:
    using EvalFn = std::function<double(std::span<const double>)>;
    using PartialFn = std::function<double(std::size_t, std::span<const double>)>;
    using DensityFn = std::function<double(std::span<const double>)>;

    static constexpr double kFiniteDifferenceStep = 1e-6;

    Distortion(std::size_t dim, EvalFn eval, Provenance provenance, std::string name);

    Distortion with_partial(PartialFn partial) const;
    Distortion with_density(DensityFn density) const;

    std::size_t dim() const { return dim_; }
    Provenance provenance() const { return provenance_; }
    const std::string& name() const { return name_; }

    double operator()(std::span<const double> u) const;
    double operator()(std::initializer_list<double> u) const {
        return (*this)(std::span<const double>(u.begin(), u.size()));
    }

    bool has_analytic_partial() const { return static_cast<bool>(partial_); }
    bool has_density() const { return static_cast<bool>(density_); }

    // dD/du_k (0-based).
    double partial(std::size_t k, std::span<const double> u) const;
    double partial(std::size_t k, std::initializer_list<double> u) const {
        return partial(k, std::span<const double>(u.begin(), u.size()));
    }
    double finite_difference_partial(std::size_t k, std::span<const double> u) const;

    // Mixed derivative d^n D / du_1...du_n; throws std::logic_error when none is attached.
    double density(std::span<const double> u) const;
    double density(std::initializer_list<double> u) const {
        return density(std::span<const double>(u.begin(), u.size()));
    }

private:
    std::size_t dim_;
    EvalFn eval_;
    PartialFn partial_;
    DensityFn density_;
    Provenance provenance_;
    std::string name_;
};

// Companion of D giving the joint survival: F-bar(x) = D-hat(G-bar_1(x_1), ...).
// D-hat is itself a member of the distortion class, so it wraps one.
class DualDistortion {
public:
    explicit DualDistortion(Distortion d) : d_(std::move(d)) {}

    std::size_t dim() const { return d_.dim(); }
    const std::string& name() const { return d_.name(); }
    double operator()(std::span<const double> u) const { return d_(u); }
    double operator()(std::initializer_list<double> u) const { return d_(u); }
    const Distortion& as_distortion() const { return d_; }

private:
    Distortion d_;
};

// Univariate distortion d: [0,1] -> [0,1], continuous, increasing, d(0)=0, d(1)=1.
struct UnivariateDistortion {
    std::function<double(double)> fn;
    std::function<double(double)> derivative;  // optional
    std::string name;

    static UnivariateDistortion identity();
    static UnivariateDistortion power(double alpha);
};

// D(u) = C(d_1(u_1), ..., d_n(u_n)). Rejects any d_i failing the endpoint or
// monotonicity spot checks.
Distortion from_copula(const Copula& c, const std::vector<UnivariateDistortion>& ds);
Distortion from_copula(const Copula& c);

// Built-in counterexample: Q(u) = (u_1 + ... + u_n) / n, not grounded.
Distortion mean_aggregation(std::size_t n);

// D-hat(u) = sum over S of (-1)^|S| D(z_S), z_i = 1 - u_i on S, 1 elsewhere.
DualDistortion dual(const Distortion& d);
// Inverse map (the transform is an involution).
Distortion primal(const DualDistortion& d);

// Pins every coordinate outside `keep` (0-based, strictly increasing) at 1.
Distortion marginal_distortion(const Distortion& d, const std::vector<std::size_t>& keep);

// F(x) = D(G_1(x_1), ..., G_n(x_n)).
class MddModel {
public:
    MddModel(Distortion d, std::vector<UnivariateDist> baselines);

    const Distortion& distortion() const { return d_; }
    const std::vector<UnivariateDist>& baselines() const { return g_; }
    std::size_t dim() const { return d_.dim(); }

    double joint_cdf(std::span<const double> x) const;
    double joint_cdf(std::initializer_list<double> x) const {
        return joint_cdf(std::span<const double>(x.begin(), x.size()));
    }
    double joint_survival(std::span<const double> x) const;
    double joint_pdf(std::span<const double> x) const;
    // F_i(x) = D_i(G_i(x)).
    double marginal_cdf(std::size_t i, double x) const;

private:
    Distortion d_;
    std::vector<UnivariateDist> g_;
};

// Same joint law with every baseline replaced by g:
// D_G(u) = D(G_1(G^{-1}(u_1)), ..., G_n(G^{-1}(u_n))).
MddModel rebase(const MddModel& m, const UnivariateDist& g);

// The Sklar copula of the model, C(u) = D(D_1^{-1}(u_1), ..., D_n^{-1}(u_n)),
// with the marginal inverses found by bracketed root-finding.
Distortion recover_copula(const MddModel& m);

struct ValidationReport {
    double grounded_max_violation = 0.0;
    std::vector<double> grounded_worst_point;
    double corner_value = 0.0;
    double worst_box_volume = 0.0;
    std::size_t n_boxes = 0;
    std::size_t grid_size = 0;
    std::uint64_t seed = 0;
    double tolerance = 0.0;
    bool pass = false;

    std::string to_json() const;
};

// Groundedness on a grid_size^(n-1) grid per face, the value at (1,...,1), and
// the most negative Delta-volume among n_boxes seeded random boxes.
ValidationReport validate(const Distortion& d, std::size_t grid_size, std::size_t n_boxes,
                          std::uint64_t seed = 42, double tolerance = 1e-10,
                          Exec exec = Exec::Parallel);
ValidationReport validate(const DualDistortion& d, std::size_t grid_size, std::size_t n_boxes,
                          std::uint64_t seed = 42, double tolerance = 1e-10,
                          Exec exec = Exec::Parallel);

enum class Verdict { HoldsXleY, HoldsYleX, Incomparable, Equal };
std::string to_string(Verdict v);

// A grid certificate: the stated inequality was checked at every grid point
// only, not over the whole cube.
struct OrderReport {
    std::string order;  // "lower_orthant", "upper_orthant" or "baselines"
    Verdict verdict = Verdict::Incomparable;
    std::size_t grid_size = 0;
    std::size_t n_points = 0;
    double max_difference = 0.0;  // max of (x-side - y-side)
    double min_difference = 0.0;
    double tolerance = 0.0;
    std::vector<std::string> implications;

    std::string to_json() const;
};

// D_X >= D_Y pointwise certifies X <=_lo Y.
OrderReport compare_lower_orthant(const Distortion& dx, const Distortion& dy,
                                  std::size_t grid_size, double tolerance = 1e-12,
                                  Exec exec = Exec::Parallel);
// D-hat_X <= D-hat_Y pointwise certifies X <=_uo Y.
OrderReport compare_upper_orthant(const DualDistortion& dx, const DualDistortion& dy,
                                  std::size_t grid_size, double tolerance = 1e-12,
                                  Exec exec = Exec::Parallel);
// G_i >= H_i for every i (same distortion) certifies both X <=_lo Y and X <=_uo Y.
OrderReport compare_baselines(const std::vector<UnivariateDist>& g,
                              const std::vector<UnivariateDist>& h, const std::vector<double>& xs,
                              double tolerance = 1e-12);

// Points i/(grid-1) per axis, row-major with the last coordinate fastest.
std::vector<double> unit_grid(std::size_t dim, std::size_t grid_size);

}  // namespace mdd

#endif
