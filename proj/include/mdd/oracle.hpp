#ifndef MDD_ORACLE_HPP
#define MDD_ORACLE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mdd/constructions.hpp"
#include "mdd/copulas.hpp"
#include "mdd/exec.hpp"
#include "mdd/marginals.hpp"
#include "mdd/regression.hpp"
#include "mdd/sample.hpp"

// Independent Monte Carlo ground truth. Draws come in blocks of kBlockSize
// rows; block b uses Rng(seed, b), so a sample is the same whatever the
// thread count.
namespace mdd::oracle {

constexpr std::size_t kBlockSize = 4096;

struct EmpiricalEstimate {
    double value = 0.0;
    std::size_t n = 0;
    double std_error = 0.0;
    std::uint64_t seed = 0;
};

// Conditional inverse transform: U uniform, V = C^{-1}_{2|1}(Q | U) for
// bivariate copulas; sequential conditionals for trivariate FGM; direct
// constructions for independence and the comonotone copula; 1 - (base draw)
// for a reflected copula.
Sample sample_copula(const Copula& c, std::size_t n, std::uint64_t seed, Exec exec = Exec::Parallel);

// U1, U2 uniform (the bivariate margins are independent), then U3 | U1, U2 by
// bisection on w + theta (1-2u1)(1-2u2) w (1-w).
Sample sample_trivariate_fgm(double theta, std::size_t n, std::uint64_t seed,
                             Exec exec = Exec::Parallel);

// (x, y) = (F^{-1}(u), F^{-1}(v)) for (u, v) ~ c.
Sample sample_mdd_pairs(const Copula& c, const UnivariateDist& f, std::size_t n,
                        std::uint64_t seed, Exec exec = Exec::Parallel);
// Each row sorted ascending: (L, U) = (min, max), or order statistics in general.
Sample sort_rows(const Sample& s);

// (T, T*) for component lifetimes F^{-1}(U), U ~ c.
Sample sample_system_pair(const StructureFunction& psi, const StructureFunction& psi_star,
                          const Copula& c, const UnivariateDist& f, std::size_t n,
                          std::uint64_t seed, Exec exec = Exec::Parallel);

// n accepted draws of the tracked residual lifetimes X_i - t under the spec's
// conditioning event. Lifetimes are built as X_i = F_i^{-1}(1 - V_i) with
// V ~ C-hat, so that Pr(X > x) = C-hat(F-bar(x)).
Sample sample_residuals(const ResidualSpec& spec, std::size_t n, std::uint64_t seed,
                        Exec exec = Exec::Parallel);

// Fraction of rows <= query (componentwise), with binomial standard error.
EmpiricalEstimate empirical_cdf(const Sample& s, std::span<const double> query);
// Fraction of rows > query (componentwise).
EmpiricalEstimate empirical_survival(const Sample& s, std::span<const double> query);
// Batched forms over a flattened query list.
std::vector<EmpiricalEstimate> empirical_cdf(const Sample& s, std::span<const double> queries,
                                             Exec exec);
std::vector<EmpiricalEstimate> empirical_survival(const Sample& s, std::span<const double> queries,
                                                  Exec exec);

// Sample mean with standard error sd / sqrt(n).
EmpiricalEstimate sample_mean(std::span<const double> xs);

struct BinMedian {
    double x_lo = 0.0;
    double x_hi = 0.0;
    std::vector<double> xs;  // conditioning values in the bin
    double median = 0.0;     // empirical median of the second coordinate
};

// Bins rows of a bivariate sample by empirical quantiles of column 0.
std::vector<BinMedian> empirical_conditional_median(const Sample& pairs, std::size_t n_bins);

// Check of binned medians against a model: within each bin the mixture
// H(y) = mean_j F_{2|1}(y | x_j) is evaluated at the empirical median, and
// |H(m) - 1/2| must stay below z / (2 sqrt(n_bin)).
struct MedianBinCheck {
    std::size_t bin = 0;
    std::size_t n = 0;
    double median = 0.0;
    double mixture_cdf = 0.0;  // H(median)
    double half_width = 0.0;
    bool pass = false;
};
std::vector<MedianBinCheck> check_binned_medians(const MddModel& model, const Sample& pairs,
                                                 std::size_t n_bins, double z,
                                                 Exec exec = Exec::Parallel);

// Two-sided normal critical value giving family-wise level `level` over m
// independent comparisons (Sidak).
double sidak_z(double level, std::size_t m);

// Kendall's tau-a in O(n log n) (merge-sort inversion count).
double kendall_tau(std::span<const double> x, std::span<const double> y);

}  // namespace mdd::oracle

#endif
