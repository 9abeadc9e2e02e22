#include <catch_amalgamated.hpp>
#include <array>
#include <cmath>

#include "mdd/checks.hpp"
#include "mdd/oracle.hpp"

using namespace mdd;
using Catch::Matchers::WithinAbs;

TEST_CASE("samples are deterministic and independent of the thread count", "[oracle][exec]") {
    for (const auto& spec : {"indep:n=2", "clayton1", "fgm:n=3,theta=1", "survival(clayton1)"}) {
        const Copula c = Copula::parse(spec);
        const Sample a = oracle::sample_copula(c, 10000, 5, Exec::Serial);
        const Sample b = oracle::sample_copula(c, 10000, 5, Exec::Parallel);
        CHECK(a.values == b.values);
        CHECK(oracle::sample_copula(c, 10000, 6).values != a.values);
    }
}

TEST_CASE("empirical cdf of a copula sample", "[oracle]") {
    const Copula c = Copula::clayton1();
    const Sample s = oracle::sample_copula(c, 100000, 11);
    for (double u : {0.2, 0.5, 0.8}) {
        const std::array q{u, 0.6};
        const oracle::EmpiricalEstimate e = oracle::empirical_cdf(s, q);
        CHECK(std::abs(e.value - c.cdf(q)) < 4 * e.std_error);
    }
}

TEST_CASE("batched counts match the single-query estimators", "[oracle][exec]") {
    const Sample s = oracle::sample_copula(Copula::fgm(2, 0.5), 5000, 2);
    const std::vector<double> qs{0.1, 0.2, 0.5, 0.5, 0.9, 0.3};
    const auto below = oracle::empirical_cdf(s, qs, Exec::Parallel);
    const auto above = oracle::empirical_survival(s, qs, Exec::Serial);
    for (std::size_t i = 0; i < 3; ++i) {
        const std::span<const double> q(qs.data() + 2 * i, 2);
        CHECK(below[i].value == oracle::empirical_cdf(s, q).value);
        CHECK(above[i].value == oracle::empirical_survival(s, q).value);
    }
}

TEST_CASE("Kendall tau of known copulas", "[oracle]") {
    // FGM: tau = 2 theta / 9; Clayton with parameter 1: tau = 1/3
    const Sample f = oracle::sample_copula(Copula::fgm(2, 1.0), 100000, 3);
    CHECK_THAT(oracle::kendall_tau(f.column(0), f.column(1)), WithinAbs(2.0 / 9, 0.01));
    const Sample c = oracle::sample_copula(Copula::clayton1(), 100000, 3);
    CHECK_THAT(oracle::kendall_tau(c.column(0), c.column(1)), WithinAbs(1.0 / 3, 0.01));
    const std::vector<double> x{1, 2, 3}, y{3, 2, 1};
    CHECK(oracle::kendall_tau(x, y) == -1.0);
}

TEST_CASE("sorted rows give order statistics", "[oracle]") {
    const Sample s = oracle::sort_rows(oracle::sample_copula(Copula::independence(3), 100, 1));
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(s.at(i, 0) <= s.at(i, 1));
        CHECK(s.at(i, 1) <= s.at(i, 2));
    }
}

TEST_CASE("residual samples respect the conditioning event", "[oracle]") {
    const UnivariateDist e = UnivariateDist::exponential(1);
    ResidualSpec spec{SurvivalCopula::given(Copula::fgm(3, 1)), {e, e, e}, 0.5,
                      ResidualConditioning::AllAlive, {0, 1}, 2};
    const Sample s = oracle::sample_residuals(spec, 2000, 9);
    CHECK(s.dim == 2);
    CHECK(s.size() == 2000);
    for (double v : s.values) CHECK(v > 0.0);
    CHECK(oracle::sample_residuals(spec, 2000, 9, Exec::Serial).values == s.values);
}

TEST_CASE("Sidak critical values", "[oracle]") {
    CHECK_THAT(oracle::sidak_z(0.95, 1), WithinAbs(1.959963984540054, 1e-9));
    CHECK(oracle::sidak_z(0.95, 100) > 3.4);
}

TEST_CASE("binned medians of the ordered pair", "[oracle]") {
    const Copula c = Copula::clayton1();
    const UnivariateDist e = UnivariateDist::exponential(60);
    const Sample pairs = oracle::sort_rows(oracle::sample_mdd_pairs(c, e, 50000, 4));
    const auto bins = oracle::check_binned_medians(ordered_pair_model(c, e), pairs, 10,
                                                   oracle::sidak_z(0.95, 10));
    REQUIRE(bins.size() == 10);
    for (const auto& b : bins) CHECK(b.pass);
}

TEST_CASE("derived seeds are distinct", "[oracle]") {
    CHECK(checks::derived_seed(42, 0) != checks::derived_seed(42, 1));
    CHECK(checks::derived_seed(42, 0) == checks::derived_seed(42, 0));
}

TEST_CASE("perturbation changes only the interior", "[oracle]") {
    const Distortion d = checks::perturbed(from_copula(Copula::independence(2)), 1e-3);
    CHECK(d({0.0, 0.5}) == 0.0);
    CHECK(d({1.0, 0.5}) == 0.5);
    CHECK_THAT(d({0.5, 0.5}), WithinAbs(0.251, 1e-15));
}
