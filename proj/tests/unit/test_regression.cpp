#include <catch_amalgamated.hpp>
#include <cmath>
#include <numbers>

#include "mdd/constructions.hpp"
#include "mdd/regression.hpp"

using namespace mdd;
using Catch::Matchers::WithinAbs;

TEST_CASE("memoryless maximum given the minimum", "[regression]") {
    const UnivariateDist e = UnivariateDist::exponential(60);
    const MddModel m = ordered_pair_model(Copula::independence(2), e);
    for (double x : {10.0, 45.0}) {
        const ConditionalLaw law(m, x);
        CHECK_THAT(mean_regression(law), WithinAbs(x + 60, 1e-7));
        CHECK_THAT(mean_regression_density(law), WithinAbs(x + 60, 1e-6));
        CHECK_THAT(law.median_regression(), WithinAbs(x + 60 * std::numbers::ln2, 1e-7));
        CHECK(law.conditional_cdf(x - 1) == 0.0);
    }
}

TEST_CASE("conditional distortion is a distribution in v", "[regression]") {
    const UnivariateDist e = UnivariateDist::exponential(1);
    const MddModel m = ordered_pair_model(Copula::clayton1(), e);
    const ConditionalLaw law(m, 0.7);
    CHECK(law.conditional_distortion(0.0) == 0.0);
    CHECK(law.conditional_distortion(1.0) == 1.0);
    double prev = 0.0;
    for (int i = 1; i < 100; ++i) {
        const double v = law.conditional_distortion(i / 100.0);
        CHECK(v >= prev);
        prev = v;
    }
    for (double q : {0.1, 0.5, 0.9}) CHECK_THAT(law.conditional_cdf(law.conditional_quantile(q)), WithinAbs(q, 1e-10));
    CHECK_THROWS(law.conditional_quantile(1.0));
}

TEST_CASE("conditional law of a copula model", "[regression]") {
    const UnivariateDist e = UnivariateDist::exponential(1);
    const Copula c = Copula::fgm(2, 0.5);
    const MddModel m(from_copula(c), {e, e});
    const ConditionalLaw law(m, 1.0);
    const double u = e.cdf(1.0);
    CHECK_THAT(law.conditional_distortion(0.4), WithinAbs(c.conditional_cdf(0.4, u), 1e-12));
}

TEST_CASE("quantile bands are ordered and identical serial and parallel", "[regression][exec]") {
    const MddModel m = ordered_pair_model(Copula::clayton1(), UnivariateDist::normal(60, 5));
    const std::vector<double> xs{50, 55, 60, 65};
    const QuantileBand a = quantile_band(m, xs, {{0.05, 0.95}, {0.25, 0.75}}, Exec::Serial);
    const QuantileBand b = quantile_band(m, xs, {{0.05, 0.95}, {0.25, 0.75}}, Exec::Parallel);
    CHECK(a.median == b.median);
    CHECK(a.lower == b.lower);
    CHECK(a.upper == b.upper);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        CHECK(a.lower[0][i] <= a.lower[1][i]);
        CHECK(a.lower[1][i] <= a.median[i]);
        CHECK(a.median[i] <= a.upper[1][i]);
        CHECK(a.upper[1][i] <= a.upper[0][i]);
    }
    CHECK_THROWS(quantile_band(m, xs, {{0.9, 0.1}}));
}

TEST_CASE("marginal densities of the ordered pair", "[regression]") {
    const UnivariateDist e = UnivariateDist::exponential(60);
    const MddModel m = ordered_pair_model(Copula::independence(2), e);
    const double x = 40;
    CHECK_THAT(marginal_pdf(m, 0, x), WithinAbs(2 * e.pdf(x) * e.survival(x), 1e-15));
    CHECK_THAT(marginal_pdf(m, 1, x), WithinAbs(2 * e.pdf(x) * e.cdf(x), 1e-15));
}

TEST_CASE("conditioning needs a bivariate model", "[regression]") {
    const UnivariateDist e = UnivariateDist::exponential(1);
    const MddModel m(order_stats_3(Copula::independence(3)), {e, e, e});
    CHECK_THROWS(ConditionalLaw(m, 1.0));
}
