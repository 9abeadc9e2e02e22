#include <catch_amalgamated.hpp>
#include <cmath>

#include "mdd/errors.hpp"
#include "mdd/marginals.hpp"

using namespace mdd;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("exponential cdf, quantile and residual survival", "[marginals]") {
    const UnivariateDist e = UnivariateDist::exponential(60);
    CHECK_THAT(e.cdf(60), WithinAbs(1 - std::exp(-1.0), 1e-15));
    CHECK(e.cdf(-1) == 0.0);
    CHECK_THAT(e.quantile(0.5), WithinRel(60 * std::log(2.0), 1e-14));
    CHECK_THAT(e.residual_survival(10, 30), WithinAbs(std::exp(-0.5), 1e-15));
    CHECK(e.mean() == 60.0);
    CHECK(e.support_lower() == 0.0);
    CHECK(std::isinf(e.support_upper()));
}

TEST_CASE("quantile inverts cdf for every family", "[marginals]") {
    for (const auto& spec : {"exp:mean=2", "normal:mu=60,sd=5", "uniform:lo=-1,hi=3"}) {
        const UnivariateDist g = UnivariateDist::parse(spec);
        for (double p : {1e-6, 0.01, 0.3, 0.5, 0.77, 0.999}) {
            CHECK_THAT(g.cdf(g.quantile(p)), WithinAbs(p, 1e-12));
        }
    }
}

TEST_CASE("standard normal helpers", "[marginals]") {
    CHECK(std_normal_cdf(0) == 0.5);
    CHECK_THAT(std_normal_quantile(0.975), WithinAbs(1.959963984540054, 1e-12));
    CHECK_THAT(std_normal_quantile(0.025), WithinAbs(-1.959963984540054, 1e-12));
}

TEST_CASE("spec strings round trip", "[marginals]") {
    for (const auto& spec : {"exp:mean=60", "normal:mu=0,sd=1", "uniform:lo=0,hi=1"}) {
        const UnivariateDist g = UnivariateDist::parse(spec);
        CHECK(UnivariateDist::parse(g.to_string()) == g);
    }
}

TEST_CASE("malformed marginal specs are rejected", "[marginals]") {
    CHECK_THROWS_AS(UnivariateDist::parse("gamma:k=2"), SpecError);
    CHECK_THROWS_AS(UnivariateDist::parse("exp:mean=-1"), SpecError);
    CHECK_THROWS_AS(UnivariateDist::parse("normal:mu=0,sd=0"), SpecError);
    CHECK_THROWS_AS(UnivariateDist::parse("uniform:lo=2,hi=1"), SpecError);
    CHECK_THROWS_AS(UnivariateDist::parse("exp:mean=abc"), SpecError);
}
