#include <catch_amalgamated.hpp>

#include "mdd/config.hpp"
#include "mdd/errors.hpp"

using namespace mdd;

TEST_CASE("run configs round trip through JSON", "[config]") {
    RunConfig c;
    c.command = "band";
    c.copula = "clayton1";
    c.marginal = "normal:mu=60,sd=5";
    c.construction = "ordered-pair";
    c.seed = 7;
    c.x_min = 40;
    c.x_max = 80;
    c.x_points = 9;
    CHECK(RunConfig::from_json(c.to_json()) == c);
}

TEST_CASE("bad configs are spec errors", "[config]") {
    CHECK_THROWS_AS(RunConfig::from_json("{\"colour\": 1}"), SpecError);
    CHECK_THROWS_AS(RunConfig::from_json("[1,2]"), SpecError);
    CHECK_THROWS_AS(RunConfig::from_json("{\"grid\": \"x\"}"), SpecError);
    CHECK_THROWS_AS(RunConfig::from_json("{"), SpecError);
}

TEST_CASE("model building", "[config]") {
    RunConfig c;
    c.copula = "fgm:n=3,theta=1";
    c.marginal = "exp:mean=1";
    CHECK(build_model(c, "order-stats-3").kind == "order-stats-3");
    CHECK(build_model(c, "coherent:cuts=[[1,2],[1,3]];cuts_star=[[1],[2],[3]]").kind == "coherent");
    const BuiltModel r = build_model(c, "residual:t=0.5,cond=last-failed,keep=1+2,failed=3,hat=1");
    CHECK(r.kind == "residual");
    CHECK(r.dual.has_value());
    CHECK_THROWS_AS(r.model(), SpecError);
    CHECK_THROWS_AS(build_model(c, "ordered-pair"), SpecError);
    CHECK_THROWS_AS(build_model(c, "residual:t=0.5,cond=sometimes"), SpecError);
    CHECK_THROWS_AS(build_model(c, "residual:t=0.5,keep=4"), SpecError);
    CHECK_THROWS_AS(build_model(c, "spline"), SpecError);
    c.distortion = "mean-aggregation";
    CHECK(build_model(c).distortion->dim() == 3);
}

TEST_CASE("default x grid spans the central quantiles", "[config]") {
    RunConfig c;
    const UnivariateDist e = UnivariateDist::exponential(1);
    const auto xs = x_grid(c, e);
    CHECK(xs.size() == 41);
    CHECK(xs.front() == e.quantile(0.01));
    CHECK(xs.back() == e.quantile(0.99));
}
