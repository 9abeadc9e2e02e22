#include <catch_amalgamated.hpp>
#include <array>
#include <cmath>

#include "mdd/constructions.hpp"
#include "mdd/errors.hpp"

using namespace mdd;
using Catch::Matchers::WithinAbs;

TEST_CASE("ordered pair of an IID sample", "[constructions]") {
    const Distortion d = ordered_pair_distortion(Copula::independence(2));
    // Pr(min <= a, max <= b) with uniform draws
    CHECK_THAT(d({0.3, 0.7}), WithinAbs(2 * 0.3 * 0.7 - 0.09, 1e-15));
    CHECK_THAT(d({0.7, 0.3}), WithinAbs(0.09, 1e-15));
    CHECK(d.partial(0, {0.7, 0.3}) == 0.0);
    CHECK_THAT(d.partial(0, {0.3, 0.7}), WithinAbs(2 * 0.7 - 0.6, 1e-15));
    CHECK(ordered_pair_density(Copula::independence(2), 0.3, 0.7) == 2.0);
    CHECK(ordered_pair_density(Copula::independence(2), 0.7, 0.3) == 0.0);
}

TEST_CASE("ordered pair partials match finite differences", "[constructions]") {
    const Distortion d = ordered_pair_distortion(Copula::clayton1());
    for (double u : {0.2, 0.5})
        for (double v : {0.6, 0.9}) {
            const std::array p{u, v};
            CHECK_THAT(d.partial(0, p), WithinAbs(d.finite_difference_partial(0, p), 1e-7));
            CHECK_THAT(d.partial(1, p), WithinAbs(d.finite_difference_partial(1, p), 1e-7));
        }
}

TEST_CASE("order statistics of three IID uniforms", "[constructions]") {
    const Copula c = Copula::independence(3);
    const double u = 0.2, v = 0.5, w = 0.9;
    // Pr(X1:3 <= u, X2:3 <= v, X3:3 <= w) by direct counting
    const double want = 6 * u * (v - u) * (w - v) + 3 * u * u * (w - v) + 3 * u * (v - u) * (v - u) +
                        3 * u * u * (v - u) + u * u * u;
    CHECK_THAT(order_stats_distortion_3(c, u, v, w), WithinAbs(want, 1e-14));
    CHECK_THAT(order_stats_3(c)({1.0, 1.0, 1.0}), WithinAbs(1.0, 1e-15));
    const std::array p{u, v, w};
    CHECK(order_stats_density(c, p) == 6.0);
    CHECK_THROWS(order_stats_distortion_3(c, 0.5, 0.2, 0.9));
}

TEST_CASE("order-statistics distortion is a valid distortion", "[constructions]") {
    CHECK(validate(order_stats_3(Copula::fgm(3, -1)), 11, 500).pass);
}

TEST_CASE("structure functions", "[constructions]") {
    const StructureFunction s = series_system(3);
    const StructureFunction p = parallel_system(3);
    const std::array x{2.0, 1.0, 3.0};
    CHECK(s.lifetime(x) == 1.0);
    CHECK(p.lifetime(x) == 3.0);
    const StructureFunction k = StructureFunction::from_cuts_text("[[1,2],[1,3]]", 3);
    CHECK(k.lifetime(x) == 2.0);
    CHECK(StructureFunction::from_json(k.to_json()).cuts() == k.cuts());
    CHECK_THROWS_AS(StructureFunction::from_cuts_text("[[1,2],[1]]", 3), SpecError);
    CHECK_THROWS_AS(StructureFunction::from_cuts_text("[[1,4]]", 3), SpecError);
    CHECK_THROWS_AS(StructureFunction::from_cuts_text("[]", 3), SpecError);
}

TEST_CASE("system distortions of series and parallel systems", "[constructions]") {
    const Copula c = Copula::independence(3);
    CHECK_THAT(system_distortion(parallel_system(3), c, 0.5), WithinAbs(0.125, 1e-15));
    CHECK_THAT(system_distortion(series_system(3), c, 0.5), WithinAbs(0.875, 1e-15));
}

TEST_CASE("coherent pair margins are the system distortions", "[constructions]") {
    const Copula c = Copula::fgm(3, 0.5);
    const StructureFunction psi = StructureFunction::from_cuts_text("[[1,2],[1,3]]", 3);
    const StructureFunction star = series_system(3);
    const Distortion d = coherent_pair(psi, star, c);
    for (double u : {0.2, 0.6}) {
        CHECK_THAT(d({u, 1.0}), WithinAbs(system_distortion(psi, c, u), 1e-14));
        CHECK_THAT(d({1.0, u}), WithinAbs(system_distortion(star, c, u), 1e-14));
    }
    CHECK(validate(d, 21, 1000).pass);
}

TEST_CASE("residual dual distortions", "[constructions]") {
    const UnivariateDist e = UnivariateDist::exponential(1);
    ResidualSpec spec{SurvivalCopula::given(Copula::independence(3)), {e, e, e}, 0.5,
                      ResidualConditioning::AllAlive, {0, 1}, 2};
    // independence: residual lives are independent with the same law
    const DualDistortion h = residual_dual_for(spec);
    CHECK_THAT(h({0.3, 0.4}), WithinAbs(0.12, 1e-14));
    spec.conditioning = ResidualConditioning::LastFailedByT;
    CHECK_THAT(residual_dual_for(spec)({0.3, 0.4}), WithinAbs(0.12, 1e-14));
}

TEST_CASE("FGM residual ordering depends on the sign of theta", "[constructions]") {
    const UnivariateDist e = UnivariateDist::exponential(1);
    for (double theta : {-1.0, 1.0}) {
        ResidualSpec all{SurvivalCopula::given(Copula::fgm(3, theta)), {e, e, e}, std::log(2.0),
                         ResidualConditioning::AllAlive, {0, 1}, 2};
        ResidualSpec failed = all;
        failed.conditioning = ResidualConditioning::LastFailedByT;
        const OrderReport r = compare_upper_orthant(residual_dual_for(all), residual_dual_for(failed), 21);
        CHECK(r.verdict == (theta < 0 ? Verdict::HoldsXleY : Verdict::HoldsYleX));
    }
}

TEST_CASE("residual conditioning on a null event is an error", "[constructions]") {
    const UnivariateDist u = UnivariateDist::uniform(0, 1);
    ResidualSpec spec{SurvivalCopula::given(Copula::independence(2)), {u, u}, 1.0,
                      ResidualConditioning::AllAlive, {0, 1}, 0};
    CHECK_THROWS_AS(residual_dual_for(spec), ConditioningError);
}
