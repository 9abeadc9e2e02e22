#include <catch_amalgamated.hpp>
#include <array>
#include <cmath>

#include "mdd/constructions.hpp"
#include "mdd/distortion.hpp"
#include "mdd/kernels.hpp"

using namespace mdd;
using Catch::Matchers::WithinAbs;

TEST_CASE("a copula is its own distortion", "[distortion]") {
    const Copula c = Copula::clayton1();
    const Distortion d = from_copula(c);
    CHECK(d(std::array{0.4, 0.7}) == c.cdf(std::array{0.4, 0.7}));
    CHECK(validate(d, 21, 500).pass);
}

TEST_CASE("power distortions compose with a copula", "[distortion]") {
    const Distortion d = from_copula(Copula::independence(2),
                                     {UnivariateDistortion::power(2), UnivariateDistortion::identity()});
    CHECK_THAT(d({0.5, 0.5}), WithinAbs(0.125, 1e-15));
    CHECK(validate(d, 11, 200).pass);
}

TEST_CASE("independence is self-dual", "[distortion]") {
    const DualDistortion h = dual(from_copula(Copula::independence(2)));
    CHECK_THAT(h({0.3, 0.6}), WithinAbs(0.18, 1e-15));
    const Distortion back = primal(h);
    CHECK_THAT(back({0.3, 0.6}), WithinAbs(0.18, 1e-15));
}

TEST_CASE("marginal distortion pins dropped coordinates at one", "[distortion]") {
    const Distortion d = ordered_pair_distortion(Copula::independence(2));
    const Distortion d1 = marginal_distortion(d, {0});
    const Distortion d2 = marginal_distortion(d, {1});
    for (double u : {0.1, 0.5, 0.9}) {
        CHECK_THAT(d1({u}), WithinAbs(2 * u - u * u, 1e-15));
        CHECK_THAT(d2({u}), WithinAbs(u * u, 1e-15));
    }
}

TEST_CASE("mean aggregation fails groundedness by the exact amount", "[distortion]") {
    const ValidationReport r = validate(mean_aggregation(2), 21, 200);
    CHECK_FALSE(r.pass);
    CHECK(r.grounded_max_violation == 0.5);
    CHECK(r.corner_value == 1.0);
}

TEST_CASE("validation is identical serial and parallel", "[distortion][exec]") {
    const Distortion d = ordered_pair_distortion(Copula::fgm(2, -0.5));
    const ValidationReport a = validate(d, 21, 2000, 7, 1e-10, Exec::Serial);
    const ValidationReport b = validate(d, 21, 2000, 7, 1e-10, Exec::Parallel);
    CHECK(a.to_json() == b.to_json());
}

TEST_CASE("box volume of an ordered pair equals density mass", "[distortion]") {
    const Distortion d = ordered_pair_distortion(Copula::independence(2));
    // density 2 on v >= u: box [0.1,0.2]x[0.5,0.6] carries 2 * 0.01
    CHECK_THAT(kernels::box_volume(d, std::array{0.1, 0.5}, std::array{0.2, 0.6}), WithinAbs(0.02, 1e-15));
}

TEST_CASE("joint survival of a model uses the alternating sum", "[distortion]") {
    const UnivariateDist e = UnivariateDist::exponential(1);
    const MddModel m(from_copula(Copula::independence(2)), {e, e});
    CHECK_THAT(m.joint_survival(std::array{1.0, 2.0}), WithinAbs(std::exp(-3.0), 1e-15));
    CHECK_THAT(m.joint_cdf({1.0, 2.0}), WithinAbs((1 - std::exp(-1.0)) * (1 - std::exp(-2.0)), 1e-15));
}

TEST_CASE("rebase preserves the joint law", "[distortion]") {
    const UnivariateDist e = UnivariateDist::exponential(2);
    const UnivariateDist n = UnivariateDist::normal(0, 1);
    const MddModel m = ordered_pair_model(Copula::clayton1(), e);
    const MddModel r = rebase(m, UnivariateDist::exponential(5));
    for (double x : {0.5, 1.0, 3.0})
        for (double y : {1.0, 4.0}) CHECK_THAT(r.joint_cdf({x, y}), WithinAbs(m.joint_cdf({x, y}), 1e-12));
    // a baseline whose support misses part of the model's support
    CHECK_THROWS(rebase(ordered_pair_model(Copula::clayton1(), n), e));
}

TEST_CASE("recovered copula of a copula model is the copula", "[distortion]") {
    const Copula c = Copula::fgm(2, 0.8);
    const UnivariateDist e = UnivariateDist::exponential(1);
    const Distortion k = recover_copula(MddModel(from_copula(c), {e, e}));
    CHECK_THAT(k({0.3, 0.4}), WithinAbs(c.cdf(std::array{0.3, 0.4}), 1e-11));
}

TEST_CASE("orthant comparisons", "[distortion]") {
    const Distortion lo = from_copula(Copula::fgm(2, -1));
    const Distortion hi = from_copula(Copula::fgm(2, 1));
    CHECK(compare_lower_orthant(lo, hi, 21).verdict == Verdict::HoldsYleX);
    CHECK(compare_lower_orthant(lo, lo, 21).verdict == Verdict::Equal);
    const Distortion a = from_copula(Copula::clayton1());
    const Distortion b = ordered_pair_distortion(Copula::independence(2));
    CHECK(compare_lower_orthant(a, b, 21).verdict == Verdict::Incomparable);
}

TEST_CASE("distortion arguments are checked", "[distortion]") {
    const Distortion d = from_copula(Copula::independence(2));
    CHECK_THROWS(d(std::array{0.5}));
    CHECK_THROWS(mean_aggregation(0));
    CHECK_THROWS(marginal_distortion(d, {2}));
}
