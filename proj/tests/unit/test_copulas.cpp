#include <catch_amalgamated.hpp>
#include <array>
#include <vector>

#include "mdd/copulas.hpp"
#include "mdd/errors.hpp"

using namespace mdd;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<Copula> bivariates() {
    return {Copula::independence(2), Copula::fgm(2, -1), Copula::fgm(2, 0.5), Copula::clayton1()};
}

}  // namespace

TEST_CASE("bivariate copulas have uniform margins and are grounded", "[copulas]") {
    for (const Copula& c : bivariates()) {
        for (double u : {0.0, 0.2, 0.5, 0.9, 1.0}) {
            CHECK_THAT(c.cdf(std::array{u, 1.0}), WithinAbs(u, 1e-15));
            CHECK_THAT(c.cdf(std::array{1.0, u}), WithinAbs(u, 1e-15));
            CHECK(c.cdf(std::array{0.0, u}) == 0.0);
        }
    }
}

TEST_CASE("analytic partials match finite differences", "[copulas]") {
    const double h = 1e-6;
    for (const Copula& c : bivariates()) {
        for (double u : {0.2, 0.5, 0.8}) {
            for (double v : {0.1, 0.6}) {
                const double fd = (c.cdf(std::array{u + h, v}) - c.cdf(std::array{u - h, v})) / (2 * h);
                CHECK_THAT(c.partial(0, std::array{u, v}), WithinAbs(fd, 1e-8));
            }
        }
    }
}

TEST_CASE("conditional quantile inverts the conditional cdf", "[copulas]") {
    for (const Copula& c : bivariates()) {
        for (double u : {0.05, 0.5, 0.95}) {
            for (double q : {0.01, 0.5, 0.99}) {
                CHECK_THAT(c.conditional_cdf(c.conditional_quantile(q, u), u), WithinAbs(q, 1e-10));
            }
        }
    }
}

TEST_CASE("Clayton closed form", "[copulas]") {
    const Copula c = Copula::clayton1();
    CHECK_THAT(c.cdf(std::array{0.5, 0.5}), WithinAbs(0.25 / 0.75, 1e-15));
}

TEST_CASE("trivariate FGM has independent bivariate margins", "[copulas]") {
    const Copula c = Copula::fgm(3, 1.0);
    CHECK_THAT(c.cdf(std::array{0.3, 0.6, 1.0}), WithinAbs(0.18, 1e-15));
    CHECK_THAT(c.cdf(std::array{0.5, 0.5, 0.5}), WithinAbs(0.125 * 1.125, 1e-15));
    CHECK_THAT(c.cdf(std::array{0.2, 0.3, 0.4}),
               WithinAbs(0.024 * (1 + 0.8 * 0.7 * 0.6), 1e-15));
}

TEST_CASE("survival copula of trivariate FGM flips theta", "[copulas]") {
    const SurvivalCopula s = survival_copula(Copula::fgm(3, 0.7));
    CHECK(s.copula.family() == CopulaFamily::Fgm);
    CHECK(s.copula.theta() == -0.7);
}

TEST_CASE("reflected copula agrees with inclusion-exclusion", "[copulas]") {
    const Copula c = Copula::clayton1();
    const SurvivalCopula s = survival_copula(c);
    const double u = 0.3, v = 0.7;
    const double want = u + v - 1 + c.cdf(std::array{1 - u, 1 - v});
    CHECK_THAT(s(std::array{u, v}), WithinAbs(want, 1e-14));
}

TEST_CASE("copula specs are validated", "[copulas]") {
    CHECK_THROWS_AS(Copula::parse("fgm:n=2,theta=1.5"), SpecError);
    CHECK_THROWS_AS(Copula::parse("fgm:n=4,theta=0.5"), SpecError);
    CHECK_THROWS_AS(Copula::parse("gumbel"), SpecError);
    CHECK_THROWS_AS(Copula::independence(2).cdf(std::array{0.5, 1.1}), std::domain_error);
    CHECK(Copula::parse(Copula::fgm(3, -0.5).to_string()).theta() == -0.5);
}
