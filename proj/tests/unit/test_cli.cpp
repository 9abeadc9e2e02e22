#include <catch_amalgamated.hpp>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "mdd/constructions.hpp"
#include "mdd/regression.hpp"

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args, bool with_stderr = false) {
    const std::string cmd = std::string(MDD_CLI_PATH) + " " + args + (with_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

// Numeric rows of a CSV, header dropped.
std::vector<std::vector<double>> rows(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    std::vector<std::vector<double>> out;
    while (std::getline(in, line)) {
        std::vector<double> r;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) r.push_back(std::stod(cell));
        out.push_back(r);
    }
    return out;
}

}  // namespace

TEST_CASE("validate exit codes", "[cli]") {
    CHECK(run("validate --copula clayton1 --construction ordered-pair").code == 0);
    const Run bad = run("validate --distortion mean-aggregation");
    CHECK(bad.code == 1);
    CHECK(bad.out.find("\"grounded_max_violation\": 0.5") != std::string::npos);
    CHECK(run("validate --copula fgm:n=2,theta=2").code == 2);
    CHECK(run("validate --no-such-flag").code == 2);
    CHECK(run("").code == 2);
    CHECK(run("--help").code == 0);
}

TEST_CASE("sampling is reproducible at a fixed seed", "[cli]") {
    const std::string args = "sample --copula clayton1 --construction ordered-pair --marginal exp:mean=60 --n 1000";
    const Run a = run(args + " --seed 3");
    const Run b = run(args + " --seed 3");
    const Run c = run(args + " --seed 4");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out != c.out);
    CHECK(a.out.rfind("x,y\n", 0) == 0);
}

TEST_CASE("regression curves from the command line", "[cli]") {
    const Run r = run("regress --construction ordered-pair --marginal exp:mean=60 --x-min 60 --x-max 60 --x-points 1");
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(header == "x,mean,median");
    double x, mean, median;
    REQUIRE(std::sscanf(row.c_str(), "%lf,%lf,%lf", &x, &mean, &median) == 3);
    CHECK_THAT(mean, Catch::Matchers::WithinAbs(120.0, 1e-7));
}

TEST_CASE("config file drives a run and flags override it", "[cli]") {
    const std::string path = "cli_test_config.json";
    {
        std::ofstream f(path);
        f << R"({"copula": "clayton1", "construction": "ordered-pair", "marginal": "exp:mean=60", "n": 50})";
    }
    const Run a = run("sample --config " + path);
    const Run b = run("sample --copula clayton1 --construction ordered-pair --marginal exp:mean=60 --n 50");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(run("sample --config " + path + " --n 10").out.size() < a.out.size());
    std::remove(path.c_str());
}

TEST_CASE("output file gets a manifest", "[cli]") {
    const std::string path = "cli_test_band.csv";
    REQUIRE(run("band --copula clayton1 --construction ordered-pair --marginal normal:mu=60,sd=5 --x-points 5 -o " +
                path).code == 0);
    std::ifstream csv(path), manifest(path + ".json");
    CHECK(csv.good());
    CHECK(manifest.good());
    std::string header;
    std::getline(csv, header);
    CHECK(header == "x,median,q05,q25,q75,q95,mean");
    std::remove(path.c_str());
    std::remove((path + ".json").c_str());
}

TEST_CASE("compare reports a verdict", "[cli]") {
    const Run r = run("compare --copula fgm:n=3,theta=-1 --marginal exp:mean=1 "
                      "--construction residual:t=0.5,keep=1+2,hat=1 "
                      "--with residual:t=0.5,cond=last-failed,keep=1+2,failed=3,hat=1");
    CHECK(r.code == 0);
    CHECK(r.out.find("holds_X_le_Y") != std::string::npos);
}

TEST_CASE("spec errors carry their message", "[cli]") {
    const Run r = run("validate --copula fgm:n=2,theta=3", true);
    CHECK(r.code == 2);
    CHECK(r.out.find("theta out of [-1,1]") != std::string::npos);
}

TEST_CASE("FGM regression at the origin", "[cli]") {
    const auto r = rows(run("regress --construction ordered-pair --copula fgm:n=2,theta=1 --marginal exp:mean=1 "
                            "--x-min 0 --x-max 0 --x-points 1").out);
    REQUIRE(r.size() == 1);
    CHECK_THAT(r[0][1], Catch::Matchers::WithinAbs(0.5, 1e-6));
}

TEST_CASE("band endpoints invert the conditional cdf", "[cli]") {
    const auto r = rows(run("band --construction ordered-pair --copula clayton1 --marginal exp:mean=60 --x-points 4").out);
    const mdd::MddModel m = mdd::ordered_pair_model(mdd::Copula::clayton1(), mdd::UnivariateDist::exponential(60));
    REQUIRE(r.size() == 4);
    for (const auto& row : r) {
        const mdd::ConditionalLaw law(m, row[0]);
        CHECK_THAT(law.conditional_cdf(row[1]), Catch::Matchers::WithinAbs(0.5, 1e-8));
        CHECK_THAT(law.conditional_cdf(row[2]), Catch::Matchers::WithinAbs(0.05, 1e-8));
        CHECK_THAT(law.conditional_cdf(row[5]), Catch::Matchers::WithinAbs(0.95, 1e-8));
    }
}

TEST_CASE("contour grid of the Clayton ordered pair", "[cli]") {
    const auto one = rows(run("contour --construction ordered-pair --copula clayton1 --marginal normal:mu=60,sd=5 "
                              "--x-min 60 --x-max 60 --x-points 1").out);
    REQUIRE(one.size() == 1);
    const double pdf = 1.0 / (5.0 * std::sqrt(2.0 * M_PI));
    CHECK_THAT(one[0][2], Catch::Matchers::WithinRel(2.0 * pdf * pdf * 32.0 / 27.0, 1e-12));

    const std::size_t n = 200;
    const double lo = 35, hi = 85, h = (hi - lo) / (n - 1);
    const auto grid = rows(run("contour --construction ordered-pair --copula clayton1 --marginal normal:mu=60,sd=5 "
                               "--x-min 35 --x-max 85 --x-points " + std::to_string(n)).out);
    REQUIRE(grid.size() == n * n);
    double mass = 0.0;
    for (const auto& r : grid) {
        if (r[1] < r[0]) CHECK(r[2] == 0.0);
        // the density jumps across the diagonal
        mass += (r[0] == r[1] ? 0.5 : 1.0) * r[2] * h * h;
    }
    CHECK_THAT(mass, Catch::Matchers::WithinAbs(1.0, 0.01));
}

TEST_CASE("marginal densities integrate to one", "[cli]") {
    const std::size_t n = 4001;
    const auto r = rows(run("marginal-pdf --construction ordered-pair --copula clayton1 --marginal exp:mean=1 "
                            "--x-min 0 --x-max 40 --x-points " + std::to_string(n)).out);
    REQUIRE(r.size() == n);
    const double h = 40.0 / (n - 1);
    double l = 0.0, u = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
        l += w * h * r[i][1];
        u += w * h * r[i][2];
    }
    CHECK_THAT(l, Catch::Matchers::WithinAbs(1.0, 1e-4));
    CHECK_THAT(u, Catch::Matchers::WithinAbs(1.0, 1e-4));
    // D_2(u) = u / (2 - u), so pdf_U = f(x) 2 / (2 - F(x))^2
    const double x = r[100][0], fx = 1 - std::exp(-x);
    CHECK_THAT(r[100][2], Catch::Matchers::WithinAbs(std::exp(-x) * 2 / ((2 - fx) * (2 - fx)), 1e-12));
}

TEST_CASE("report lists checks without running them", "[cli]") {
    const Run r = run("report --list");
    CHECK(r.code == 0);
    CHECK(r.out.find("oracle-equivalence") != std::string::npos);
}
