#ifndef MDD_CHECKS_HPP
#define MDD_CHECKS_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mdd/distortion.hpp"
#include "mdd/exec.hpp"

// The acceptance suite: named end-to-end checks shared by the acceptance test
// binary and `mdd report`.
namespace mdd::checks {

struct Options {
    std::uint64_t seed = 42;
    std::size_t n = 100000;  // Monte Carlo sample size
    double perturb = 0.0;    // added to every constructed distortion inside (0,1)^n
    Exec exec = Exec::Parallel;
};

struct Info {
    int id;
    std::string name;
    std::string description;
    double time_limit_seconds;  // 0 = none
};

struct Result {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    double time_limit_seconds = 0.0;
    std::size_t n_comparisons = 0;
    std::size_t n_failures = 0;
    double worst = 0.0;             // largest error, or z-score for Monte Carlo checks
    std::vector<std::string> notes; // first failures and summary lines
};

const std::vector<Info>& list();
Result run(int id, const Options& opt);
std::vector<Result> run_all(const Options& opt);

std::string to_json(const std::vector<Result>& results, const Options& opt);
// "[PASS] 1 distortion-axioms (...)"
std::string summary_line(const Result& r);

// D(u) + eps for u strictly inside the cube, D(u) elsewhere. Partials are left
// as they were. The sensitivity canary behind Options::perturb.
Distortion perturbed(const Distortion& d, double eps);

// Seed for the j-th independent Monte Carlo experiment of a run.
std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t j);

}  // namespace mdd::checks

#endif
