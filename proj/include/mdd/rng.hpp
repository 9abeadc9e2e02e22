#ifndef MDD_RNG_HPP
#define MDD_RNG_HPP

#include <cstdint>
#include <random>

namespace mdd {

std::uint64_t splitmix64(std::uint64_t x);

// Seeded random stream: std::mt19937_64 initialised with
// splitmix64(seed ^ stream). Distinct task indices give independent streams,
// so parallel Monte Carlo is reproducible regardless of thread count.
// Only within-implementation determinism is promised.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next() { return engine_(); }
    // Uniform on the open interval (0,1), 53-bit resolution.
    double uniform();

private:
    std::mt19937_64 engine_;
};

}  // namespace mdd

#endif
