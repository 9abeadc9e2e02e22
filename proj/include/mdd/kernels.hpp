#ifndef MDD_KERNELS_HPP
#define MDD_KERNELS_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "mdd/exec.hpp"
#include "mdd/sample.hpp"

namespace mdd {
class Distortion;
}

// Data-parallel inner loops. Each takes an Exec flag: Exec::Serial is the
// reference implementation, Exec::Parallel the OpenMP one; results are
// identical (reductions are finished serially in index order).
namespace mdd::kernels {

// Delta-volume of the box [lo, hi] under d (2^n signed corner sum).
double box_volume(const Distortion& d, std::span<const double> lo, std::span<const double> hi);

struct WorstBox {
    double volume = 0.0;
    std::size_t index = 0;
};

// lows/highs hold n_boxes rows of d.dim() coordinates each.
WorstBox worst_box_volume(const Distortion& d, std::span<const double> lows,
                          std::span<const double> highs, Exec exec);

// d evaluated at each row of the flattened point list.
std::vector<double> evaluate_points(const Distortion& d, std::span<const double> points,
                                    Exec exec);

// For each query row q: #{i : s_i <= q componentwise} and #{i : s_i > q componentwise}.
std::vector<std::size_t> count_below(const Sample& s, std::span<const double> queries, Exec exec);
std::vector<std::size_t> count_above(const Sample& s, std::span<const double> queries, Exec exec);

}  // namespace mdd::kernels

#endif
