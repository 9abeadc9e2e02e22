#ifndef MDD_INCLUSION_EXCLUSION_HPP
#define MDD_INCLUSION_EXCLUSION_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mdd/copulas.hpp"

namespace mdd {

// Probability of a union of "box" events under a copula.
//
// Every event is an intersection of {U_k <= level} constraints: event e puts
// the bit mask events[e][k] on component k, and the component's threshold is
// the smallest level whose bit is set (1 when no bit is set). Intersections of
// events OR the masks together, so each of the 2^E - 1 nonempty subsets maps to
// a single copula evaluation. Subsets sharing a mask vector are merged into one
// signed term when the table is built; evaluation only walks the merged terms.
class InclusionExclusion {
public:
    static constexpr std::size_t kMaxEvents = 16;

    struct Term {
        std::vector<std::uint32_t> masks;
        long coefficient;
    };

    InclusionExclusion(std::size_t n_components, std::size_t n_levels,
                       std::vector<std::vector<std::uint32_t>> events);

    double probability(const Copula& c, std::span<const double> levels) const;
    // d/d(levels[j]) of probability(): each component follows the level that
    // attains its minimum (ties go to the lowest level index).
    double partial(const Copula& c, std::span<const double> levels, std::size_t j) const;

    std::size_t n_components() const { return n_components_; }
    std::size_t n_events() const { return n_events_; }
    const std::vector<Term>& terms() const { return terms_; }

private:
    std::size_t n_components_;
    std::size_t n_levels_;
    std::size_t n_events_;
    std::vector<Term> terms_;
};

}  // namespace mdd

#endif
