#include "mdd/inclusion_exclusion.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <stdexcept>
#include <string>

namespace mdd {

InclusionExclusion::InclusionExclusion(std::size_t n_components, std::size_t n_levels,
                                       std::vector<std::vector<std::uint32_t>> events)
    : n_components_(n_components), n_levels_(n_levels), n_events_(events.size()) {
    if (events.empty()) throw std::invalid_argument("inclusion-exclusion: no events");
    if (events.size() > kMaxEvents) {
        throw std::invalid_argument("inclusion-exclusion: " + std::to_string(events.size()) +
                                    " events exceeds the limit of " + std::to_string(kMaxEvents));
    }
    if (n_levels == 0 || n_levels > 32) throw std::invalid_argument("inclusion-exclusion: bad level count");
    for (const auto& e : events) {
        if (e.size() != n_components) {
            throw std::invalid_argument("inclusion-exclusion: event arity mismatch");
        }
        for (auto m : e) {
            if (n_levels < 32 && (m >> n_levels) != 0) {
                throw std::invalid_argument("inclusion-exclusion: mask uses unknown level");
            }
        }
    }

    std::map<std::vector<std::uint32_t>, long> merged;
    std::vector<std::uint32_t> masks(n_components);
    const std::uint32_t n_subsets = std::uint32_t{1} << events.size();
    for (std::uint32_t subset = 1; subset < n_subsets; ++subset) {
        std::fill(masks.begin(), masks.end(), 0u);
        for (std::size_t e = 0; e < events.size(); ++e) {
            if (!((subset >> e) & 1u)) continue;
            for (std::size_t k = 0; k < n_components; ++k) masks[k] |= events[e][k];
        }
        merged[masks] += (std::popcount(subset) % 2 == 1) ? 1 : -1;
    }
    for (auto& [m, coef] : merged) {
        if (coef != 0) terms_.push_back(Term{m, coef});
    }
}

double InclusionExclusion::probability(const Copula& c, std::span<const double> levels) const {
    if (levels.size() != n_levels_) throw std::invalid_argument("inclusion-exclusion: level count");
    if (c.dim() != n_components_) throw std::invalid_argument("inclusion-exclusion: copula dim");
    std::array<double, 32> z{};
    double total = 0.0;
    for (const Term& t : terms_) {
        for (std::size_t k = 0; k < n_components_; ++k) {
            double v = 1.0;
            for (std::uint32_t m = t.masks[k]; m != 0; m &= m - 1) {
                v = std::min(v, levels[static_cast<std::size_t>(std::countr_zero(m))]);
            }
            z[k] = v;
        }
        total += static_cast<double>(t.coefficient) * c.cdf({z.data(), n_components_});
    }
    return total;
}

double InclusionExclusion::partial(const Copula& c, std::span<const double> levels,
                                   std::size_t j) const {
    if (levels.size() != n_levels_) throw std::invalid_argument("inclusion-exclusion: level count");
    if (c.dim() != n_components_) throw std::invalid_argument("inclusion-exclusion: copula dim");
    if (j >= n_levels_) throw std::out_of_range("inclusion-exclusion: level index");
    std::array<double, 32> z{};
    std::array<int, 32> which{};
    double total = 0.0;
    for (const Term& t : terms_) {
        bool depends = false;
        for (std::size_t k = 0; k < n_components_; ++k) {
            double v = 1.0;
            int arg = -1;
            for (std::uint32_t m = t.masks[k]; m != 0; m &= m - 1) {
                const int l = std::countr_zero(m);
                if (arg < 0 || levels[static_cast<std::size_t>(l)] < v) {
                    v = levels[static_cast<std::size_t>(l)];
                    arg = l;
                }
            }
            z[k] = arg < 0 ? 1.0 : v;
            which[k] = arg;
            depends = depends || arg == static_cast<int>(j);
        }
        if (!depends) continue;
        const std::span<const double> zs(z.data(), n_components_);
        double d = 0.0;
        for (std::size_t k = 0; k < n_components_; ++k)
            if (which[k] == static_cast<int>(j)) d += c.partial(k, zs);
        total += static_cast<double>(t.coefficient) * d;
    }
    return total;
}

}  // namespace mdd
