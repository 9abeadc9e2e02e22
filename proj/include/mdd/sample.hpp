#ifndef MDD_SAMPLE_HPP
#define MDD_SAMPLE_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace mdd {

// Row-major buffer of n draws of a dim-variate vector.
struct Sample {
    std::size_t dim = 0;
    std::vector<double> values;

    Sample() = default;
    Sample(std::size_t d, std::size_t n) : dim(d), values(d * n) {}

    std::size_t size() const { return dim == 0 ? 0 : values.size() / dim; }
    std::span<const double> row(std::size_t i) const { return {values.data() + i * dim, dim}; }
    std::span<double> row(std::size_t i) { return {values.data() + i * dim, dim}; }
    double at(std::size_t i, std::size_t j) const { return values[i * dim + j]; }
    std::vector<double> column(std::size_t j) const {
        std::vector<double> out(size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = at(i, j);
        return out;
    }
};

}  // namespace mdd

#endif
