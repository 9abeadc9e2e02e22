#include "mdd/kernels.hpp"

#include <array>
#include <bit>
#include <stdexcept>

#include "mdd/distortion.hpp"

namespace mdd::kernels {

double box_volume(const Distortion& d, std::span<const double> lo, std::span<const double> hi) {
    const std::size_t n = d.dim();
    if (lo.size() != n || hi.size() != n) throw std::invalid_argument("box_volume: dimension");
    std::array<double, 16> z{};
    double total = 0.0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        // bit set: upper corner coordinate; sign from the count of lower ones.
        for (std::size_t i = 0; i < n; ++i) z[i] = ((mask >> i) & 1u) ? hi[i] : lo[i];
        const int lower = static_cast<int>(n) - std::popcount(mask);
        const double v = d(std::span<const double>(z.data(), n));
        total += (lower % 2 == 0) ? v : -v;
    }
    return total;
}

WorstBox worst_box_volume(const Distortion& d, std::span<const double> lows,
                          std::span<const double> highs, Exec exec) {
    const std::size_t n = d.dim();
    if (lows.size() != highs.size() || lows.size() % n != 0) {
        throw std::invalid_argument("worst_box_volume: malformed box lists");
    }
    const long n_boxes = static_cast<long>(lows.size() / n);
    std::vector<double> vol(static_cast<std::size_t>(n_boxes));
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (long b = 0; b < n_boxes; ++b) {
            const std::size_t off = static_cast<std::size_t>(b) * n;
            vol[static_cast<std::size_t>(b)] =
                box_volume(d, lows.subspan(off, n), highs.subspan(off, n));
        }
    } else {
        for (long b = 0; b < n_boxes; ++b) {
            const std::size_t off = static_cast<std::size_t>(b) * n;
            vol[static_cast<std::size_t>(b)] =
                box_volume(d, lows.subspan(off, n), highs.subspan(off, n));
        }
    }
    WorstBox w;
    if (vol.empty()) return w;
    w.volume = vol[0];
    for (std::size_t i = 1; i < vol.size(); ++i) {
        if (vol[i] < w.volume) {
            w.volume = vol[i];
            w.index = i;
        }
    }
    return w;
}

std::vector<double> evaluate_points(const Distortion& d, std::span<const double> points,
                                    Exec exec) {
    const std::size_t n = d.dim();
    if (points.size() % n != 0) throw std::invalid_argument("evaluate_points: ragged point list");
    const long count = static_cast<long>(points.size() / n);
    std::vector<double> out(static_cast<std::size_t>(count));
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < count; ++i)
            out[static_cast<std::size_t>(i)] = d(points.subspan(static_cast<std::size_t>(i) * n, n));
    } else {
        for (long i = 0; i < count; ++i)
            out[static_cast<std::size_t>(i)] = d(points.subspan(static_cast<std::size_t>(i) * n, n));
    }
    return out;
}

namespace {

template <class Pred>
std::vector<std::size_t> count_rows(const Sample& s, std::span<const double> queries, Exec exec,
                                    Pred pred) {
    const std::size_t dim = s.dim;
    if (dim == 0 || queries.size() % dim != 0) {
        throw std::invalid_argument("count: query dimension mismatch");
    }
    const long n_queries = static_cast<long>(queries.size() / dim);
    const std::size_t n = s.size();
    std::vector<std::size_t> counts(static_cast<std::size_t>(n_queries), 0);
    auto one_query = [&](long q) {
        const double* qq = queries.data() + static_cast<std::size_t>(q) * dim;
        std::size_t c = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double* row = s.values.data() + i * dim;
            bool hit = true;
            for (std::size_t j = 0; j < dim && hit; ++j) hit = pred(row[j], qq[j]);
            c += hit;
        }
        counts[static_cast<std::size_t>(q)] = c;
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long q = 0; q < n_queries; ++q) one_query(q);
    } else {
        for (long q = 0; q < n_queries; ++q) one_query(q);
    }
    return counts;
}

}  // namespace

std::vector<std::size_t> count_below(const Sample& s, std::span<const double> queries, Exec exec) {
    return count_rows(s, queries, exec, [](double x, double q) { return x <= q; });
}

std::vector<std::size_t> count_above(const Sample& s, std::span<const double> queries, Exec exec) {
    return count_rows(s, queries, exec, [](double x, double q) { return x > q; });
}

}  // namespace mdd::kernels
