#include "mdd/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <stdexcept>

#include "mdd/kernels.hpp"
#include "mdd/numerics.hpp"
#include "mdd/rng.hpp"

namespace mdd::oracle {

namespace {

double fgm3_conditional(double w, double a) { return w + a * w * (1.0 - w); }

void fill_row(const Copula& c, Rng& rng, std::span<double> row) {
    const std::size_t n = c.dim();
    switch (c.family()) {
        case CopulaFamily::Independence:
            for (std::size_t i = 0; i < n; ++i) row[i] = rng.uniform();
            return;
        case CopulaFamily::Comonotone: {
            const double u = rng.uniform();
            for (std::size_t i = 0; i < n; ++i) row[i] = u;
            return;
        }
        case CopulaFamily::Reflected:
            fill_row(c.base(), rng, row);
            for (std::size_t i = 0; i < n; ++i) row[i] = 1.0 - row[i];
            return;
        case CopulaFamily::Fgm:
            if (n == 3) {
                row[0] = rng.uniform();
                row[1] = rng.uniform();
                const double q = rng.uniform();
                const double a = c.theta() * (1.0 - 2.0 * row[0]) * (1.0 - 2.0 * row[1]);
                row[2] = numerics::bisect_increasing([a](double w) { return fgm3_conditional(w, a); },
                                                     q, 0.0, 1.0, 1e-12);
                return;
            }
            [[fallthrough]];
        case CopulaFamily::Clayton1: {
            row[0] = rng.uniform();
            row[1] = c.conditional_quantile(rng.uniform(), row[0]);
            return;
        }
    }
}

// Runs fill(rng, row) for n rows in blocks of kBlockSize; block b owns Rng(seed, b).
template <class Fill>
Sample run_blocks(std::size_t dim, std::size_t n, std::uint64_t seed, Exec exec, Fill fill) {
    Sample s(dim, n);
    const long n_blocks = static_cast<long>((n + kBlockSize - 1) / kBlockSize);
    auto one = [&](long b) {
        Rng rng(seed, static_cast<std::uint64_t>(b));
        const std::size_t start = static_cast<std::size_t>(b) * kBlockSize;
        const std::size_t stop = std::min(n, start + kBlockSize);
        for (std::size_t i = start; i < stop; ++i) fill(rng, s.row(i));
    };
    if (exec == Exec::Parallel) {
        std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
        for (long b = 0; b < n_blocks; ++b) {
            try {
                one(b);
            } catch (...) {
#pragma omp critical
                if (!error) error = std::current_exception();
            }
        }
        if (error) std::rethrow_exception(error);
    } else {
        for (long b = 0; b < n_blocks; ++b) one(b);
    }
    return s;
}

EmpiricalEstimate proportion(std::size_t count, std::size_t n) {
    EmpiricalEstimate e;
    e.n = n;
    if (n == 0) return e;
    e.value = static_cast<double>(count) / static_cast<double>(n);
    e.std_error = std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(n));
    return e;
}

}  // namespace

Sample sample_copula(const Copula& c, std::size_t n, std::uint64_t seed, Exec exec) {
    if (c.family() == CopulaFamily::Clayton1 && c.dim() != 2) {
        throw std::invalid_argument("sample_copula: unsupported copula");
    }
    return run_blocks(c.dim(), n, seed, exec,
                      [&c](Rng& rng, std::span<double> row) { fill_row(c, rng, row); });
}

Sample sample_trivariate_fgm(double theta, std::size_t n, std::uint64_t seed, Exec exec) {
    return sample_copula(Copula::fgm(3, theta), n, seed, exec);
}

Sample sample_mdd_pairs(const Copula& c, const UnivariateDist& f, std::size_t n,
                        std::uint64_t seed, Exec exec) {
    if (c.dim() != 2) throw std::invalid_argument("sample_mdd_pairs needs a bivariate copula");
    return run_blocks(2, n, seed, exec, [&](Rng& rng, std::span<double> row) {
        fill_row(c, rng, row);
        row[0] = f.quantile(row[0]);
        row[1] = f.quantile(row[1]);
    });
}

Sample sort_rows(const Sample& s) {
    Sample out = s;
    for (std::size_t i = 0; i < out.size(); ++i) {
        auto r = out.row(i);
        std::sort(r.begin(), r.end());
    }
    return out;
}

Sample sample_system_pair(const StructureFunction& psi, const StructureFunction& psi_star,
                          const Copula& c, const UnivariateDist& f, std::size_t n,
                          std::uint64_t seed, Exec exec) {
    if (psi.n_components() != c.dim() || psi_star.n_components() != c.dim()) {
        throw std::invalid_argument("sample_system_pair: component count mismatch");
    }
    const std::size_t m = c.dim();
    return run_blocks(2, n, seed, exec, [&](Rng& rng, std::span<double> row) {
        std::array<double, 16> x{};
        std::span<double> xs(x.data(), m);
        fill_row(c, rng, xs);
        for (double& v : xs) v = f.quantile(v);
        row[0] = psi.lifetime(xs);
        row[1] = psi_star.lifetime(xs);
    });
}

Sample sample_residuals(const ResidualSpec& spec, std::size_t n, std::uint64_t seed, Exec exec) {
    const std::vector<ResidualRole> roles = spec.roles();
    const Copula& c_hat = spec.survival_copula.copula;
    const std::size_t m = c_hat.dim();
    std::vector<std::size_t> tracked;
    for (std::size_t i = 0; i < m; ++i)
        if (roles[i] == ResidualRole::Tracked) tracked.push_back(i);
    const std::size_t dim = tracked.size();
    const double t = spec.t;

    constexpr long kBatch = 8;
    constexpr long kMaxBlocks = 1L << 16;
    Sample out(dim, 0);
    out.values.reserve(n * dim);
    for (long first = 0; out.size() < n; first += kBatch) {
        if (first >= kMaxBlocks) {
            throw std::runtime_error("sample_residuals: conditioning event too rare to sample");
        }
        std::vector<std::vector<double>> accepted(kBatch);
        auto one = [&](long j) {
            Rng rng(seed, static_cast<std::uint64_t>(first + j));
            std::array<double, 16> v{};
            std::span<double> row(v.data(), m);
            auto& acc = accepted[static_cast<std::size_t>(j)];
            for (std::size_t r = 0; r < kBlockSize; ++r) {
                fill_row(c_hat, rng, row);
                bool ok = true;
                for (std::size_t i = 0; i < m && ok; ++i) {
                    row[i] = spec.marginals[i].quantile(1.0 - row[i]);
                    if (roles[i] == ResidualRole::Tracked || roles[i] == ResidualRole::AliveOnly)
                        ok = row[i] > t;
                    else if (roles[i] == ResidualRole::FailedByT)
                        ok = row[i] <= t;
                }
                if (!ok) continue;
                for (std::size_t i : tracked) acc.push_back(row[i] - t);
            }
        };
        if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
            for (long j = 0; j < kBatch; ++j) one(j);
        } else {
            for (long j = 0; j < kBatch; ++j) one(j);
        }
        for (const auto& acc : accepted) out.values.insert(out.values.end(), acc.begin(), acc.end());
    }
    out.values.resize(n * dim);
    return out;
}

EmpiricalEstimate empirical_cdf(const Sample& s, std::span<const double> query) {
    return proportion(kernels::count_below(s, query, Exec::Serial).at(0), s.size());
}

EmpiricalEstimate empirical_survival(const Sample& s, std::span<const double> query) {
    return proportion(kernels::count_above(s, query, Exec::Serial).at(0), s.size());
}

std::vector<EmpiricalEstimate> empirical_cdf(const Sample& s, std::span<const double> queries,
                                             Exec exec) {
    std::vector<EmpiricalEstimate> out;
    for (std::size_t c : kernels::count_below(s, queries, exec)) out.push_back(proportion(c, s.size()));
    return out;
}

std::vector<EmpiricalEstimate> empirical_survival(const Sample& s, std::span<const double> queries,
                                                  Exec exec) {
    std::vector<EmpiricalEstimate> out;
    for (std::size_t c : kernels::count_above(s, queries, exec)) out.push_back(proportion(c, s.size()));
    return out;
}

EmpiricalEstimate sample_mean(std::span<const double> xs) {
    EmpiricalEstimate e;
    e.n = xs.size();
    if (xs.empty()) return e;
    const double n = static_cast<double>(xs.size());
    e.value = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : xs) ss += (x - e.value) * (x - e.value);
    e.std_error = xs.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
    return e;
}

std::vector<BinMedian> empirical_conditional_median(const Sample& pairs, std::size_t n_bins) {
    if (pairs.dim != 2) throw std::invalid_argument("conditional median needs bivariate rows");
    const std::size_t n = pairs.size();
    if (n < 100) throw std::invalid_argument("conditional median needs at least 100 rows");
    if (n_bins == 0 || n_bins > n / 10) throw std::invalid_argument("conditional median: bad bin count");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return pairs.at(a, 0) < pairs.at(b, 0); });
    std::vector<BinMedian> bins(n_bins);
    for (std::size_t b = 0; b < n_bins; ++b) {
        const std::size_t lo = b * n / n_bins, hi = (b + 1) * n / n_bins;
        BinMedian& bin = bins[b];
        std::vector<double> ys;
        for (std::size_t i = lo; i < hi; ++i) {
            bin.xs.push_back(pairs.at(order[i], 0));
            ys.push_back(pairs.at(order[i], 1));
        }
        bin.x_lo = bin.xs.front();
        bin.x_hi = bin.xs.back();
        // Lower median for even counts.
        const std::size_t mid = (ys.size() - 1) / 2;
        std::nth_element(ys.begin(), ys.begin() + static_cast<long>(mid), ys.end());
        bin.median = ys[mid];
    }
    return bins;
}

std::vector<MedianBinCheck> check_binned_medians(const MddModel& model, const Sample& pairs,
                                                 std::size_t n_bins, double z, Exec exec) {
    const std::vector<BinMedian> bins = empirical_conditional_median(pairs, n_bins);
    std::vector<MedianBinCheck> out(n_bins);
    const long nb = static_cast<long>(n_bins);
    auto one = [&](long b) {
        const BinMedian& bin = bins[static_cast<std::size_t>(b)];
        MedianBinCheck& r = out[static_cast<std::size_t>(b)];
        r.bin = static_cast<std::size_t>(b);
        r.n = bin.xs.size();
        r.median = bin.median;
        double h = 0.0;
        for (double x : bin.xs) h += ConditionalLaw(model, x).conditional_cdf(bin.median);
        r.mixture_cdf = h / static_cast<double>(r.n);
        r.half_width = z * 0.5 / std::sqrt(static_cast<double>(r.n));
        r.pass = std::abs(r.mixture_cdf - 0.5) <= r.half_width;
    };
    if (exec == Exec::Parallel) {
        std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
        for (long b = 0; b < nb; ++b) {
            try {
                one(b);
            } catch (...) {
#pragma omp critical
                if (!error) error = std::current_exception();
            }
        }
        if (error) std::rethrow_exception(error);
    } else {
        for (long b = 0; b < nb; ++b) one(b);
    }
    return out;
}

double sidak_z(double level, std::size_t m) {
    if (!(level > 0.0 && level < 1.0) || m == 0) throw std::invalid_argument("sidak_z: bad arguments");
    const double alpha = 1.0 - std::pow(level, 1.0 / static_cast<double>(m));
    return std_normal_quantile(1.0 - alpha / 2.0);
}

namespace {

// Inversions of v, counted while merge-sorting it.
std::uint64_t count_inversions(std::vector<double>& v, std::vector<double>& tmp, std::size_t lo,
                               std::size_t hi) {
    if (hi - lo < 2) return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::uint64_t inv = count_inversions(v, tmp, lo, mid) + count_inversions(v, tmp, mid, hi);
    std::size_t i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
        if (v[j] < v[i]) {
            inv += mid - i;
            tmp[k++] = v[j++];
        } else {
            tmp[k++] = v[i++];
        }
    }
    while (i < mid) tmp[k++] = v[i++];
    while (j < hi) tmp[k++] = v[j++];
    std::copy(tmp.begin() + static_cast<long>(lo), tmp.begin() + static_cast<long>(hi),
              v.begin() + static_cast<long>(lo));
    return inv;
}

}  // namespace

double kendall_tau(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("kendall_tau: length mismatch");
    const std::size_t n = x.size();
    if (n < 2) throw std::invalid_argument("kendall_tau: need at least two points");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return x[a] < x[b] || (x[a] == x[b] && y[a] < y[b]);
    });
    std::vector<double> v(n), tmp(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = y[order[i]];
    const double inv = static_cast<double>(count_inversions(v, tmp, 0, n));
    const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    return 1.0 - 2.0 * inv / pairs;
}

}  // namespace mdd::oracle
