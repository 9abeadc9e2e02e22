#include "mdd/distortion.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <json.hpp>
#include <stdexcept>

#include "mdd/kernels.hpp"
#include "mdd/numerics.hpp"
#include "mdd/rng.hpp"
#include "mdd/spec_string.hpp"

namespace mdd {

namespace {

constexpr std::size_t kMaxDim = 16;

using Buf = std::array<double, kMaxDim>;

std::span<const double> view(const Buf& b, std::size_t n) { return {b.data(), n}; }

void require_dim(std::span<const double> u, std::size_t n, const char* what) {
    if (u.size() != n) {
        throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(n) +
                                    " coordinates, got " + std::to_string(u.size()));
    }
}

}  // namespace

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::FromCopula: return "from_copula";
        case Provenance::OrderedPair: return "ordered_pair";
        case Provenance::ResidualLifetime: return "residual_lifetime";
        case Provenance::OrderStats: return "order_stats";
        case Provenance::CoherentPair: return "coherent_pair";
        case Provenance::Custom: return "custom";
    }
    return "custom";
}

Distortion::Distortion(std::size_t dim, EvalFn eval, Provenance provenance, std::string name)
    : dim_(dim), eval_(std::move(eval)), provenance_(provenance), name_(std::move(name)) {
    if (dim_ == 0 || dim_ > kMaxDim) throw std::invalid_argument("distortion: bad dimension");
    if (!eval_) throw std::invalid_argument("distortion: empty evaluation function");
}

Distortion Distortion::with_partial(PartialFn partial) const {
    Distortion d = *this;
    d.partial_ = std::move(partial);
    return d;
}

Distortion Distortion::with_density(DensityFn density) const {
    Distortion d = *this;
    d.density_ = std::move(density);
    return d;
}

double Distortion::operator()(std::span<const double> u) const {
    require_dim(u, dim_, "distortion");
    return eval_(u);
}

double Distortion::partial(std::size_t k, std::span<const double> u) const {
    require_dim(u, dim_, "distortion partial");
    if (k >= dim_) throw std::out_of_range("distortion partial: coordinate out of range");
    if (partial_) return partial_(k, u);
    return finite_difference_partial(k, u);
}

double Distortion::finite_difference_partial(std::size_t k, std::span<const double> u) const {
    constexpr double h = kFiniteDifferenceStep;
    Buf z{};
    std::copy(u.begin(), u.end(), z.begin());
    const double x = u[k];
    double lo = x - h, hi = x + h;
    if (lo < 0.0) lo = x;
    if (hi > 1.0) hi = x;
    z[k] = hi;
    const double fhi = eval_(view(z, dim_));
    z[k] = lo;
    const double flo = eval_(view(z, dim_));
    return (fhi - flo) / (hi - lo);
}

double Distortion::density(std::span<const double> u) const {
    require_dim(u, dim_, "distortion density");
    if (!density_) throw std::logic_error("distortion '" + name_ + "' has no density attached");
    return density_(u);
}

UnivariateDistortion UnivariateDistortion::identity() {
    return {[](double u) { return u; }, [](double) { return 1.0; }, "identity"};
}

UnivariateDistortion UnivariateDistortion::power(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("power distortion needs alpha > 0");
    return {[alpha](double u) { return std::pow(u, alpha); },
            [alpha](double u) { return alpha * std::pow(u, alpha - 1.0); },
            "power(" + format_double(alpha) + ")"};
}

Distortion from_copula(const Copula& c, const std::vector<UnivariateDistortion>& ds) {
    const std::size_t n = c.dim();
    if (ds.size() != n) throw std::invalid_argument("from_copula: need one distortion per coordinate");
    bool all_derivs = true;
    std::string name = "copula[" + c.to_string() + "](";
    for (std::size_t i = 0; i < n; ++i) {
        const auto& d = ds[i];
        if (!d.fn) throw std::invalid_argument("from_copula: empty univariate distortion");
        if (std::abs(d.fn(0.0)) > 1e-12 || std::abs(d.fn(1.0) - 1.0) > 1e-12) {
            throw std::invalid_argument("from_copula: '" + d.name + "' is not a distortion (d(0)=0, d(1)=1)");
        }
        double prev = d.fn(0.0);
        for (int j = 1; j <= 100; ++j) {
            const double cur = d.fn(j / 100.0);
            if (cur < prev - 1e-15) {
                throw std::invalid_argument("from_copula: '" + d.name + "' is not nondecreasing");
            }
            prev = cur;
        }
        all_derivs = all_derivs && static_cast<bool>(d.derivative);
        name += (i ? "," : "") + d.name;
    }
    name += ")";

    Distortion out(
        n,
        [c, ds](std::span<const double> u) {
            Buf z{};
            for (std::size_t i = 0; i < u.size(); ++i) z[i] = ds[i].fn(u[i]);
            return c.cdf(view(z, u.size()));
        },
        Provenance::FromCopula, name);
    if (all_derivs) {
        out = out.with_partial([c, ds](std::size_t k, std::span<const double> u) {
            Buf z{};
            for (std::size_t i = 0; i < u.size(); ++i) z[i] = ds[i].fn(u[i]);
            return c.partial(k, view(z, u.size())) * ds[k].derivative(u[k]);
        });
        if (c.has_density()) {
            out = out.with_density([c, ds](std::span<const double> u) {
                Buf z{};
                double jac = 1.0;
                for (std::size_t i = 0; i < u.size(); ++i) {
                    z[i] = ds[i].fn(u[i]);
                    jac *= ds[i].derivative(u[i]);
                }
                return c.density(view(z, u.size())) * jac;
            });
        }
    }
    return out;
}

Distortion from_copula(const Copula& c) {
    Distortion out(
        c.dim(), [c](std::span<const double> u) { return c.cdf(u); }, Provenance::FromCopula,
        c.to_string());
    out = out.with_partial([c](std::size_t k, std::span<const double> u) { return c.partial(k, u); });
    if (c.has_density()) {
        out = out.with_density([c](std::span<const double> u) { return c.density(u); });
    }
    return out;
}

Distortion mean_aggregation(std::size_t n) {
    const double inv = 1.0 / static_cast<double>(n);
    return Distortion(
               n,
               [n](std::span<const double> u) {
                   double s = 0.0;
                   for (double x : u) s += x;
                   return s / static_cast<double>(n);
               },
               Provenance::Custom, "mean-aggregation")
        .with_partial([inv](std::size_t, std::span<const double>) { return inv; });
}

DualDistortion dual(const Distortion& d) {
    const std::size_t n = d.dim();
    Distortion out(
        n,
        [d](std::span<const double> u) {
            const std::size_t n = u.size();
            Buf z{};
            double total = 0.0;
            for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
                for (std::size_t i = 0; i < n; ++i) z[i] = ((mask >> i) & 1u) ? 1.0 - u[i] : 1.0;
                const double term = d(view(z, n));
                total += (std::popcount(mask) % 2 == 0) ? term : -term;
            }
            return total;
        },
        d.provenance(), "dual(" + d.name() + ")");
    if (d.has_analytic_partial()) {
        out = out.with_partial([d](std::size_t k, std::span<const double> u) {
            const std::size_t n = u.size();
            Buf z{};
            double total = 0.0;
            for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
                if (!((mask >> k) & 1u)) continue;
                for (std::size_t i = 0; i < n; ++i) z[i] = ((mask >> i) & 1u) ? 1.0 - u[i] : 1.0;
                const double term = d.partial(k, view(z, n));
                total += (std::popcount(mask) % 2 == 0) ? -term : term;
            }
            return total;
        });
    }
    if (d.has_density()) {
        out = out.with_density([d](std::span<const double> u) {
            Buf z{};
            for (std::size_t i = 0; i < u.size(); ++i) z[i] = 1.0 - u[i];
            return d.density(view(z, u.size()));
        });
    }
    return DualDistortion(std::move(out));
}

Distortion primal(const DualDistortion& d) {
    Distortion back = dual(d.as_distortion()).as_distortion();
    const std::string& inner = d.name();
    std::string name = inner.starts_with("dual(") && inner.ends_with(")")
                           ? inner.substr(5, inner.size() - 6)
                           : "primal(" + inner + ")";
    return Distortion(
               back.dim(), [back](std::span<const double> u) { return back(u); },
               back.provenance(), name)
        .with_partial([back](std::size_t k, std::span<const double> u) { return back.partial(k, u); });
}

Distortion marginal_distortion(const Distortion& d, const std::vector<std::size_t>& keep) {
    if (keep.empty()) throw std::invalid_argument("marginal_distortion: empty index set");
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] >= d.dim()) throw std::out_of_range("marginal_distortion: index out of range");
        if (i > 0 && keep[i] <= keep[i - 1]) {
            throw std::invalid_argument("marginal_distortion: indices must be strictly increasing");
        }
    }
    if (keep.size() == d.dim()) return d;

    std::string name = "marginal(" + d.name() + ";";
    for (std::size_t i = 0; i < keep.size(); ++i) name += (i ? "," : "") + std::to_string(keep[i] + 1);
    name += ")";
    const std::size_t n = d.dim();
    auto lift = [n, keep](std::span<const double> w) {
        Buf z;
        z.fill(1.0);
        for (std::size_t j = 0; j < keep.size(); ++j) z[keep[j]] = w[j];
        (void)n;
        return z;
    };
    Distortion out(
        keep.size(), [d, lift, n](std::span<const double> w) { return d(view(lift(w), n)); },
        d.provenance(), name);
    if (d.has_analytic_partial()) {
        out = out.with_partial([d, lift, keep, n](std::size_t k, std::span<const double> w) {
            return d.partial(keep[k], view(lift(w), n));
        });
    }
    return out;
}

MddModel::MddModel(Distortion d, std::vector<UnivariateDist> baselines)
    : d_(std::move(d)), g_(std::move(baselines)) {
    if (g_.size() != d_.dim()) {
        throw std::invalid_argument("MddModel: need one baseline per distortion coordinate");
    }
}

double MddModel::joint_cdf(std::span<const double> x) const {
    require_dim(x, dim(), "joint_cdf");
    Buf u{};
    for (std::size_t i = 0; i < x.size(); ++i) {
        u[i] = g_[i].cdf(x[i]);
        if (u[i] == 0.0) return 0.0;
    }
    return std::clamp(d_(view(u, x.size())), 0.0, 1.0);
}

double MddModel::joint_survival(std::span<const double> x) const {
    require_dim(x, dim(), "joint_survival");
    // F-bar(x) = sum_S (-1)^|S| F(x_S, +inf elsewhere); the same alternating
    // sum as dual(), applied with the baseline values directly.
    const std::size_t n = x.size();
    Buf u{};
    for (std::size_t i = 0; i < n; ++i) u[i] = g_[i].cdf(x[i]);
    Buf z{};
    double total = 0.0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        for (std::size_t i = 0; i < n; ++i) z[i] = ((mask >> i) & 1u) ? u[i] : 1.0;
        const double term = d_(view(z, n));
        total += (std::popcount(mask) % 2 == 0) ? term : -term;
    }
    return std::clamp(total, 0.0, 1.0);
}

double MddModel::joint_pdf(std::span<const double> x) const {
    require_dim(x, dim(), "joint_pdf");
    Buf u{};
    double g = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        u[i] = g_[i].cdf(x[i]);
        g *= g_[i].pdf(x[i]);
    }
    if (g == 0.0) return 0.0;
    return g * d_.density(view(u, x.size()));
}

double MddModel::marginal_cdf(std::size_t i, double x) const {
    if (i >= dim()) throw std::out_of_range("marginal_cdf: index out of range");
    Buf u;
    u.fill(1.0);
    u[i] = g_[i].cdf(x);
    return d_(view(u, dim()));
}

MddModel rebase(const MddModel& m, const UnivariateDist& g) {
    for (const auto& gi : m.baselines()) {
        if (gi.support_lower() < g.support_lower() || gi.support_upper() > g.support_upper()) {
            throw std::invalid_argument("rebase: baseline " + gi.to_string() +
                                        " has support outside that of " + g.to_string());
        }
    }
    if (std::all_of(m.baselines().begin(), m.baselines().end(),
                    [&](const UnivariateDist& gi) { return gi == g; })) {
        return m;
    }
    const Distortion& d = m.distortion();
    const std::vector<UnivariateDist> gs = m.baselines();
    const std::size_t n = d.dim();
    auto transform = [gs, g](std::size_t i, double u) {
        if (u <= 0.0) return 0.0;
        if (u >= 1.0) return 1.0;
        return gs[i].cdf(g.quantile(u));
    };
    Distortion dg(
        n,
        [d, transform](std::span<const double> u) {
            Buf z{};
            for (std::size_t i = 0; i < u.size(); ++i) z[i] = transform(i, u[i]);
            return d(view(z, u.size()));
        },
        d.provenance(), "rebased(" + d.name() + "," + g.to_string() + ")");
    return MddModel(std::move(dg), std::vector<UnivariateDist>(n, g));
}

Distortion recover_copula(const MddModel& m) {
    const Distortion d = m.distortion();
    const std::size_t n = d.dim();
    auto marginal_inverse = [d, n](std::size_t i, double p) {
        if (p <= 0.0) return 0.0;
        if (p >= 1.0) return 1.0;
        auto di = [&](double u) {
            Buf z;
            z.fill(1.0);
            z[i] = u;
            return d(view(z, n));
        };
        return numerics::invert_increasing(di, p, 0.0, 1.0, 1e-12, 200);
    };
    return Distortion(
        n,
        [d, marginal_inverse](std::span<const double> u) {
            Buf z{};
            for (std::size_t i = 0; i < u.size(); ++i) z[i] = marginal_inverse(i, u[i]);
            return std::clamp(d(view(z, u.size())), 0.0, 1.0);
        },
        Provenance::Custom, "recovered_copula(" + d.name() + ")");
}

std::vector<double> unit_grid(std::size_t dim, std::size_t grid_size) {
    if (grid_size < 2) throw std::invalid_argument("grid size must be at least 2");
    std::size_t total = 1;
    for (std::size_t i = 0; i < dim; ++i) total *= grid_size;
    std::vector<double> pts(total * dim);
    const double step = 1.0 / static_cast<double>(grid_size - 1);
    for (std::size_t p = 0; p < total; ++p) {
        std::size_t rem = p;
        for (std::size_t i = dim; i-- > 0;) {
            pts[p * dim + i] = static_cast<double>(rem % grid_size) * step;
            rem /= grid_size;
        }
    }
    return pts;
}

std::string ValidationReport::to_json() const {
    nlohmann::ordered_json j;
    j["grounded_max_violation"] = grounded_max_violation;
    j["grounded_worst_point"] = grounded_worst_point;
    j["corner_value"] = corner_value;
    j["worst_box_volume"] = worst_box_volume;
    j["n_boxes"] = n_boxes;
    j["grid_size"] = grid_size;
    j["seed"] = seed;
    j["tolerance"] = tolerance;
    j["pass"] = pass;
    return j.dump(2);
}

ValidationReport validate(const Distortion& d, std::size_t grid_size, std::size_t n_boxes,
                          std::uint64_t seed, double tolerance, Exec exec) {
    if (grid_size < 2) throw std::invalid_argument("validate: grid_size must be at least 2");
    const std::size_t n = d.dim();
    ValidationReport r;
    r.n_boxes = n_boxes;
    r.grid_size = grid_size;
    r.seed = seed;
    r.tolerance = tolerance;

    // Groundedness: one coordinate at 0, the rest over the grid.
    const std::vector<double> face =
        n > 1 ? unit_grid(n - 1, grid_size) : std::vector<double>{};
    const std::size_t face_points = n > 1 ? face.size() / (n - 1) : 1;
    std::vector<double> probes;
    probes.reserve(n * face_points * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t p = 0; p < face_points; ++p) {
            for (std::size_t j = 0, f = 0; j < n; ++j) {
                probes.push_back(j == i ? 0.0 : face[p * (n - 1) + f++]);
            }
        }
    }
    const std::vector<double> vals = kernels::evaluate_points(d, probes, exec);
    r.grounded_max_violation = -1.0;
    for (std::size_t p = 0; p < vals.size(); ++p) {
        if (std::abs(vals[p]) > r.grounded_max_violation) {
            r.grounded_max_violation = std::abs(vals[p]);
            r.grounded_worst_point.assign(probes.begin() + static_cast<long>(p * n),
                                          probes.begin() + static_cast<long>((p + 1) * n));
        }
    }

    const std::vector<double> ones(n, 1.0);
    r.corner_value = d(ones);

    std::vector<double> lows(n_boxes * n), highs(n_boxes * n);
    Rng rng(seed, 0);
    for (std::size_t b = 0; b < n_boxes; ++b) {
        for (std::size_t i = 0; i < n; ++i) {
            const double a = rng.uniform(), c = rng.uniform();
            lows[b * n + i] = std::min(a, c);
            highs[b * n + i] = std::max(a, c);
        }
    }
    r.worst_box_volume =
        n_boxes ? kernels::worst_box_volume(d, lows, highs, exec).volume : 0.0;

    r.pass = r.grounded_max_violation <= tolerance &&
             std::abs(r.corner_value - 1.0) <= tolerance && r.worst_box_volume >= -tolerance;
    return r;
}

ValidationReport validate(const DualDistortion& d, std::size_t grid_size, std::size_t n_boxes,
                          std::uint64_t seed, double tolerance, Exec exec) {
    return validate(d.as_distortion(), grid_size, n_boxes, seed, tolerance, exec);
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::HoldsXleY: return "holds_X_le_Y";
        case Verdict::HoldsYleX: return "holds_Y_le_X";
        case Verdict::Incomparable: return "incomparable";
        case Verdict::Equal: return "equal";
    }
    return "incomparable";
}

std::string OrderReport::to_json() const {
    nlohmann::ordered_json j;
    j["order"] = order;
    j["verdict"] = to_string(verdict);
    j["grid_size"] = grid_size;
    j["n_points"] = n_points;
    j["max_difference"] = max_difference;
    j["min_difference"] = min_difference;
    j["tolerance"] = tolerance;
    j["certificate"] = "grid";
    j["implications"] = implications;
    return j.dump(2);
}

namespace {

// diff = (x side) - (y side); `x_le_y_when_nonneg` tells which sign certifies X <= Y.
OrderReport verdict_from_differences(const std::vector<double>& diff, double tolerance,
                                     bool x_le_y_when_nonneg, const std::string& order) {
    OrderReport r;
    r.order = order;
    r.tolerance = tolerance;
    r.n_points = diff.size();
    r.max_difference = diff.empty() ? 0.0 : *std::max_element(diff.begin(), diff.end());
    r.min_difference = diff.empty() ? 0.0 : *std::min_element(diff.begin(), diff.end());
    const bool nonneg = r.min_difference >= -tolerance;
    const bool nonpos = r.max_difference <= tolerance;
    if (nonneg && nonpos) {
        r.verdict = Verdict::Equal;
    } else if (nonneg) {
        r.verdict = x_le_y_when_nonneg ? Verdict::HoldsXleY : Verdict::HoldsYleX;
    } else if (nonpos) {
        r.verdict = x_le_y_when_nonneg ? Verdict::HoldsYleX : Verdict::HoldsXleY;
    } else {
        r.verdict = Verdict::Incomparable;
    }
    return r;
}

std::vector<double> grid_differences(const Distortion& a, const Distortion& b,
                                     std::size_t grid_size, Exec exec) {
    if (a.dim() != b.dim()) throw std::invalid_argument("compare: dimension mismatch");
    const std::vector<double> pts = unit_grid(a.dim(), grid_size);
    const std::vector<double> va = kernels::evaluate_points(a, pts, exec);
    const std::vector<double> vb = kernels::evaluate_points(b, pts, exec);
    std::vector<double> diff(va.size());
    for (std::size_t i = 0; i < va.size(); ++i) diff[i] = va[i] - vb[i];
    return diff;
}

}  // namespace

OrderReport compare_lower_orthant(const Distortion& dx, const Distortion& dy,
                                  std::size_t grid_size, double tolerance, Exec exec) {
    OrderReport r = verdict_from_differences(grid_differences(dx, dy, grid_size, exec), tolerance,
                                             true, "lower_orthant");
    r.grid_size = grid_size;
    if (r.verdict == Verdict::HoldsXleY) r.implications = {"X <=_lo Y"};
    if (r.verdict == Verdict::HoldsYleX) r.implications = {"Y <=_lo X"};
    if (r.verdict == Verdict::Equal) r.implications = {"X =_lo Y"};
    return r;
}

OrderReport compare_upper_orthant(const DualDistortion& dx, const DualDistortion& dy,
                                  std::size_t grid_size, double tolerance, Exec exec) {
    OrderReport r = verdict_from_differences(
        grid_differences(dx.as_distortion(), dy.as_distortion(), grid_size, exec), tolerance,
        false, "upper_orthant");
    r.grid_size = grid_size;
    if (r.verdict == Verdict::HoldsXleY) r.implications = {"X <=_uo Y"};
    if (r.verdict == Verdict::HoldsYleX) r.implications = {"Y <=_uo X"};
    if (r.verdict == Verdict::Equal) r.implications = {"X =_uo Y"};
    return r;
}

OrderReport compare_baselines(const std::vector<UnivariateDist>& g,
                              const std::vector<UnivariateDist>& h, const std::vector<double>& xs,
                              double tolerance) {
    if (g.size() != h.size()) throw std::invalid_argument("compare_baselines: length mismatch");
    if (xs.empty()) throw std::invalid_argument("compare_baselines: empty grid");
    std::vector<double> diff;
    diff.reserve(g.size() * xs.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        for (double x : xs) diff.push_back(g[i].cdf(x) - h[i].cdf(x));
    OrderReport r = verdict_from_differences(diff, tolerance, true, "baselines");
    r.grid_size = xs.size();
    if (r.verdict == Verdict::HoldsXleY) r.implications = {"X <=_lo Y", "X <=_uo Y"};
    if (r.verdict == Verdict::HoldsYleX) r.implications = {"Y <=_lo X", "Y <=_uo X"};
    if (r.verdict == Verdict::Equal) r.implications = {"X =_lo Y", "X =_uo Y"};
    return r;
}

}  // namespace mdd
