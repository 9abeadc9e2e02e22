#include "mdd/constructions.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <json.hpp>
#include <memory>
#include <numeric>
#include <stdexcept>

#include "mdd/errors.hpp"
#include "mdd/inclusion_exclusion.hpp"
#include "mdd/spec_string.hpp"

namespace mdd {

namespace {

using Buf = std::array<double, 16>;

std::span<const double> view(const Buf& b, std::size_t n) { return {b.data(), n}; }

}  // namespace

// ---- residual lifetimes ----------------------------------------------------

std::vector<ResidualRole> ResidualSpec::roles() const {
    const std::size_t n = survival_copula.dim();
    if (marginals.size() != n) {
        throw std::invalid_argument("residual spec: need one marginal per copula coordinate");
    }
    for (std::size_t i : keep) {
        if (i >= n) throw std::out_of_range("residual spec: kept index out of range");
    }
    std::vector<ResidualRole> r(n, ResidualRole::Tracked);
    auto kept = [&](std::size_t i) { return std::find(keep.begin(), keep.end(), i) != keep.end(); };
    switch (conditioning) {
        case ResidualConditioning::AllAlive:
            if (!keep.empty())
                for (std::size_t i = 0; i < n; ++i)
                    if (!kept(i)) r[i] = ResidualRole::Ignored;
            break;
        case ResidualConditioning::LastFailedByT:
            if (failed >= n) throw std::out_of_range("residual spec: failed index out of range");
            if (kept(failed)) {
                throw std::invalid_argument("residual spec: failed component cannot be tracked");
            }
            if (!keep.empty())
                for (std::size_t i = 0; i < n; ++i)
                    if (!kept(i)) r[i] = ResidualRole::Ignored;
            r[failed] = ResidualRole::FailedByT;
            break;
        case ResidualConditioning::SubsetAlive:
            if (keep.empty()) throw std::invalid_argument("residual spec: subset conditioning needs keep");
            for (std::size_t i = 0; i < n; ++i)
                if (!kept(i)) r[i] = ResidualRole::AliveOnly;
            break;
    }
    return r;
}

std::vector<double> ResidualSpec::levels() const {
    if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("residual spec: t must be finite and >= 0");
    const std::vector<ResidualRole> r = roles();
    std::vector<double> k(r.size(), 1.0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i] == ResidualRole::Ignored) continue;
        k[i] = marginals[i].survival(t);
        if ((r[i] == ResidualRole::Tracked || r[i] == ResidualRole::AliveOnly) && !(k[i] > 0.0)) {
            throw ConditioningError("residual spec: component " + std::to_string(i + 1) +
                                    " has zero survival at t=" + format_double(t));
        }
    }
    return k;
}

DualDistortion residual_dual(const SurvivalCopula& c_hat, std::vector<double> k,
                             std::vector<ResidualRole> roles) {
    const std::size_t n = c_hat.dim();
    if (k.size() != n || roles.size() != n) {
        throw std::invalid_argument("residual_dual: levels and roles must match the copula dimension");
    }
    std::vector<std::size_t> tracked, failed;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(k[i] >= 0.0 && k[i] <= 1.0)) throw std::invalid_argument("residual_dual: level outside [0,1]");
        if (roles[i] == ResidualRole::Tracked) tracked.push_back(i);
        if (roles[i] == ResidualRole::FailedByT) failed.push_back(i);
    }
    if (tracked.empty()) throw std::invalid_argument("residual_dual: no tracked component");

    auto numerator = [c_hat, k, roles, tracked, failed](std::span<const double> u) {
        const std::size_t n = roles.size();
        Buf z{};
        for (std::size_t i = 0; i < n; ++i) {
            z[i] = (roles[i] == ResidualRole::Ignored || roles[i] == ResidualRole::FailedByT) ? 1.0 : k[i];
        }
        for (std::size_t j = 0; j < tracked.size(); ++j) {
            z[tracked[j]] = k[tracked[j]] * std::clamp(u[j], 0.0, 1.0);
        }
        // {X_l <= t} = not {X_l > t}: alternate over the failed components.
        double total = 0.0;
        for (std::size_t mask = 0; mask < (std::size_t{1} << failed.size()); ++mask) {
            for (std::size_t f = 0; f < failed.size(); ++f) {
                z[failed[f]] = ((mask >> f) & 1u) ? k[failed[f]] : 1.0;
            }
            const double term = c_hat(view(z, n));
            total += (std::popcount(mask) % 2 == 0) ? term : -term;
        }
        return total;
    };

    const std::vector<double> ones(tracked.size(), 1.0);
    const double denom = numerator(ones);
    if (!(denom > 1e-300)) {
        throw ConditioningError("residual_dual: conditioning event has probability 0");
    }

    std::string name = "residual(" + c_hat.copula.to_string() + ";";
    for (std::size_t i = 0; i < n; ++i) {
        static const char* tag[] = {"T", "A", "F", "-"};
        name += tag[static_cast<int>(roles[i])];
    }
    name += ")";
    return DualDistortion(Distortion(
        tracked.size(),
        [numerator, denom](std::span<const double> u) { return numerator(u) / denom; },
        Provenance::ResidualLifetime, name));
}

DualDistortion residual_dual_distortion(const ResidualSpec& spec) {
    if (spec.conditioning != ResidualConditioning::AllAlive) {
        throw std::invalid_argument("residual_dual_distortion expects AllAlive conditioning");
    }
    return residual_dual(spec.survival_copula, spec.levels(), spec.roles());
}

DualDistortion residual_dual_last_failed(const ResidualSpec& spec) {
    if (spec.conditioning != ResidualConditioning::LastFailedByT) {
        throw std::invalid_argument("residual_dual_last_failed expects LastFailedByT conditioning");
    }
    return residual_dual(spec.survival_copula, spec.levels(), spec.roles());
}

DualDistortion residual_dual_subset_alive(const ResidualSpec& spec) {
    if (spec.conditioning != ResidualConditioning::SubsetAlive) {
        throw std::invalid_argument("residual_dual_subset_alive expects SubsetAlive conditioning");
    }
    return residual_dual(spec.survival_copula, spec.levels(), spec.roles());
}

DualDistortion residual_dual_for(const ResidualSpec& spec) {
    return residual_dual(spec.survival_copula, spec.levels(), spec.roles());
}

// ---- ordered pairs -----------------------------------------------------------

namespace {

double c2(const Copula& c, double a, double b) {
    const std::array<double, 2> p{a, b};
    return c.cdf(p);
}

double d2(const Copula& c, std::size_t k, double a, double b) {
    const std::array<double, 2> p{a, b};
    return c.partial(k, p);
}

void require_bivariate(const Copula& c, const char* what) {
    if (c.dim() != 2) throw std::invalid_argument(std::string(what) + " needs a bivariate copula");
}

}  // namespace

Distortion ordered_pair_distortion(const Copula& c) {
    require_bivariate(c, "ordered_pair_distortion");
    Distortion d(
        2,
        [c](std::span<const double> w) {
            const double u = w[0], v = w[1];
            if (v <= u) return c2(c, v, v);
            return c2(c, u, v) + c2(c, v, u) - c2(c, u, u);
        },
        Provenance::OrderedPair, "ordered-pair(" + c.to_string() + ")");
    d = d.with_partial([c](std::size_t k, std::span<const double> w) {
        const double u = w[0], v = w[1];
        if (v <= u) return k == 0 ? 0.0 : d2(c, 0, v, v) + d2(c, 1, v, v);
        if (k == 0) return d2(c, 0, u, v) + d2(c, 1, v, u) - d2(c, 0, u, u) - d2(c, 1, u, u);
        return d2(c, 1, u, v) + d2(c, 0, v, u);
    });
    if (c.has_density()) {
        d = d.with_density([c](std::span<const double> w) { return ordered_pair_density(c, w[0], w[1]); });
    }
    return d;
}

double ordered_pair_density(const Copula& c, double u, double v) {
    require_bivariate(c, "ordered_pair_density");
    if (v < u) return 0.0;
    const std::array<double, 2> a{u, v}, b{v, u};
    return c.density(a) + c.density(b);
}

MddModel ordered_pair_model(const Copula& c, const UnivariateDist& f) {
    return MddModel(ordered_pair_distortion(c), {f, f});
}

// ---- order statistics ------------------------------------------------------

namespace {

const InclusionExclusion& order_stats_events() {
    // Levels: bit 0 = u1, bit 1 = u2, bit 2 = u3. Events ordered pair-major:
    // pairs {1,2}, {1,3}, {2,3}, and inside each the component at u1.
    static const InclusionExclusion table = [] {
        const std::array<std::array<std::size_t, 2>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
        std::vector<std::vector<std::uint32_t>> events;
        for (const auto& p : pairs) {
            for (std::size_t i = 0; i < 3; ++i) {
                std::vector<std::uint32_t> e(3, 4u);
                e[i] |= 1u;
                e[p[0]] |= 2u;
                e[p[1]] |= 2u;
                events.push_back(e);
            }
        }
        return InclusionExclusion(3, 3, std::move(events));
    }();
    return table;
}

}  // namespace

double order_stats_distortion_3(const Copula& c, double u1, double u2, double u3) {
    if (c.dim() != 3) throw std::invalid_argument("order_stats_distortion_3 needs a trivariate copula");
    if (!(u1 <= u2 && u2 <= u3)) {
        throw std::invalid_argument("order_stats_distortion_3: requires u1 <= u2 <= u3");
    }
    const std::array<double, 3> lv{u1, u2, u3};
    return order_stats_events().probability(c, lv);
}

Distortion order_stats_3(const Copula& c) {
    if (c.dim() != 3) throw std::invalid_argument("order_stats_3 needs a trivariate copula");
    Distortion d(
        3, [c](std::span<const double> u) { return order_stats_events().probability(c, u); },
        Provenance::OrderStats, "order-stats-3(" + c.to_string() + ")");
    d = d.with_partial([c](std::size_t k, std::span<const double> u) {
        return order_stats_events().partial(c, u, k);
    });
    if (c.has_density()) {
        d = d.with_density([c](std::span<const double> u) {
            if (!(u[0] <= u[1] && u[1] <= u[2])) return 0.0;
            return order_stats_density(c, u);
        });
    }
    return d;
}

double order_stats_density(const Copula& c, std::span<const double> u) {
    const std::size_t n = c.dim();
    if (u.size() != n) throw std::invalid_argument("order_stats_density: dimension mismatch");
    if (!std::is_sorted(u.begin(), u.end())) {
        throw std::invalid_argument("order_stats_density: requires ordered input");
    }
    if (c.exchangeable()) {
        double fact = 1.0;
        for (std::size_t i = 2; i <= n; ++i) fact *= static_cast<double>(i);
        return fact * c.density(u);
    }
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    Buf z{};
    double total = 0.0;
    do {
        for (std::size_t i = 0; i < n; ++i) z[i] = u[perm[i]];
        total += c.density(view(z, n));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

// ---- coherent systems ------------------------------------------------------

StructureFunction::StructureFunction(std::size_t n_components,
                                     std::vector<std::vector<std::size_t>> cuts)
    : n_(n_components), cuts_(std::move(cuts)) {
    if (n_ == 0 || n_ > 16) throw std::invalid_argument("structure function: bad component count");
    if (cuts_.empty()) throw std::invalid_argument("structure function: no cut sets");
    for (auto& cut : cuts_) {
        if (cut.empty()) throw std::invalid_argument("structure function: empty cut set");
        std::sort(cut.begin(), cut.end());
        if (std::adjacent_find(cut.begin(), cut.end()) != cut.end()) {
            throw std::invalid_argument("structure function: repeated component inside a cut set");
        }
        if (cut.back() >= n_) {
            throw std::invalid_argument("structure function: component " +
                                        std::to_string(cut.back() + 1) + " out of range");
        }
    }
    for (std::size_t i = 0; i < cuts_.size(); ++i) {
        for (std::size_t j = 0; j < cuts_.size(); ++j) {
            if (i != j && std::includes(cuts_[j].begin(), cuts_[j].end(), cuts_[i].begin(),
                                        cuts_[i].end())) {
                throw std::invalid_argument("structure function: cut sets are not minimal");
            }
        }
    }
}

namespace {

std::vector<std::vector<std::size_t>> cuts_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw SpecError("cut sets must be a JSON array of arrays");
    std::vector<std::vector<std::size_t>> cuts;
    for (const auto& cut : j) {
        if (!cut.is_array()) throw SpecError("cut sets must be a JSON array of arrays");
        std::vector<std::size_t> c;
        for (const auto& k : cut) {
            if (!k.is_number_integer() || k.get<long>() < 1) {
                throw SpecError("cut set entries must be positive component indices");
            }
            c.push_back(static_cast<std::size_t>(k.get<long>() - 1));
        }
        cuts.push_back(std::move(c));
    }
    return cuts;
}

}  // namespace

StructureFunction StructureFunction::from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw SpecError(std::string("structure function JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("cuts") || !j["n"].is_number_integer()) {
        throw SpecError("structure function JSON needs integer \"n\" and \"cuts\"");
    }
    const long n = j["n"].get<long>();
    if (n < 1) throw SpecError("structure function: n must be positive");
    try {
        return StructureFunction(static_cast<std::size_t>(n), cuts_from_json(j["cuts"]));
    } catch (const SpecError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw SpecError(e.what());
    }
}

StructureFunction StructureFunction::from_cuts_text(std::string_view text, std::size_t n_components) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw SpecError(std::string("cut sets: ") + e.what());
    }
    try {
        return StructureFunction(n_components, cuts_from_json(j));
    } catch (const SpecError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw SpecError(e.what());
    }
}

std::string StructureFunction::to_json() const {
    nlohmann::ordered_json j;
    j["n"] = n_;
    nlohmann::json cuts = nlohmann::json::array();
    for (const auto& cut : cuts_) {
        nlohmann::json c = nlohmann::json::array();
        for (std::size_t k : cut) c.push_back(k + 1);
        cuts.push_back(c);
    }
    j["cuts"] = cuts;
    return j.dump();
}

double StructureFunction::lifetime(std::span<const double> x) const {
    if (x.size() != n_) throw std::invalid_argument("structure function: lifetime arity mismatch");
    double t = INFINITY;
    for (const auto& cut : cuts_) {
        double m = -INFINITY;
        for (std::size_t k : cut) m = std::max(m, x[k]);
        t = std::min(t, m);
    }
    return t;
}

StructureFunction series_system(std::size_t n) {
    std::vector<std::vector<std::size_t>> cuts;
    for (std::size_t i = 0; i < n; ++i) cuts.push_back({i});
    return StructureFunction(n, std::move(cuts));
}

StructureFunction parallel_system(std::size_t n) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    return StructureFunction(n, {all});
}

namespace {

std::shared_ptr<const InclusionExclusion> system_events(const StructureFunction& psi) {
    std::vector<std::vector<std::uint32_t>> events;
    for (const auto& cut : psi.cuts()) {
        std::vector<std::uint32_t> e(psi.n_components(), 0u);
        for (std::size_t k : cut) e[k] = 1u;
        events.push_back(std::move(e));
    }
    return std::make_shared<const InclusionExclusion>(psi.n_components(), 1, std::move(events));
}

std::shared_ptr<const InclusionExclusion> pair_events(const StructureFunction& psi,
                                                      const StructureFunction& psi_star) {
    if (psi.n_components() != psi_star.n_components()) {
        throw std::invalid_argument("coherent pair: systems must share their components");
    }
    const std::size_t s = psi.cuts().size(), s_star = psi_star.cuts().size();
    if (s * s_star > InclusionExclusion::kMaxEvents) {
        throw std::invalid_argument("coherent pair: " + std::to_string(s) + " x " +
                                    std::to_string(s_star) + " cut-set pairs exceed the limit of " +
                                    std::to_string(InclusionExclusion::kMaxEvents));
    }
    std::vector<std::vector<std::uint32_t>> events;
    for (const auto& ci : psi.cuts()) {
        for (const auto& cj : psi_star.cuts()) {
            std::vector<std::uint32_t> e(psi.n_components(), 0u);
            for (std::size_t k : ci) e[k] |= 1u;
            for (std::size_t k : cj) e[k] |= 2u;
            events.push_back(std::move(e));
        }
    }
    return std::make_shared<const InclusionExclusion>(psi.n_components(), 2, std::move(events));
}

}  // namespace

double system_distortion(const StructureFunction& psi, const Copula& c, double u) {
    if (c.dim() != psi.n_components()) throw std::invalid_argument("system_distortion: copula dimension");
    const std::array<double, 1> lv{u};
    return system_events(psi)->probability(c, lv);
}

double coherent_pair_distortion(const StructureFunction& psi, const StructureFunction& psi_star,
                                const Copula& c, double u, double v) {
    if (c.dim() != psi.n_components()) throw std::invalid_argument("coherent pair: copula dimension");
    const std::array<double, 2> lv{u, v};
    return pair_events(psi, psi_star)->probability(c, lv);
}

Distortion coherent_pair(const StructureFunction& psi, const StructureFunction& psi_star,
                         const Copula& c) {
    if (c.dim() != psi.n_components()) throw std::invalid_argument("coherent pair: copula dimension");
    auto table = pair_events(psi, psi_star);
    return Distortion(
               2, [table, c](std::span<const double> u) { return table->probability(c, u); },
               Provenance::CoherentPair,
               "coherent(" + psi.to_json() + ";" + psi_star.to_json() + ";" + c.to_string() + ")")
        .with_partial([table, c](std::size_t k, std::span<const double> u) {
            return table->partial(c, u, k);
        });
}

double coherent_pair_survival_example(const SurvivalCopula& c_hat, double u, double v) {
    if (c_hat.dim() != 3) throw std::invalid_argument("coherent_pair_survival_example needs dimension 3");
    if (!(v <= u)) throw std::invalid_argument("coherent_pair_survival_example: requires v <= u");
    const std::array<double, 3> a{u, v, v}, b{v, u, u}, d{v, v, v};
    return c_hat(a) + c_hat(b) - c_hat(d);
}

}  // namespace mdd
