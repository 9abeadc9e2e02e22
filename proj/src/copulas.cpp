#include "mdd/copulas.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "mdd/errors.hpp"
#include "mdd/spec_string.hpp"

namespace mdd {

namespace {

constexpr double kSnap = 1e-14;
constexpr std::size_t kMaxDim = 16;

// Small fixed-capacity buffer for snapped coordinates.
struct Point {
    std::array<double, kMaxDim> v{};
    std::size_t n = 0;

    double operator[](std::size_t i) const { return v[i]; }
    std::span<const double> span() const { return {v.data(), n}; }
};

Point snapped(std::span<const double> u, std::size_t dim) {
    if (u.size() != dim) {
        throw std::invalid_argument("copula: expected " + std::to_string(dim) +
                                    " coordinates, got " + std::to_string(u.size()));
    }
    Point p;
    p.n = dim;
    for (std::size_t i = 0; i < dim; ++i) p.v[i] = snap_unit(u[i]);
    return p;
}

void require_interior(const Point& p, const char* what) {
    for (std::size_t i = 0; i < p.n; ++i) {
        if (!(p[i] > 0.0 && p[i] < 1.0)) {
            throw std::domain_error(std::string(what) + ": boundary input rejected");
        }
    }
}

double product_except(const Point& p, std::size_t k) {
    double r = 1.0;
    for (std::size_t i = 0; i < p.n; ++i)
        if (i != k) r *= p[i];
    return r;
}

double one_minus_product_except(const Point& p, std::size_t k) {
    double r = 1.0;
    for (std::size_t i = 0; i < p.n; ++i)
        if (i != k) r *= 1.0 - p[i];
    return r;
}

void check_dim(std::size_t n) {
    if (n < 2 || n > kMaxDim) {
        throw SpecError("copula dimension must be in [2," + std::to_string(kMaxDim) + "], got " +
                        std::to_string(n));
    }
}

}  // namespace

double snap_unit(double u) {
    if (u >= 0.0 && u <= 1.0) return u;
    if (u < 0.0 && u >= -kSnap) return 0.0;
    if (u > 1.0 && u <= 1.0 + kSnap) return 1.0;
    throw std::domain_error("copula argument " + format_double(u) + " outside [0,1]");
}

Copula Copula::independence(std::size_t n) {
    check_dim(n);
    return Copula(CopulaFamily::Independence, n, 0.0);
}

Copula Copula::fgm(std::size_t n, double theta) {
    if (n != 2 && n != 3) throw SpecError("fgm dimension must be 2 or 3");
    if (!(theta >= -1.0 && theta <= 1.0)) throw SpecError("theta out of [-1,1]");
    return Copula(CopulaFamily::Fgm, n, theta);
}

Copula Copula::clayton1() { return Copula(CopulaFamily::Clayton1, 2, 1.0); }

Copula Copula::comonotone(std::size_t n) {
    check_dim(n);
    return Copula(CopulaFamily::Comonotone, n, 0.0);
}

Copula reflect(const Copula& c) {
    Copula r(CopulaFamily::Reflected, c.dim(), 0.0);
    r.base_ = std::make_shared<const Copula>(c);
    return r;
}

Copula Copula::parse(std::string_view text) {
    if (text.starts_with("survival(") && text.ends_with(")")) {
        return survival_copula(parse(text.substr(9, text.size() - 10))).copula;
    }
    const SpecString s = SpecString::parse(text);
    if (s.name == "indep" || s.name == "independence") {
        s.expect_only({"n"});
        return independence(s.has("n") ? static_cast<std::size_t>(s.get_int("n")) : 2);
    }
    if (s.name == "fgm") {
        s.expect_only({"n", "theta"});
        const int n = s.has("n") ? s.get_int("n") : 2;
        if (n != 2 && n != 3) throw SpecError("fgm dimension must be 2 or 3");
        return fgm(static_cast<std::size_t>(n), s.get_double("theta"));
    }
    if (s.name == "clayton1") {
        s.expect_only({});
        return clayton1();
    }
    if (s.name == "min" || s.name == "comonotone") {
        s.expect_only({"n"});
        return comonotone(s.has("n") ? static_cast<std::size_t>(s.get_int("n")) : 2);
    }
    throw SpecError("unknown copula family '" + s.name + "'");
}

std::string Copula::to_string() const {
    switch (family_) {
        case CopulaFamily::Independence: return "indep:n=" + std::to_string(dim_);
        case CopulaFamily::Fgm:
            return "fgm:n=" + std::to_string(dim_) + ",theta=" + format_double(theta_);
        case CopulaFamily::Clayton1: return "clayton1";
        case CopulaFamily::Comonotone: return "min:n=" + std::to_string(dim_);
        case CopulaFamily::Reflected: return "survival(" + base_->to_string() + ")";
    }
    return {};
}

const Copula& Copula::base() const {
    if (!base_) throw std::logic_error("copula has no base: not a reflected copula");
    return *base_;
}

bool Copula::has_density() const {
    switch (family_) {
        case CopulaFamily::Comonotone: return false;
        case CopulaFamily::Reflected: return base_->has_density();
        default: return true;
    }
}

double Copula::cdf(std::span<const double> uin) const {
    const Point u = snapped(uin, dim_);
    switch (family_) {
        case CopulaFamily::Independence: {
            double r = 1.0;
            for (std::size_t i = 0; i < dim_; ++i) r *= u[i];
            return r;
        }
        case CopulaFamily::Fgm: {
            double prod = 1.0, perturb = 1.0;
            for (std::size_t i = 0; i < dim_; ++i) {
                prod *= u[i];
                perturb *= 1.0 - u[i];
            }
            return prod * (1.0 + theta_ * perturb);
        }
        case CopulaFamily::Clayton1: {
            const double den = u[0] + u[1] - u[0] * u[1];
            return den > 0.0 ? u[0] * u[1] / den : 0.0;
        }
        case CopulaFamily::Comonotone: return *std::min_element(u.v.begin(), u.v.begin() + dim_);
        case CopulaFamily::Reflected: {
            // C-hat(u) = sum_S (-1)^|S| C(z_S), z_i = 1 - u_i on S and 1 off S.
            double total = 0.0;
            Point z;
            z.n = dim_;
            for (std::size_t mask = 0; mask < (std::size_t{1} << dim_); ++mask) {
                int bits = 0;
                for (std::size_t i = 0; i < dim_; ++i) {
                    const bool in = (mask >> i) & 1u;
                    z.v[i] = in ? 1.0 - u[i] : 1.0;
                    bits += in;
                }
                const double term = base_->cdf(z.span());
                total += (bits % 2 == 0) ? term : -term;
            }
            return std::clamp(total, 0.0, 1.0);
        }
    }
    return 0.0;
}

double Copula::density(std::span<const double> uin) const {
    const Point u = snapped(uin, dim_);
    switch (family_) {
        case CopulaFamily::Independence: return 1.0;
        case CopulaFamily::Fgm: {
            double perturb = 1.0;
            for (std::size_t i = 0; i < dim_; ++i) perturb *= 1.0 - 2.0 * u[i];
            return 1.0 + theta_ * perturb;
        }
        case CopulaFamily::Clayton1: {
            require_interior(u, "clayton1 density");
            const double den = u[0] + u[1] - u[0] * u[1];
            return 2.0 * u[0] * u[1] / (den * den * den);
        }
        case CopulaFamily::Comonotone:
            throw std::logic_error("comonotone copula is singular: no density");
        case CopulaFamily::Reflected: {
            Point z = u;
            for (std::size_t i = 0; i < dim_; ++i) z.v[i] = 1.0 - u[i];
            return base_->density(z.span());
        }
    }
    return 0.0;
}

double Copula::partial(std::size_t k, std::span<const double> uin) const {
    const Point u = snapped(uin, dim_);
    if (k >= dim_) throw std::out_of_range("copula partial: coordinate out of range");
    switch (family_) {
        case CopulaFamily::Independence: return product_except(u, k);
        case CopulaFamily::Fgm:
            return product_except(u, k) *
                   (1.0 + theta_ * (1.0 - 2.0 * u[k]) * one_minus_product_except(u, k));
        case CopulaFamily::Clayton1: {
            const double den = u[0] + u[1] - u[0] * u[1];
            // 0/0 at the origin; take the limit along the diagonal, 1/(2-u)^2
            if (!(den > 0.0)) return 0.25;
            const double other = u[1 - k];
            return other * other / (den * den);
        }
        case CopulaFamily::Comonotone: {
            for (std::size_t i = 0; i < dim_; ++i)
                if (i != k && u[i] < u[k]) return 0.0;
            return 1.0;
        }
        case CopulaFamily::Reflected: {
            // d/du_k of sum_S (-1)^|S| C(z_S): only sets containing k depend on u_k.
            double total = 0.0;
            Point z;
            z.n = dim_;
            for (std::size_t mask = 0; mask < (std::size_t{1} << dim_); ++mask) {
                if (!((mask >> k) & 1u)) continue;
                int bits = 0;
                for (std::size_t i = 0; i < dim_; ++i) {
                    const bool in = (mask >> i) & 1u;
                    z.v[i] = in ? 1.0 - u[i] : 1.0;
                    bits += in;
                }
                const double term = base_->partial(k, z.span());
                total += (bits % 2 == 0) ? -term : term;
            }
            return total;
        }
    }
    return 0.0;
}

double Copula::conditional_cdf(double v, double given_u) const {
    if (dim_ != 2) throw std::invalid_argument("conditional_cdf requires a bivariate copula");
    const std::array<double, 2> p{given_u, v};
    return std::clamp(partial(0, p), 0.0, 1.0);
}

double Copula::conditional_quantile(double q, double given_u) const {
    if (dim_ != 2) throw std::invalid_argument("conditional_quantile requires a bivariate copula");
    if (!(q > 0.0 && q < 1.0)) {
        throw std::domain_error("conditional_quantile: q=" + format_double(q) + " outside (0,1)");
    }
    if (!(given_u > 0.0 && given_u < 1.0)) {
        throw std::domain_error("conditional_quantile: u=" + format_double(given_u) +
                                " outside (0,1)");
    }
    const double u = given_u;
    switch (family_) {
        case CopulaFamily::Independence: return q;
        case CopulaFamily::Fgm: {
            // Root in [0,1] of a v^2 - (1 + a) v + q = 0, a = theta (1 - 2u),
            // written to stay exact as a -> 0.
            const double a = theta_ * (1.0 - 2.0 * u);
            const double b = 1.0 + a;
            const double disc = std::max(0.0, b * b - 4.0 * a * q);
            return std::clamp(2.0 * q / (b + std::sqrt(disc)), 0.0, 1.0);
        }
        case CopulaFamily::Clayton1: return u / (u - 1.0 + 1.0 / std::sqrt(q));
        case CopulaFamily::Comonotone: return u;
        case CopulaFamily::Reflected:
            return 1.0 - base_->conditional_quantile(1.0 - q, 1.0 - u);
    }
    return q;
}

SurvivalCopula survival_copula(const Copula& c) {
    switch (c.family()) {
        case CopulaFamily::Independence:
        case CopulaFamily::Comonotone: return SurvivalCopula{c};
        case CopulaFamily::Fgm:
            return SurvivalCopula{c.dim() == 2 ? c : Copula::fgm(3, -c.theta())};
        case CopulaFamily::Reflected: return SurvivalCopula{c.base()};
        case CopulaFamily::Clayton1: break;
    }
    return SurvivalCopula{reflect(c)};
}

}  // namespace mdd
