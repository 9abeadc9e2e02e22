#ifndef MDD_MARGINALS_HPP
#define MDD_MARGINALS_HPP

#include <string>
#include <string_view>
#include <variant>

namespace mdd {

struct Exponential {
    double mean;
};

struct Normal {
    double mu;
    double sd;
};

struct Uniform {
    double lo;
    double hi;
};

// Continuous univariate law used as a baseline G_i or a common marginal F.
// Immutable; every member is pure and safe to call from any thread.
class UnivariateDist {
public:
    using Family = std::variant<Exponential, Normal, Uniform>;

    static UnivariateDist exponential(double mean);
    static UnivariateDist normal(double mu, double sd);
    static UnivariateDist uniform(double lo, double hi);

    // "exp:mean=60", "normal:mu=60,sd=5", "uniform:lo=0,hi=1"
    static UnivariateDist parse(std::string_view spec);
    std::string to_string() const;

    double cdf(double x) const;
    double survival(double x) const;
    double pdf(double x) const;

    // p in [0,1]. The endpoints map to the support bounds when those are
    // finite and are rejected otherwise.
    double quantile(double p) const;

    // Pr(X - t > x | X > t); throws ConditioningError when survival(t) == 0.
    double residual_survival(double t, double x) const;

    double support_lower() const;
    double support_upper() const;
    double mean() const;

    const Family& family() const { return family_; }

    friend bool operator==(const UnivariateDist& a, const UnivariateDist& b);

private:
    explicit UnivariateDist(Family f) : family_(f) {}
    Family family_;
};

bool operator==(const UnivariateDist& a, const UnivariateDist& b);

// Standard normal helpers, exposed for tests.
double std_normal_cdf(double z);
double std_normal_quantile(double p);

}  // namespace mdd

#endif
