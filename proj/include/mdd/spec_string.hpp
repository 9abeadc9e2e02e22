#ifndef MDD_SPEC_STRING_HPP
#define MDD_SPEC_STRING_HPP

#include <map>
#include <string>
#include <string_view>

namespace mdd {

// "name:key=value,key=value". The separator between pairs is configurable
// because coherent-system specs use ';' (their values contain commas).
struct SpecString {
    std::string name;
    std::map<std::string, std::string> params;

    static SpecString parse(std::string_view text, char pair_sep = ',');

    bool has(const std::string& key) const { return params.count(key) != 0; }
    const std::string& get(const std::string& key) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key) const;

    // Throws SpecError naming the first key not in `allowed`.
    void expect_only(std::initializer_list<std::string_view> allowed) const;
};

double parse_double(std::string_view text, std::string_view what);

// Shortest decimal that round-trips the double.
std::string format_double(double x);

}  // namespace mdd

#endif
