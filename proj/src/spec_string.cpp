#include "mdd/spec_string.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "mdd/errors.hpp"

namespace mdd {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

}  // namespace

SpecString SpecString::parse(std::string_view text, char pair_sep) {
    SpecString out;
    text = trim(text);
    const auto colon = text.find(':');
    out.name = std::string(trim(text.substr(0, colon)));
    if (out.name.empty()) throw SpecError("empty spec name in '" + std::string(text) + "'");
    if (colon == std::string_view::npos) return out;

    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
        const auto sep = rest.find(pair_sep);
        std::string_view item = trim(rest.substr(0, sep));
        rest = sep == std::string_view::npos ? std::string_view{} : rest.substr(sep + 1);
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) {
            throw SpecError("expected key=value in '" + std::string(item) + "'");
        }
        std::string key(trim(item.substr(0, eq)));
        std::string value(trim(item.substr(eq + 1)));
        if (key.empty()) throw SpecError("empty key in '" + std::string(item) + "'");
        if (!out.params.emplace(key, value).second) {
            throw SpecError("duplicate key '" + key + "'");
        }
    }
    return out;
}

const std::string& SpecString::get(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end()) throw SpecError("missing parameter '" + key + "' in '" + name + "'");
    return it->second;
}

double SpecString::get_double(const std::string& key) const { return parse_double(get(key), key); }

double SpecString::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

int SpecString::get_int(const std::string& key) const {
    const std::string& s = get(key);
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw SpecError("parameter '" + key + "' is not an integer: '" + s + "'");
    }
    return v;
}

void SpecString::expect_only(std::initializer_list<std::string_view> allowed) const {
    for (const auto& [k, v] : params) {
        bool ok = false;
        for (auto a : allowed) ok = ok || a == k;
        if (!ok) throw SpecError("unknown parameter '" + k + "' for '" + name + "'");
    }
}

double parse_double(std::string_view text, std::string_view what) {
    text = trim(text);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
        throw SpecError("parameter '" + std::string(what) + "' is not a finite number: '" +
                        std::string(text) + "'");
    }
    return v;
}

std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, ptr);
}

}  // namespace mdd
