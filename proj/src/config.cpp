#include "mdd/config.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "mdd/errors.hpp"
#include "mdd/spec_string.hpp"

namespace mdd {

std::string RunConfig::to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["copula"] = copula;
    j["marginal"] = marginal;
    j["construction"] = construction;
    j["distortion"] = distortion;
    j["compare_with"] = compare_with;
    j["grid"] = grid;
    j["boxes"] = boxes;
    j["seed"] = seed;
    j["n"] = n;
    j["x_min"] = x_min ? nlohmann::ordered_json(*x_min) : nlohmann::ordered_json(nullptr);
    j["x_max"] = x_max ? nlohmann::ordered_json(*x_max) : nlohmann::ordered_json(nullptr);
    j["x_points"] = x_points;
    j["perturb"] = perturb;
    j["output"] = output;
    return j.dump(2);
}

RunConfig RunConfig::from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw SpecError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw SpecError("config: expected a JSON object");
    RunConfig c;
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "command") c.command = value.get<std::string>();
            else if (key == "copula") c.copula = value.get<std::string>();
            else if (key == "marginal") c.marginal = value.get<std::string>();
            else if (key == "construction") c.construction = value.get<std::string>();
            else if (key == "distortion") c.distortion = value.get<std::string>();
            else if (key == "compare_with") c.compare_with = value.get<std::string>();
            else if (key == "grid") c.grid = value.get<std::size_t>();
            else if (key == "boxes") c.boxes = value.get<std::size_t>();
            else if (key == "seed") c.seed = value.get<std::uint64_t>();
            else if (key == "n") c.n = value.get<std::size_t>();
            else if (key == "x_min") c.x_min = value.is_null() ? std::nullopt : std::optional(value.get<double>());
            else if (key == "x_max") c.x_max = value.is_null() ? std::nullopt : std::optional(value.get<double>());
            else if (key == "x_points") c.x_points = value.get<std::size_t>();
            else if (key == "perturb") c.perturb = value.get<double>();
            else if (key == "output") c.output = value.get<std::string>();
            else throw SpecError("config: unknown key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw SpecError(std::string("config: ") + e.what());
    }
    return c;
}

const Distortion& BuiltModel::function() const {
    if (distortion) return *distortion;
    return dual->as_distortion();
}

MddModel BuiltModel::model() const {
    if (!distortion) throw SpecError(kind + " construction has no distribution-function model");
    return MddModel(*distortion, baselines);
}

namespace {

std::vector<std::size_t> parse_indices(const std::string& text, std::size_t n) {
    std::vector<std::size_t> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto plus = text.find('+', start);
        const std::string item = text.substr(start, plus == std::string::npos ? std::string::npos : plus - start);
        const double v = parse_double(item, "component index");
        if (v != std::floor(v) || v < 1 || v > static_cast<double>(n)) {
            throw SpecError("component index '" + item + "' out of range 1.." + std::to_string(n));
        }
        out.push_back(static_cast<std::size_t>(v) - 1);
        if (plus == std::string::npos) break;
        start = plus + 1;
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

BuiltModel build_model(const RunConfig& cfg, const std::string& construction) {
    const Copula c = Copula::parse(cfg.copula);
    const UnivariateDist g = UnivariateDist::parse(cfg.marginal);
    BuiltModel b{"", std::nullopt, std::nullopt, {}, c, std::nullopt, std::nullopt, std::nullopt};

    if (!cfg.distortion.empty()) {
        const SpecString s = SpecString::parse(cfg.distortion);
        if (s.name != "mean-aggregation") throw SpecError("unknown distortion '" + s.name + "'");
        s.expect_only({"n"});
        const int n = s.has("n") ? s.get_int("n") : static_cast<int>(c.dim());
        if (n < 1 || n > 16) throw SpecError("mean-aggregation dimension out of range");
        b.kind = "mean-aggregation";
        b.distortion = mean_aggregation(static_cast<std::size_t>(n));
        b.baselines.assign(static_cast<std::size_t>(n), g);
        return b;
    }

    try {
        if (construction == "copula") {
            b.kind = "copula";
            b.distortion = from_copula(c);
            b.baselines.assign(c.dim(), g);
            return b;
        }
        if (construction == "ordered-pair") {
            if (c.dim() != 2) throw SpecError("ordered-pair needs a bivariate copula");
            b.kind = "ordered-pair";
            b.distortion = ordered_pair_distortion(c);
            b.baselines.assign(2, g);
            return b;
        }
        if (construction == "order-stats-3") {
            if (c.dim() != 3) throw SpecError("order-stats-3 needs a trivariate copula");
            b.kind = "order-stats-3";
            b.distortion = order_stats_3(c);
            b.baselines.assign(3, g);
            return b;
        }
        if (construction.starts_with("residual")) {
            const SpecString s = SpecString::parse(construction);
            s.expect_only({"t", "cond", "keep", "failed", "hat"});
            ResidualSpec spec{s.has("hat") && s.get_int("hat") != 0 ? SurvivalCopula::given(c)
                                                                    : survival_copula(c),
                              std::vector<UnivariateDist>(c.dim(), g), s.get_double("t", 0.0),
                              ResidualConditioning::AllAlive, {}, 0};
            const std::string cond = s.has("cond") ? s.get("cond") : "all";
            if (cond == "all") spec.conditioning = ResidualConditioning::AllAlive;
            else if (cond == "last-failed") spec.conditioning = ResidualConditioning::LastFailedByT;
            else if (cond == "subset") spec.conditioning = ResidualConditioning::SubsetAlive;
            else throw SpecError("unknown residual conditioning '" + cond + "'");
            if (s.has("keep")) spec.keep = parse_indices(s.get("keep"), c.dim());
            spec.failed = s.has("failed") ? parse_indices(s.get("failed"), c.dim()).at(0) : c.dim() - 1;
            if (spec.conditioning == ResidualConditioning::LastFailedByT && spec.keep.empty()) {
                for (std::size_t i = 0; i < c.dim(); ++i)
                    if (i != spec.failed) spec.keep.push_back(i);
            }
            b.kind = "residual";
            b.dual = residual_dual_for(spec);
            b.residual = spec;
            return b;
        }
        if (construction.starts_with("coherent")) {
            const SpecString s = SpecString::parse(construction, ';');
            s.expect_only({"cuts", "cuts_star"});
            b.psi = StructureFunction::from_cuts_text(s.get("cuts"), c.dim());
            b.psi_star = StructureFunction::from_cuts_text(s.get("cuts_star"), c.dim());
            b.kind = "coherent";
            b.distortion = coherent_pair(*b.psi, *b.psi_star, c);
            b.baselines.assign(2, g);
            return b;
        }
    } catch (const SpecError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw SpecError(e.what());
    }
    throw SpecError("unknown construction '" + construction + "'");
}

std::vector<double> x_grid(const RunConfig& cfg, const UnivariateDist& g) {
    const std::size_t n = cfg.x_points == 0 ? 41 : cfg.x_points;
    const double lo = cfg.x_min.value_or(g.quantile(0.01));
    const double hi = cfg.x_max.value_or(g.quantile(0.99));
    if (hi < lo) throw SpecError("x range is empty: x_max < x_min");
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return xs;
}

}  // namespace mdd
