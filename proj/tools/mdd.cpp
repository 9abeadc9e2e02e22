// mdd: command-line front end. Every command builds a model from spec strings
// and hands the numeric work to the library.
#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "mdd/checks.hpp"
#include "mdd/config.hpp"
#include "mdd/errors.hpp"
#include "mdd/oracle.hpp"
#include "mdd/regression.hpp"

namespace {

using namespace mdd;

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::string csv() const {
        std::string out;
        for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
        out += "\n";
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + num(r[i]);
            out += "\n";
        }
        return out;
    }
};

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw SpecError("cannot write '" + path + "'");
    f << text;
}

// CSV to the output path (or stdout) plus a JSON manifest next to it.
void emit_table(const RunConfig& cfg, const Table& t) {
    write_text(cfg.output, t.csv());
    if (cfg.output.empty() || cfg.output == "-") return;
    nlohmann::ordered_json m;
    m["command"] = cfg.command;
    m["seed"] = cfg.seed;
    m["rows"] = t.rows.size();
    m["columns"] = t.columns;
    m["config"] = nlohmann::ordered_json::parse(cfg.to_json());
    write_text(cfg.output + ".json", m.dump(2) + "\n");
}

Table from_sample(const Sample& s, std::vector<std::string> columns) {
    Table t{std::move(columns), {}};
    for (std::size_t i = 0; i < s.size(); ++i) {
        auto r = s.row(i);
        t.rows.emplace_back(r.begin(), r.end());
    }
    return t;
}

int cmd_validate(const RunConfig& cfg) {
    const BuiltModel b = build_model(cfg);
    const ValidationReport r = validate(b.function(), cfg.grid, cfg.boxes, cfg.seed);
    write_text(cfg.output, r.to_json() + "\n");
    if (!r.pass) std::cerr << "validation failed for " << b.function().name() << "\n";
    return r.pass ? 0 : 1;
}

int cmd_sample(const RunConfig& cfg) {
    const BuiltModel b = build_model(cfg);
    const UnivariateDist g = UnivariateDist::parse(cfg.marginal);
    const Copula& c = b.copula;
    if (b.kind == "ordered-pair") {
        emit_table(cfg, from_sample(oracle::sort_rows(oracle::sample_mdd_pairs(c, g, cfg.n, cfg.seed)),
                                    {"x", "y"}));
    } else if (b.kind == "coherent") {
        emit_table(cfg, from_sample(oracle::sample_system_pair(*b.psi, *b.psi_star, c, g, cfg.n, cfg.seed),
                                    {"t", "t_star"}));
    } else if (b.kind == "residual") {
        const Sample s = oracle::sample_residuals(*b.residual, cfg.n, cfg.seed);
        std::vector<std::string> cols;
        for (std::size_t i = 0; i < s.dim; ++i) cols.push_back("x" + std::to_string(i + 1));
        emit_table(cfg, from_sample(s, cols));
    } else if (b.kind == "copula" || b.kind == "order-stats-3") {
        Sample s = oracle::sample_copula(c, cfg.n, cfg.seed);
        for (double& v : s.values) v = g.quantile(v);
        if (b.kind == "order-stats-3") s = oracle::sort_rows(s);
        std::vector<std::string> cols;
        if (s.dim == 2) cols = {"x", "y"};
        else
            for (std::size_t i = 0; i < s.dim; ++i) cols.push_back("x" + std::to_string(i + 1));
        emit_table(cfg, from_sample(s, cols));
    } else {
        throw SpecError("cannot sample from a " + b.kind + " construction");
    }
    return 0;
}

MddModel bivariate_model(const RunConfig& cfg) {
    const MddModel m = build_model(cfg).model();
    if (m.dim() != 2) throw SpecError(cfg.command + " needs a bivariate construction");
    return m;
}

int cmd_regress(const RunConfig& cfg) {
    const MddModel m = bivariate_model(cfg);
    Table t{{"x", "mean", "median"}, {}};
    for (double x : x_grid(cfg, m.baselines()[0])) {
        const ConditionalLaw law(m, x);
        t.rows.push_back({x, mean_regression(law), law.median_regression()});
    }
    emit_table(cfg, t);
    return 0;
}

int cmd_band(const RunConfig& cfg) {
    const MddModel m = bivariate_model(cfg);
    const std::vector<double> xs = x_grid(cfg, m.baselines()[0]);
    const QuantileBand band = quantile_band(m, xs, {{0.05, 0.95}, {0.25, 0.75}});
    Table t{{"x", "median", "q05", "q25", "q75", "q95", "mean"}, {}};
    for (std::size_t i = 0; i < xs.size(); ++i) {
        t.rows.push_back({xs[i], band.median[i], band.lower[0][i], band.lower[1][i], band.upper[1][i],
                          band.upper[0][i], mean_regression(ConditionalLaw(m, xs[i]))});
    }
    emit_table(cfg, t);
    return 0;
}

int cmd_contour(const RunConfig& cfg) {
    const MddModel m = bivariate_model(cfg);
    if (!m.distortion().has_density()) {
        throw SpecError("construction " + m.distortion().name() + " has no density");
    }
    const std::vector<double> xs = x_grid(cfg, m.baselines()[0]);
    Table t{{"x", "y", "pdf"}, {}};
    for (double x : xs)
        for (double y : xs) t.rows.push_back({x, y, m.joint_pdf(std::vector<double>{x, y})});
    emit_table(cfg, t);
    return 0;
}

int cmd_marginal_pdf(const RunConfig& cfg) {
    const BuiltModel b = build_model(cfg);
    const MddModel m = bivariate_model(cfg);
    Table t{{"x", b.kind == "ordered-pair" ? "pdf_L" : "pdf_1", b.kind == "ordered-pair" ? "pdf_U" : "pdf_2"},
            {}};
    for (double x : x_grid(cfg, m.baselines()[0])) {
        t.rows.push_back({x, marginal_pdf(m, 0, x), marginal_pdf(m, 1, x)});
    }
    emit_table(cfg, t);
    return 0;
}

int cmd_compare(const RunConfig& cfg) {
    if (cfg.compare_with.empty()) throw SpecError("compare needs --with <construction>");
    const BuiltModel a = build_model(cfg, cfg.construction);
    const BuiltModel b = build_model(cfg, cfg.compare_with);
    OrderReport r;
    if (a.dual && b.dual) {
        r = compare_upper_orthant(*a.dual, *b.dual, cfg.grid);
    } else if (a.distortion && b.distortion) {
        r = compare_lower_orthant(*a.distortion, *b.distortion, cfg.grid);
    } else {
        throw SpecError("compare needs two distortions or two dual distortions");
    }
    write_text(cfg.output, r.to_json() + "\n");
    return 0;
}

int cmd_report(const RunConfig& cfg, bool list_only) {
    if (list_only) {
        for (const auto& i : checks::list()) std::cout << i.id << " " << i.name << ": " << i.description << "\n";
        return 0;
    }
    checks::Options o;
    o.seed = cfg.seed;
    o.n = cfg.n;
    o.perturb = cfg.perturb;
    const auto results = checks::run_all(o);
    bool all = true;
    for (const auto& r : results) {
        std::cout << checks::summary_line(r) << "\n";
        for (const auto& note : r.notes) std::cout << "    " << note << "\n";
        all = all && r.pass;
    }
    if (!cfg.output.empty()) write_text(cfg.output, checks::to_json(results, o) + "\n");
    return all ? 0 : 1;
}

struct Flags {
    std::string config, copula, marginal, construction, distortion, with, output;
    std::size_t grid = 0, boxes = 0, n = 0, x_points = 0;
    std::uint64_t seed = 0;
    double x_min = 0, x_max = 0, perturb = 0;
    bool list = false;
};

void add_model_flags(CLI::App* sub, Flags& f) {
    sub->add_option("--config", f.config, "JSON config file; flags override it");
    sub->add_option("--copula", f.copula, "copula spec, e.g. clayton1 or fgm:n=3,theta=-0.5");
    sub->add_option("--marginal", f.marginal, "baseline spec, e.g. exp:mean=60");
    sub->add_option("--construction", f.construction,
                    "copula | ordered-pair | order-stats-3 | residual:t=..,cond=.. | coherent:cuts=..;cuts_star=..");
    sub->add_option("--distortion", f.distortion, "built-in distortion (mean-aggregation)");
    sub->add_option("--seed", f.seed, "random seed (default 42)");
    sub->add_option("-o,--output", f.output, "output path (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multivariate distorted distributions: build, validate, sample and summarise models"};
    app.require_subcommand(1);
    Flags f;

    auto* validate_cmd = app.add_subcommand("validate", "check the distortion axioms of a construction");
    add_model_flags(validate_cmd, f);
    validate_cmd->add_option("--grid", f.grid, "grid points per axis for groundedness (default 21)");
    validate_cmd->add_option("--boxes", f.boxes, "random boxes for n-increasingness (default 2000)");

    auto* sample_cmd = app.add_subcommand("sample", "draw a Monte Carlo sample as CSV");
    add_model_flags(sample_cmd, f);
    sample_cmd->add_option("-n,--n", f.n, "sample size (default 100000)");

    std::vector<CLI::App*> curve_cmds;
    curve_cmds.push_back(app.add_subcommand("regress", "mean and median regression curves"));
    curve_cmds.push_back(app.add_subcommand("band", "median curve with 50% and 90% quantile bands"));
    curve_cmds.push_back(app.add_subcommand("contour", "joint density on an x-y grid"));
    curve_cmds.push_back(app.add_subcommand("marginal-pdf", "marginal densities of both coordinates"));
    for (auto* sub : curve_cmds) {
        add_model_flags(sub, f);
        sub->add_option("--x-min", f.x_min, "grid start");
        sub->add_option("--x-max", f.x_max, "grid end");
        sub->add_option("--x-points", f.x_points, "grid size (default 41 over the 1%-99% quantiles)");
    }

    auto* compare_cmd = app.add_subcommand("compare", "orthant-order verdict between two constructions");
    add_model_flags(compare_cmd, f);
    compare_cmd->add_option("--with", f.with, "the second construction");
    compare_cmd->add_option("--grid", f.grid, "grid points per axis (default 21)");

    auto* report_cmd = app.add_subcommand("report", "run the acceptance checks");
    report_cmd->add_option("--seed", f.seed, "random seed (default 42)");
    report_cmd->add_option("-n,--n", f.n, "Monte Carlo sample size (default 100000)");
    report_cmd->add_option("--perturb", f.perturb, "add this to every constructed distortion");
    report_cmd->add_flag("--list", f.list, "list the checks without running them");
    report_cmd->add_option("-o,--output", f.output, "JSON summary path");
    report_cmd->add_option("--config", f.config, "JSON config file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        RunConfig cfg;
        if (!f.config.empty()) {
            std::ifstream in(f.config);
            if (!in) throw SpecError("cannot read config '" + f.config + "'");
            std::stringstream ss;
            ss << in.rdbuf();
            cfg = RunConfig::from_json(ss.str());
        }
        cfg.command = sub->get_name();
        auto given = [sub](const char* name) {
            try {
                return sub->get_option(name)->count() > 0;
            } catch (const CLI::OptionNotFound&) {
                return false;
            }
        };
        if (given("--copula")) cfg.copula = f.copula;
        if (given("--marginal")) cfg.marginal = f.marginal;
        if (given("--construction")) cfg.construction = f.construction;
        if (given("--distortion")) cfg.distortion = f.distortion;
        if (given("--with")) cfg.compare_with = f.with;
        if (given("--grid")) cfg.grid = f.grid;
        if (given("--boxes")) cfg.boxes = f.boxes;
        if (given("--seed")) cfg.seed = f.seed;
        if (given("--n")) cfg.n = f.n;
        if (given("--x-min")) cfg.x_min = f.x_min;
        if (given("--x-max")) cfg.x_max = f.x_max;
        if (given("--x-points")) cfg.x_points = f.x_points;
        if (given("--perturb")) cfg.perturb = f.perturb;
        if (given("--output")) cfg.output = f.output;

        const std::string& c = cfg.command;
        if (c == "validate") return cmd_validate(cfg);
        if (c == "sample") return cmd_sample(cfg);
        if (c == "regress") return cmd_regress(cfg);
        if (c == "band") return cmd_band(cfg);
        if (c == "contour") return cmd_contour(cfg);
        if (c == "marginal-pdf") return cmd_marginal_pdf(cfg);
        if (c == "compare") return cmd_compare(cfg);
        if (c == "report") return cmd_report(cfg, f.list);
        throw SpecError("unknown command '" + c + "'");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
