#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "lorentz/scenario.hpp"

namespace {

struct GlobalOpts {
    double tol_scale = 1.0;
    std::optional<std::uint64_t> seed;
    std::string format = "text";
    std::string out_path;
};

void apply_overrides(lorentz::json& config, const GlobalOpts& g) {
    if (g.seed) config["seed"] = *g.seed;
    if (g.tol_scale != 1.0) config["tolerance_scale"] = g.tol_scale;
}

void write_output(const std::string& text, const GlobalOpts& g) {
    if (g.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(g.out_path);
    if (!out) {
        std::cerr << "cannot open output file " << g.out_path << "\n";
        std::exit(2);
    }
    out << text;
}

int run_suites(const std::vector<std::string>& names, const GlobalOpts& g) {
    bool all_pass = true;
    std::string text;
    for (const std::string& name : names) {
        lorentz::json config = lorentz::builtin_scenario(name);
        apply_overrides(config, g);
        lorentz::Report rep = lorentz::run_scenario_json(config);
        all_pass = all_pass && rep.all_pass;
        text += lorentz::emit_report(rep, g.format);
        if (g.format == "text") text += "\n";
    }
    write_output(text, g);
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"lorentz-verify: numerical verification of conformal-field and "
                 "hypersurface-curvature identities on Lorentz models"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--tol", g.tol_scale, "scale factor applied to default check tolerances");
    std::uint64_t seed_opt = 0;
    auto* seed_flag = app.add_option("--seed", seed_opt, "override the scenario seed");
    app.add_option("--format", g.format, "output format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("--out", g.out_path, "write the report to a file instead of stdout");

    auto* ambient = app.add_subcommand("verify-ambient", "ambient model suites");
    auto* conformal = app.add_subcommand("verify-conformal", "conformal certificate suites");
    auto* curvature = app.add_subcommand("curvature", "hypersurface curvature suites");
    auto* flow = app.add_subcommand("flow", "flow construction suites");
    auto* stability = app.add_subcommand("stability", "variational stability suite");
    auto* run = app.add_subcommand("run", "run a scenario configuration file");
    std::string scenario_path;
    run->add_option("path", scenario_path, "scenario JSON file")->required();
    auto* list = app.add_subcommand("list", "list built-in models, fields, suites and checks");
    for (auto* sub : {ambient, conformal, curvature, flow, stability, run, list})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (seed_flag->count() > 0) g.seed = seed_opt;

    try {
        if (ambient->parsed())
            return run_suites({"minkowski-flat-suite", "desitter-ambient-suite",
                               "antidesitter-ambient-suite", "desitter-hyperbolic-suite",
                               "hyperquadric-suite", "antidesitter-hyperquadric-suite"},
                              g);
        if (conformal->parsed())
            return run_suites({"conformal-suite", "desitter-hyperbolic-suite"}, g);
        if (curvature->parsed()) return run_suites({"curvature-suite"}, g);
        if (flow->parsed())
            return run_suites({"simons-great-circle", "simons-ads-suite", "simons-cone-suite"}, g);
        if (stability->parsed()) return run_suites({"stability-suite"}, g);
        if (run->parsed()) {
            lorentz::json config;
            {
                std::ifstream in(scenario_path);
                if (!in) {
                    std::cerr << "ConfigParse: cannot open " << scenario_path << "\n";
                    return 2;
                }
                try {
                    in >> config;
                } catch (const std::exception& e) {
                    std::cerr << "ConfigParse: " << e.what() << "\n";
                    return 2;
                }
            }
            apply_overrides(config, g);
            lorentz::Report rep = lorentz::run_scenario_json(config);
            write_output(lorentz::emit_report(rep, g.format), g);
            return rep.all_pass ? 0 : 1;
        }
        if (list->parsed()) {
            lorentz::Catalog cat = lorentz::list_builtins();
            auto dump = [](const char* title, const std::vector<lorentz::CatalogEntry>& items) {
                std::string out = std::string(title) + ":\n";
                for (const auto& e : items) out += "  " + e.name + " - " + e.description + "\n";
                return out;
            };
            std::string text;
            text += dump("models", cat.models);
            text += dump("fields", cat.fields);
            text += dump("immersions", cat.immersions);
            text += dump("flow bases", cat.bases);
            text += dump("suites", cat.suites);
            text += dump("checks (operation exercised)", cat.checks);
            write_output(text, g);
            return 0;
        }
    } catch (const lorentz::Error& e) {
        switch (e.code()) {
        case lorentz::ErrorCode::ConfigParse:
        case lorentz::ErrorCode::UnknownCheck:
        case lorentz::ErrorCode::UnresolvedReference:
        case lorentz::ErrorCode::UnsupportedFormat:
            std::cerr << e.what() << "\n";
            return 2;
        default:
            std::cerr << e.what() << "\n";
            return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 2;
}
