// Command-line front-end. Uses only the public C API of the shared library;
// the JSON reports it prints or post-processes come back as strings.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sgikit/sgikit.h"

namespace {

using json = nlohmann::json;

int exit_code(sgikit_status st) {
    switch (st) {
        case SGIKIT_OK: return 0;
        case SGIKIT_PARSE_ERROR: return 2;
        case SGIKIT_RESOURCE_ERROR: return 3;
        case SGIKIT_DEGENERATE: return 4;
        default: return 1;
    }
}

struct Owned {
    char* s = nullptr;
    ~Owned() { sgikit_string_free(s); }
};

struct ModelHandle {
    sgikit_model* m = nullptr;
    ~ModelHandle() { sgikit_model_free(m); }
};

struct OptionsHandle {
    sgikit_options* o = sgikit_options_new();
    ~OptionsHandle() { sgikit_options_free(o); }

    bool set(const std::string& key, const std::string& value) {
        sgikit_status st = sgikit_options_set(o, key.c_str(), value.c_str());
        if (st != SGIKIT_OK) {
            std::cerr << "error: " << sgikit_last_error() << "\n";
            return false;
        }
        return true;
    }
};

int fail(sgikit_status st) {
    std::cerr << "error: " << sgikit_last_error() << "\n";
    return exit_code(st);
}

bool write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
    if (!out) {
        std::cerr << "error: cannot write " << path << "\n";
        return false;
    }
    return true;
}

std::string join(const std::vector<std::string>& items, const char* sep) {
    std::string s;
    for (size_t i = 0; i < items.size(); ++i) {
        if (i) s += sep;
        s += items[i];
    }
    return s;
}

// Shared per-subcommand state.
struct Args {
    std::string file;
    std::string inputs = "full";
    std::string seed = "1";
    std::string order;
    std::string compare_order;
    std::string json_path;
    bool validate = false;
    bool timings = false;
    // simulate:
    std::string theta;
    std::string sim_input = "impulse";
    std::string t_end = "10";
    std::string points = "201";
    std::string output;
};

int load_and_configure(const Args& a, ModelHandle& model, OptionsHandle& opts) {
    sgikit_status st = sgikit_model_parse_file(a.file.c_str(), &model.m);
    if (st != SGIKIT_OK) return fail(st);

    if (!opts.set("inputs", a.inputs) || !opts.set("seed", a.seed)) return 1;
    if (!a.order.empty() && !opts.set("order", a.order)) return 1;
    if (!a.compare_order.empty() && !opts.set("compare_order", a.compare_order))
        return 1;
    if (a.validate && !opts.set("validate", "1")) return 1;
    if (a.timings && !opts.set("timings", "1")) return 1;
    if (const char* budget = std::getenv("SGIKIT_STEP_BUDGET"))
        if (*budget && !opts.set("step_budget", budget)) return 1;
    return -1; // continue
}

int emit_json(const Args& a, const std::string& text) {
    if (a.json_path == "-") {
        std::cout << text;
    } else if (!a.json_path.empty()) {
        if (!write_file(a.json_path, text)) return 1;
    }
    return 0;
}

int run_analyze(const Args& a) {
    ModelHandle model;
    OptionsHandle opts;
    if (int rc = load_and_configure(a, model, opts); rc >= 0) return rc;

    Owned out;
    sgikit_status st = sgikit_analyze(model.m, opts.o, &out.s);
    if (st != SGIKIT_OK) return fail(st);

    json report = json::parse(out.s);
    const json& v = report["verdict"];
    std::string line = report["structure"]["name"].get<std::string>() + " is " +
                       v["label"].get<std::string>();
    if (v["ideal_dimension"].get<int>() == 0 && v["solution_degree"].is_number())
        line += " (degree " + std::to_string(v["solution_degree"].get<long>()) + ")";
    else
        line += " (dimension " + std::to_string(v["ideal_dimension"].get<int>()) + ")";
    std::vector<std::string> gi = v["globally_identifiable"];
    line += gi.empty() ? "; no parameter is globally identifiable"
                       : "; globally identifiable: " + join(gi, ", ");
    std::cout << line << "\n";

    if (!report["compartmental_check"]["consistent"].get<bool>())
        std::cout << "warning: conservation-of-mass check found "
                  << report["compartmental_check"]["violations"].size()
                  << " violation(s)\n";
    if (!report["nondegenerate_start"].get<bool>())
        std::cout << "warning: structure may start at an equilibrium "
                     "(degenerate output)\n";
    for (const auto& w : v["warnings"])
        std::cout << "warning: " << w.get<std::string>() << "\n";
    if (report.contains("solutions"))
        std::cout << "solutions at the specialization: "
                  << report["solutions"]["list"].size() << " (feasible: "
                  << report["solutions"]["feasible_count"].get<long>() << ")\n";
    if (report.contains("simulation"))
        for (const auto& s : report["simulation"])
            std::cout << "simulation: candidate "
                      << (s["coincides"].get<bool>() ? "coincides" : "deviates")
                      << " (max relative deviation "
                      << s["max_rel_deviation"].get<double>() << ")\n";
    return emit_json(a, out.s);
}

int run_invariants(const Args& a) {
    ModelHandle model;
    OptionsHandle opts;
    if (int rc = load_and_configure(a, model, opts); rc >= 0) return rc;

    Owned out;
    sgikit_status st = sgikit_invariants(model.m, opts.o, &out.s);
    if (st != SGIKIT_OK) return fail(st);

    json report = json::parse(out.s);
    const json& inv = report["invariants"];
    std::cout << report["structure"]["name"].get<std::string>() << " ("
              << report["input_set"].get<std::string>() << "): "
              << inv["entries"].size() << " invariants\n";
    for (const auto& e : inv["entries"])
        std::cout << "  " << e["label"].get<std::string>() << ": "
                  << e["poly"].get<std::string>() << "\n";
    for (const auto& d : inv["dropped_constants"])
        std::cout << "  (dropped parameter-free coefficient " << d.get<std::string>()
                  << ")\n";
    return emit_json(a, out.s);
}

int run_groebner(const Args& a) {
    ModelHandle model;
    OptionsHandle opts;
    if (int rc = load_and_configure(a, model, opts); rc >= 0) return rc;

    Owned out;
    sgikit_status st = sgikit_groebner(model.m, opts.o, &out.s);
    if (st != SGIKIT_OK) return fail(st);

    json report = json::parse(out.s);
    auto print_basis = [](const json& b) {
        std::cout << "order " << b["order"].get<std::string>() << ":\n";
        for (const auto& g : b["reduced_basis"])
            std::cout << "  " << g.get<std::string>() << "\n";
    };
    print_basis(report["basis"]);
    std::cout << "dimension " << report["dimension"].get<int>()
              << "; independent conditions "
              << report["independent_conditions"].get<int>() << "\n";
    if (report.contains("compare")) {
        const json& cmp = report["compare"];
        print_basis(cmp);
        std::cout << (cmp["same_ideal"].get<bool>() ? "same ideal"
                                                    : "different ideals")
                  << "; " << cmp["common_elements"].size()
                  << " elements in common\n";
    }
    return emit_json(a, out.s);
}

int run_simulate(const Args& a) {
    ModelHandle model;
    OptionsHandle opts;
    if (int rc = load_and_configure(a, model, opts); rc >= 0) return rc;
    if (!opts.set("theta", a.theta) || !opts.set("sim_input", a.sim_input) ||
        !opts.set("sim_t_end", a.t_end) || !opts.set("sim_points", a.points))
        return 1;

    Owned out;
    sgikit_status st = sgikit_simulate(model.m, opts.o, &out.s);
    if (st != SGIKIT_OK) return fail(st);

    if (a.output.empty() || a.output == "-") std::cout << out.s;
    else if (!write_file(a.output, out.s)) return 1;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Structural identifiability analysis of LTI model structures"};
    app.set_version_flag("--version", std::string(sgikit_version()));
    app.require_subcommand(1);

    Args a;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("file", a.file, "model file")->required();
        cmd->add_option("--inputs", a.inputs,
                        "input set: full|uncontrolled|none|impulse|step|ramp|"
                        "exponential:<rate> (comma-separated for several)");
        cmd->add_option("--seed", a.seed, "specialization seed (0 = entropy)");
        cmd->add_option("--json", a.json_path, "write the JSON report here ('-' = stdout)");
        cmd->add_flag("--timings", a.timings, "include wall-clock timings in the report");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "classify a structure as SGI/SLI/SU");
    add_common(analyze);
    analyze->add_option("--order", a.order, "Groebner order spec, e.g. lex:k21,k32,...");
    analyze->add_flag("--validate", a.validate,
                      "numerically cross-validate enumerated solutions");

    CLI::App* invariants = app.add_subcommand("invariants", "print the labeled invariant list");
    add_common(invariants);

    CLI::App* groebner = app.add_subcommand(
        "groebner", "Groebner basis of the invariant ideal under chosen orders");
    add_common(groebner);
    groebner->add_option("--order", a.order, "order spec, e.g. lex:k21,k32,...");
    groebner->add_option("--compare-order", a.compare_order,
                         "second order spec; prints ideal-equality verdict");

    CLI::App* simulate = app.add_subcommand("simulate", "numeric output trajectory (CSV)");
    simulate->add_option("file", a.file, "model file")->required();
    simulate->add_option("--theta", a.theta, "name=value,... exact rationals")->required();
    simulate->add_option("--input", a.sim_input,
                         "input signal: impulse|step|ramp|exponential:<rate>|none");
    simulate->add_option("--t-end", a.t_end, "simulation horizon");
    simulate->add_option("--points", a.points, "grid size");
    simulate->add_option("-o,--output", a.output, "CSV destination (default stdout)");

    CLI11_PARSE(app, argc, argv);

    if (analyze->parsed()) return run_analyze(a);
    if (invariants->parsed()) return run_invariants(a);
    if (groebner->parsed()) return run_groebner(a);
    if (simulate->parsed()) return run_simulate(a);
    return 1;
}
