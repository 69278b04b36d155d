#include "report.hpp"

#include <chrono>
#include <random>
#include <sstream>

#include "../core/errors.hpp"
#include "../groebner/groebner.hpp"
#include "../ident/ident.hpp"
#include "../sim/sim.hpp"
#include "../transfer/transfer.hpp"

namespace sgikit::report {

const char* version() { return "1.0.0"; }

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

model::InputSignal parse_signal(const std::string& word) {
    if (word == "impulse") return model::InputSignal::impulse();
    if (word == "step") return model::InputSignal::step();
    if (word == "ramp") return model::InputSignal::ramp();
    if (word == "none") return model::InputSignal::none();
    if (word.rfind("exponential:", 0) == 0)
        return model::InputSignal::exponential(
            rat_from_string(word.substr(std::string("exponential:").size())));
    throw InvalidArgument("unknown input signal '" + word + "'");
}

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

json ratfun_json(const transfer::RatFun& f) {
    json j;
    j["num"] = f.num.to_string();
    j["den"] = f.den.to_string();
    j["cancelled_degree"] = f.cancelled_degree;
    j["fully_cancelled"] = f.fully_cancelled;
    return j;
}

json structure_json(const model::StructureSpec& spec) {
    json j;
    j["name"] = spec.name;
    j["states"] = spec.n;
    j["inputs"] = spec.m;
    j["outputs"] = spec.k;
    j["parameter_count"] = spec.p();
    j["params"] = spec.params->names();
    j["class"] = model::to_string(spec.clazz);
    return j;
}

json compartmental_json(const model::StructureSpec& spec) {
    json j;
    auto violations = model::check_compartmental(spec);
    j["consistent"] = violations.empty();
    j["violations"] = json::array();
    for (const auto& v : violations)
        j["violations"].push_back({{"where", v.where},
                                   {"detail", v.detail},
                                   {"definite", v.definite}});
    return j;
}

json transfer_json(const transfer::TransferData& td) {
    json j;
    j["char_poly"] = td.char_poly.to_string();
    j["V"] = json::array();
    for (const auto& f : td.V) j["V"].push_back(ratfun_json(f));
    j["W"] = json::array();
    for (const auto& row : td.W) {
        json r = json::array();
        for (const auto& f : row) r.push_back(ratfun_json(f));
        j["W"].push_back(r);
    }
    j["not_generically_minimal"] = td.not_generically_minimal;
    return j;
}

json invariants_json(const transfer::InvariantVector& inv) {
    json j;
    j["entries"] = json::array();
    for (const auto& e : inv.entries)
        j["entries"].push_back({{"label", e.label}, {"poly", e.poly.to_string()}});
    j["dropped_constants"] = inv.dropped_constants;
    return j;
}

json verdict_json(const ident::Verdict& v) {
    json j;
    j["classification"] = ident::to_string(v.classification);
    j["label"] = v.label();
    j["input_restricted"] = v.input_restricted;
    j["ideal_dimension"] = v.dimension;
    if (v.degree_finite)
        j["solution_degree"] = v.degree;
    else
        j["solution_degree"] = "infinite";
    j["globally_identifiable"] = v.globally_identifiable;
    j["jacobian_rank"] = v.jacobian_rank;
    j["seeds"] = v.seeds;
    j["warnings"] = v.warnings;
    return j;
}

json solution_json(const ident::Solution& s) {
    json j;
    json vals = json::object();
    for (const auto& [name, val] : s.values) vals[name] = rat_to_string(val);
    j["values"] = vals;
    j["rational"] = s.rational;
    if (!s.intervals.empty()) {
        json iv = json::object();
        for (const auto& [name, pr] : s.intervals)
            iv[name] = {rat_to_string(pr.first), rat_to_string(pr.second)};
        j["isolating_intervals"] = iv;
    }
    j["feasible"] = s.feasible;
    if (!s.note.empty()) j["note"] = s.note;
    return j;
}

uint64_t resolve_seed(const Options& opts, bool& entropy) {
    entropy = opts.seed == 0;
    if (!entropy) return opts.seed;
    std::random_device rd;
    uint64_t s = (static_cast<uint64_t>(rd()) << 32) | rd();
    if (s == 0) s = 1;
    return s;
}

json header(const model::StructureSpec& spec, const model::InputSet& input) {
    json j;
    j["tool"] = {{"name", "sgikit"}, {"version", version()}};
    j["structure"] = structure_json(spec);
    j["input_set"] = input.describe();
    return j;
}

} // namespace

model::InputSet resolve_input_set(const model::StructureSpec& spec,
                                  const std::string& inputs) {
    model::InputSet set;
    if (inputs == "full")
        set = spec.m == 0 ? model::InputSet::uncontrolled() : model::InputSet::full();
    else if (inputs == "uncontrolled")
        set = model::InputSet::uncontrolled();
    else if (inputs == "none")
        set = spec.m == 0 ? model::InputSet::uncontrolled()
                          : model::InputSet::restricted({model::InputSignal::none()});
    else {
        std::vector<model::InputSignal> sigs;
        for (const auto& word : split(inputs, ','))
            sigs.push_back(parse_signal(word));
        set = model::InputSet::restricted(std::move(sigs));
    }
    model::validate_input_set(spec, set);
    return set;
}

MonomialOrder parse_order_spec(const Ring& ring, const std::string& spec) {
    std::string kind_word = spec;
    std::string names_part;
    if (auto colon = spec.find(':'); colon != std::string::npos) {
        kind_word = spec.substr(0, colon);
        names_part = spec.substr(colon + 1);
    }
    OrderKind kind;
    if (kind_word == "lex") kind = OrderKind::lex;
    else if (kind_word == "grlex") kind = OrderKind::grlex;
    else if (kind_word == "grevlex") kind = OrderKind::grevlex;
    else throw InvalidArgument("unknown order kind '" + kind_word + "'");

    std::vector<int> priority;
    if (names_part.empty()) {
        for (int i = 0; i < ring.size(); ++i) priority.push_back(i);
    } else {
        std::vector<bool> seen(ring.size(), false);
        for (const auto& n : split(names_part, ',')) {
            int i = ring.index(n);
            if (i < 0) throw InvalidArgument("unknown variable in order spec: " + n);
            if (seen[i]) throw InvalidArgument("variable repeated in order spec: " + n);
            seen[i] = true;
            priority.push_back(i);
        }
        if (static_cast<int>(priority.size()) != ring.size())
            throw InvalidArgument("order spec must name every ring variable exactly once");
    }
    return MonomialOrder(kind, std::move(priority));
}

json invariants_report(const model::StructureSpec& spec, const Options& opts) {
    model::InputSet input = resolve_input_set(spec, opts.inputs);
    transfer::TransferData td = transfer::derive_transfer(spec);
    transfer::InvariantVector inv = transfer::extract_invariants(td, input);

    json j = header(spec, input);
    j["transfer"] = transfer_json(td);
    j["invariants"] = invariants_json(inv);
    return j;
}

json analyze(const model::StructureSpec& spec, const Options& opts) {
    Clock::time_point t0 = Clock::now();
    json timings = json::object();

    model::InputSet input = resolve_input_set(spec, opts.inputs);
    bool entropy = false;
    uint64_t seed = resolve_seed(opts, entropy);
    groebner::Config gcfg{opts.step_budget};

    json j = header(spec, input);
    j["seed"] = {{"requested", opts.seed}, {"used", seed}, {"entropy", entropy}};
    j["compartmental_check"] = compartmental_json(spec);
    j["nondegenerate_start"] =
        model::check_nondegenerate_start(spec, input, 3, seed);
    timings["validate_ms"] = ms_since(t0);

    Clock::time_point t1 = Clock::now();
    transfer::TransferData td = transfer::derive_transfer(spec);
    transfer::InvariantVector inv = transfer::extract_invariants(td, input);
    j["transfer"] = transfer_json(td);
    j["invariants"] = invariants_json(inv);
    timings["transfer_ms"] = ms_since(t1);

    Clock::time_point t2 = Clock::now();
    ident::Verdict verdict = ident::classify(inv, spec, input, seed, gcfg);
    j["verdict"] = verdict_json(verdict);
    timings["classify_ms"] = ms_since(t2);

    if (verdict.dimension == 0 && verdict.degree_finite &&
        verdict.degree <= opts.degree_bound) {
        Clock::time_point t3 = Clock::now();
        ident::TestSystem ts = ident::build_test_system(inv, spec, seed);
        std::vector<ident::Solution> sols =
            ident::enumerate_solutions(ts, opts.degree_bound, gcfg);
        json specialization = json::object();
        for (int i = 0; i < spec.p(); ++i)
            specialization[spec.params->name(i)] = rat_to_string(ts.specialization[i]);
        j["solutions"] = {{"specialization", specialization},
                          {"list", json::array()}};
        long feasible = 0;
        for (const auto& s : sols) {
            j["solutions"]["list"].push_back(solution_json(s));
            if (s.feasible) ++feasible;
        }
        j["solutions"]["feasible_count"] = feasible;
        timings["enumerate_ms"] = ms_since(t3);

        if (opts.validate) {
            Clock::time_point t4 = Clock::now();
            std::map<std::string, Rat> theta_star;
            for (int i = 0; i < spec.p(); ++i)
                theta_star[spec.params->name(i)] = ts.specialization[i];
            std::vector<std::map<std::string, Rat>> candidates;
            for (const auto& s : sols)
                if (s.rational &&
                    static_cast<int>(s.values.size()) == spec.p())
                    candidates.push_back(s.values);
            sim::SimConfig cfg;
            cfg.t_grid = sim::SimConfig::default_grid(opts.sim_t_end, opts.sim_points);
            auto verdicts = sim::cross_validate(spec, theta_star, candidates,
                                                input, cfg);
            json sims = json::array();
            for (size_t i = 0; i < verdicts.size(); ++i) {
                json vals = json::object();
                for (const auto& [name, val] : candidates[i])
                    vals[name] = rat_to_string(val);
                sims.push_back({{"candidate", vals},
                                {"coincides", verdicts[i].coincides},
                                {"max_rel_deviation", verdicts[i].max_rel_deviation}});
            }
            j["simulation"] = sims;
            timings["simulate_ms"] = ms_since(t4);
        }
    }

    if (opts.timings) {
        timings["total_ms"] = ms_since(t0);
        j["timings_ms"] = timings;
    }
    return j;
}

json groebner_report(const model::StructureSpec& spec, const Options& opts) {
    model::InputSet input = resolve_input_set(spec, opts.inputs);
    transfer::TransferData td = transfer::derive_transfer(spec);
    transfer::InvariantVector inv = transfer::extract_invariants(td, input);
    if (inv.entries.empty())
        throw DegenerateError("structure has no informative output: "
                              "empty invariant vector");

    std::vector<MultiPoly> gens;
    for (const auto& e : inv.entries) gens.push_back(e.poly.promoted(spec.params));

    groebner::Config gcfg{opts.step_budget};
    MonomialOrder primary = opts.order.empty()
                                ? MonomialOrder::grevlex_for(*spec.params)
                                : parse_order_spec(*spec.params, opts.order);
    groebner::Ideal ideal = groebner::buchberger(gens, primary, gcfg);
    groebner::IdealAnalysis ia = groebner::dimension_and_degree(ideal);

    json j = header(spec, input);
    j["invariants"] = invariants_json(inv);

    auto basis_json = [&](const groebner::Ideal& id, const MonomialOrder& ord) {
        json b;
        b["order"] = ord.describe(*spec.params);
        b["reduced_basis"] = json::array();
        for (const auto& g : id.reduced_basis())
            b["reduced_basis"].push_back(g.to_string());
        return b;
    };
    j["basis"] = basis_json(ideal, primary);
    j["dimension"] = ia.dimension;
    // The reduced basis states the ideal with the fewest conditions: its size
    // is how many independent conditions the invariants impose.
    j["independent_conditions"] = ideal.reduced_basis().size();

    if (!opts.compare_order.empty()) {
        MonomialOrder other = parse_order_spec(*spec.params, opts.compare_order);
        groebner::Ideal ideal2 = groebner::buchberger(gens, other, gcfg);
        json cmp = basis_json(ideal2, other);
        cmp["same_ideal"] = groebner::ideal_equal(ideal, ideal2);
        // Elements held in common, compared after monic normalization under a
        // fixed order so presentation differences do not matter.
        MonomialOrder norm = MonomialOrder::grevlex_for(*spec.params);
        json common = json::array();
        for (const auto& g : ideal.reduced_basis()) {
            MultiPoly gn = g.monic(norm);
            for (const auto& h : ideal2.reduced_basis())
                if (gn == h.monic(norm)) {
                    common.push_back(gn.to_string());
                    break;
                }
        }
        cmp["common_elements"] = common;
        j["compare"] = cmp;
    }
    return j;
}

std::string simulate_csv(const model::StructureSpec& spec, const Options& opts) {
    if (opts.theta.empty())
        throw InvalidArgument("simulate needs --theta name=value,... covering "
                              "every parameter");
    std::map<std::string, Rat> theta;
    for (const auto& item : split(opts.theta, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw InvalidArgument("bad theta item '" + item + "' (want name=value)");
        std::string name = item.substr(0, eq);
        if (!spec.params->contains(name))
            throw InvalidArgument("theta names undeclared parameter '" + name + "'");
        theta[name] = rat_from_string(item.substr(eq + 1));
    }
    for (const auto& name : spec.params->names())
        if (!theta.count(name))
            throw InvalidArgument("theta missing parameter '" + name + "'");

    sim::SimConfig cfg;
    cfg.t_grid = sim::SimConfig::default_grid(opts.sim_t_end, opts.sim_points);
    cfg.input = parse_signal(opts.sim_input);
    return sim::trajectory_csv(sim::simulate(spec, theta, cfg));
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

} // namespace sgikit::report
