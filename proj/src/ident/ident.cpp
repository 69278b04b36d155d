#include "ident.hpp"

#include <algorithm>

#include "../core/errors.hpp"
#include "uniroot.hpp"

namespace sgikit::ident {

namespace {

RingPtr primed_ring(const RingPtr& params) {
    std::vector<std::string> names;
    for (const auto& n : params->names()) names.push_back(n + "'");
    return make_ring(std::move(names));
}

std::vector<Rat> draw_specialization(const model::StructureSpec& spec,
                                     std::mt19937_64& rng) {
    std::vector<Rat> theta;
    for (int i = 0; i < spec.p(); ++i) theta.push_back(random_positive_rat(rng));
    return theta;
}

} // namespace

std::string to_string(Classification c) {
    switch (c) {
        case Classification::SGI: return "SGI";
        case Classification::SLI: return "SLI";
        case Classification::SU: return "SU";
    }
    return "?";
}

std::string Verdict::label() const {
    return (input_restricted ? "U-" : "") + to_string(classification);
}

namespace {

// Fill in ts.equations for a fixed specialization; false if some equation
// collapses to zero.
bool instantiate(TestSystem& ts, const transfer::InvariantVector& inv) {
    ts.equations.clear();
    for (const auto& e : inv.entries) {
        MultiPoly lhs = e.poly.promoted(ts.params).renamed(ts.primed);
        Rat rhs = e.poly.promoted(ts.params).eval(ts.specialization);
        MultiPoly eq = lhs - MultiPoly::constant(ts.primed, rhs);
        if (eq.is_zero()) return false;
        ts.equations.push_back(std::move(eq));
    }
    return true;
}

TestSystem new_test_system(const transfer::InvariantVector& inv,
                           const model::StructureSpec& spec) {
    if (inv.entries.empty())
        throw DegenerateError("structure has no informative output: "
                              "empty invariant vector");
    TestSystem ts;
    ts.params = spec.params;
    ts.primed = primed_ring(spec.params);
    for (const auto& name : spec.params->names())
        ts.positive.push_back(spec.param_positive(name));
    return ts;
}

} // namespace

TestSystem build_test_system(const transfer::InvariantVector& inv,
                             const model::StructureSpec& spec, uint64_t seed) {
    TestSystem ts = new_test_system(inv, spec);
    ts.seed = seed;
    for (int attempt = 0; attempt < 5; ++attempt) {
        std::mt19937_64 rng(seed + static_cast<uint64_t>(attempt) * 0x9e3779b97f4a7c15ull);
        ts.specialization = draw_specialization(spec, rng);
        if (instantiate(ts, inv)) return ts;
    }
    throw DegenerateError("specialization degenerates for every retried seed");
}

TestSystem build_test_system(const transfer::InvariantVector& inv,
                             const model::StructureSpec& spec,
                             const std::vector<Rat>& specialization) {
    TestSystem ts = new_test_system(inv, spec);
    if (static_cast<int>(specialization.size()) != spec.p())
        throw InvalidArgument("specialization must cover every parameter");
    ts.specialization = specialization;
    if (!instantiate(ts, inv))
        throw DegenerateError("specialization collapses a test equation");
    return ts;
}

int jacobian_rank_test(const transfer::InvariantVector& inv,
                       const model::StructureSpec& spec, int trials,
                       uint64_t seed) {
    if (spec.p() < 1) throw InvalidArgument("structure has no parameters");
    int p = spec.p();
    std::vector<std::vector<MultiPoly>> jac;
    for (const auto& e : inv.entries) {
        MultiPoly poly = e.poly.promoted(spec.params);
        std::vector<MultiPoly> row;
        for (int j = 0; j < p; ++j) row.push_back(poly.derivative(j));
        jac.push_back(std::move(row));
    }

    std::mt19937_64 rng(seed);
    int best = 0;
    for (int t = 0; t < std::max(trials, 1); ++t) {
        std::vector<Rat> theta = draw_specialization(spec, rng);
        std::vector<std::vector<Rat>> m;
        for (const auto& row : jac) {
            std::vector<Rat> r;
            for (const auto& d : row) r.push_back(d.eval(theta));
            m.push_back(std::move(r));
        }
        // Exact Gaussian elimination over the rationals.
        int rank = 0;
        size_t rows = m.size();
        for (int col = 0; col < p && rank < static_cast<int>(rows); ++col) {
            size_t pivot = rows;
            for (size_t r = rank; r < rows; ++r)
                if (sgn(m[r][col]) != 0) {
                    pivot = r;
                    break;
                }
            if (pivot == rows) continue;
            std::swap(m[rank], m[pivot]);
            for (size_t r = rank + 1; r < rows; ++r) {
                if (sgn(m[r][col]) == 0) continue;
                Rat f = m[r][col] / m[rank][col];
                for (int c2 = col; c2 < p; ++c2) m[r][c2] -= f * m[rank][c2];
            }
            ++rank;
        }
        best = std::max(best, rank);
        if (best == std::min(p, static_cast<int>(rows))) break;
    }
    return best;
}

SystemAnalysis classify_system(const TestSystem& ts, const MonomialOrder& order,
                               const groebner::Config& cfg) {
    groebner::Ideal ideal = groebner::buchberger(ts.equations, order, cfg);
    groebner::IdealAnalysis ia = groebner::dimension_and_degree(ideal);

    SystemAnalysis out;
    out.dimension = ia.dimension;
    out.degree_finite = ia.degree_finite;
    out.degree = ia.degree;
    for (int i = 0; i < ts.primed->size(); ++i) {
        MultiPoly probe = MultiPoly::variable(ts.primed, i) -
                          MultiPoly::constant(ts.primed, ts.specialization[i]);
        if (groebner::normal_form(probe, ideal).is_zero())
            out.forced_params.push_back(ts.params->name(i));
    }
    return out;
}

namespace {

Classification classify_from(const SystemAnalysis& a) {
    if (a.dimension >= 1) return Classification::SU;
    if (a.dimension == -1) return Classification::SGI; // empty variety: trivial only after retry
    if (a.degree_finite && a.degree == 1) return Classification::SGI;
    return Classification::SLI;
}

// "Weaker" = more admissible solutions.
bool weaker(const SystemAnalysis& a, const SystemAnalysis& b) {
    if (a.dimension != b.dimension) return a.dimension > b.dimension;
    if (a.degree_finite && b.degree_finite) return a.degree > b.degree;
    return !a.degree_finite;
}

} // namespace

Verdict classify(const transfer::InvariantVector& inv,
                 const model::StructureSpec& spec, const model::InputSet& input,
                 uint64_t seed, const groebner::Config& cfg) {
    Verdict v;
    v.input_restricted = input.mode == model::InputSet::Mode::restricted;
    v.seeds = {seed, seed + 1};

    TestSystem ts1 = build_test_system(inv, spec, seed);
    TestSystem ts2 = build_test_system(inv, spec, seed + 1);
    MonomialOrder order = MonomialOrder::grevlex_for(*ts1.primed);
    SystemAnalysis a1 = classify_system(ts1, order, cfg);
    SystemAnalysis a2 = classify_system(ts2, order, cfg);

    const SystemAnalysis* chosen = &a1;
    if (a1.dimension != a2.dimension || a1.degree != a2.degree ||
        a1.degree_finite != a2.degree_finite) {
        v.warnings.push_back(
            "specializations disagree (seed " + std::to_string(seed) + ": dim " +
            std::to_string(a1.dimension) + ", seed " + std::to_string(seed + 1) +
            ": dim " + std::to_string(a2.dimension) +
            "); reporting the weaker classification");
        chosen = weaker(a1, a2) ? &a1 : &a2;
    }
    if (a1.forced_params != a2.forced_params)
        v.warnings.push_back("per-parameter identifiability differs between seeds; "
                             "reporting the intersection");

    v.dimension = chosen->dimension;
    v.degree_finite = chosen->degree_finite;
    v.degree = chosen->degree;
    v.classification = classify_from(*chosen);
    std::set_intersection(a1.forced_params.begin(), a1.forced_params.end(),
                          a2.forced_params.begin(), a2.forced_params.end(),
                          std::back_inserter(v.globally_identifiable));
    v.jacobian_rank = jacobian_rank_test(inv, spec, 3, seed);

    // Consistency cross-check (full Jacobian rank must match dimension 0).
    bool rank_full = v.jacobian_rank == spec.p();
    if (rank_full != (v.dimension == 0))
        v.warnings.push_back("Jacobian rank and ideal dimension disagree");
    return v;
}

namespace {

struct Enumerator {
    const TestSystem& ts;
    const std::vector<MultiPoly>& basis;
    std::vector<Solution> out;

    void run() { recurse({}); }

    void recurse(std::map<int, Rat> assigned) {
        int n = ts.primed->size();
        if (static_cast<int>(assigned.size()) == n) {
            finish(assigned);
            return;
        }
        // Substitute what we know; look for a univariate polynomial in one
        // unassigned variable (lex bases of 0-dimensional ideals are
        // triangular enough for this to exist).
        int best_var = -1, best_deg = -1;
        std::vector<Rat> best_coeffs;
        for (const auto& g : basis) {
            MultiPoly r = g.substitute(assigned);
            if (r.is_zero()) continue;
            if (r.is_constant()) return; // inconsistent branch
            int var = -1;
            bool univar = true;
            for (const auto& [m, c] : r.terms())
                for (const auto& [vi, e] : m.exponents()) {
                    if (var == -1) var = vi;
                    else if (var != vi) univar = false;
                }
            if (!univar || var < 0) continue;
            int deg = r.degree_in(var);
            if (best_var == -1 || deg < best_deg) {
                best_var = var;
                best_deg = deg;
                best_coeffs.clear();
                for (const auto& c : r.coeffs_in(var))
                    best_coeffs.push_back(c.constant_value());
            }
        }
        if (best_var == -1) {
            Solution s = partial(assigned);
            s.note = "no univariate polynomial available; solution set not "
                     "triangular over the rationals here";
            out.push_back(std::move(s));
            return;
        }
        for (const auto& root : real_roots(best_coeffs)) {
            if (root.rational) {
                auto next = assigned;
                next[best_var] = root.value;
                recurse(std::move(next));
            } else {
                Solution s = partial(assigned);
                s.rational = false;
                s.intervals[ts.params->name(best_var)] = {root.lo, root.hi};
                s.note = "irrational coordinate isolated; remaining variables "
                         "not enumerated";
                s.feasible = false;
                out.push_back(std::move(s));
            }
        }
    }

    Solution partial(const std::map<int, Rat>& assigned) {
        Solution s;
        for (const auto& [v, val] : assigned) s.values[ts.params->name(v)] = val;
        return s;
    }

    void finish(const std::map<int, Rat>& assigned) {
        // Reject spurious branches: every basis element must vanish.
        for (const auto& g : basis)
            if (!g.substitute(assigned).is_zero()) return;
        Solution s = partial(assigned);
        s.rational = true;
        s.feasible = true;
        for (const auto& [v, val] : assigned) {
            const std::string& name = ts.params->name(v);
            bool positive_domain = ts.positive.empty() || ts.positive[v];
            if (positive_domain && sgn(val) <= 0) {
                s.feasible = false;
                s.note = name + "' = " + rat_to_string(val) +
                         " outside the open positive domain";
            }
        }
        out.push_back(std::move(s));
    }
};

} // namespace

std::vector<Solution> enumerate_solutions(const TestSystem& ts, long degree_bound,
                                          const groebner::Config& cfg) {
    MonomialOrder lex = MonomialOrder::lex_for(*ts.primed);
    groebner::Ideal ideal = groebner::buchberger(ts.equations, lex, cfg);
    groebner::IdealAnalysis ia = groebner::dimension_and_degree(ideal);
    if (ia.dimension != 0)
        throw InvalidArgument("enumerate_solutions requires a zero-dimensional system "
                              "(dimension " + std::to_string(ia.dimension) + ")");
    if (ia.degree > degree_bound)
        throw ResourceError("solution degree " + std::to_string(ia.degree) +
                            " exceeds the bound " + std::to_string(degree_bound));

    Enumerator e{ts, ideal.reduced_basis(), {}};
    e.run();
    return e.out;
}

} // namespace sgikit::ident
