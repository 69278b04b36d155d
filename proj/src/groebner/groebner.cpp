#include "groebner.hpp"

#include <algorithm>
#include <set>

#include "../core/errors.hpp"

namespace sgikit::groebner {

namespace {

struct Pair {
    size_t i, j;
    Monomial lcm;
    unsigned sugar;
    unsigned lcm_degree;
};

// Sugar selection: smallest sugar degree, ties by smallest lcm degree.
struct PairLess {
    bool operator()(const Pair& a, const Pair& b) const {
        if (a.sugar != b.sugar) return a.sugar > b.sugar;
        return a.lcm_degree > b.lcm_degree;
    }
};

MultiPoly reduce_full(const MultiPoly& p, const std::vector<MultiPoly>& basis,
                      const MonomialOrder& order, long& budget) {
    if (basis.empty()) return p;
    DivisionResult r = divide(p, basis, order, budget);
    if (budget >= 0) {
        budget -= r.steps;
        if (budget < 0)
            throw ResourceError("Groebner computation exceeded step budget");
    }
    return r.remainder;
}

} // namespace

Ideal::Ideal(std::vector<MultiPoly> generators, MonomialOrder order)
    : order_(std::move(order)), generators_(std::move(generators)) {
    if (generators_.empty()) throw InvalidArgument("ideal needs at least one generator");
    ring_ = generators_.front().ring();
    for (auto& g : generators_) {
        if (*g.ring() != *ring_) {
            ring_ = ring_union(ring_, g.ring());
        }
    }
    for (auto& g : generators_) g = g.promoted(ring_);
    if (static_cast<int>(order_.priority().size()) != ring_->size())
        throw InvalidArgument("monomial order arity does not match ring");
}

const std::vector<MultiPoly>& Ideal::reduced_basis() const {
    if (!basis_) const_cast<Ideal*>(this)->compute_basis();
    return *basis_;
}

void Ideal::compute_basis(const Config& cfg) {
    if (basis_) return;
    long budget = cfg.step_budget;

    std::vector<MultiPoly> G;
    for (const auto& g : generators_)
        if (!g.is_zero()) G.push_back(g.monic(order_));
    if (G.empty()) throw InvalidArgument("all generators are zero");

    std::vector<Monomial> lt;
    std::vector<unsigned> sugar;
    for (const auto& g : G) {
        lt.push_back(g.leading_monomial(order_));
        sugar.push_back(static_cast<unsigned>(g.total_degree()));
    }

    auto make_pair = [&](size_t i, size_t j) {
        Monomial l = Monomial::lcm(lt[i], lt[j]);
        unsigned ld = l.total_degree();
        unsigned s = std::max(sugar[i] + (l / lt[i]).total_degree(),
                              sugar[j] + (l / lt[j]).total_degree());
        return Pair{i, j, l, s, ld};
    };

    std::vector<Pair> pairs;
    for (size_t i = 0; i < G.size(); ++i)
        for (size_t j = i + 1; j < G.size(); ++j) pairs.push_back(make_pair(i, j));
    std::make_heap(pairs.begin(), pairs.end(), PairLess{});

    auto chain_criterion = [&](const Pair& p) {
        // Skip if some k has lt[k] | lcm(i,j) and both (i,k), (j,k) already handled.
        for (size_t k = 0; k < G.size(); ++k) {
            if (k == p.i || k == p.j) continue;
            if (!lt[k].divides(p.lcm)) continue;
            bool ik_pending = false, jk_pending = false;
            for (const auto& q : pairs) {
                size_t a = std::min(p.i, k), b = std::max(p.i, k);
                size_t c = std::min(p.j, k), d = std::max(p.j, k);
                if (q.i == a && q.j == b) ik_pending = true;
                if (q.i == c && q.j == d) jk_pending = true;
            }
            if (!ik_pending && !jk_pending) return true;
        }
        return false;
    };

    while (!pairs.empty()) {
        std::pop_heap(pairs.begin(), pairs.end(), PairLess{});
        Pair p = pairs.back();
        pairs.pop_back();

        // Product criterion: coprime leading terms give a zero reduction.
        if (Monomial::coprime(lt[p.i], lt[p.j])) continue;
        if (chain_criterion(p)) continue;

        // S-polynomial (both generators are monic).
        MultiPoly spoly =
            MultiPoly::term(ring_, p.lcm / lt[p.i], rat(1)) * G[p.i] -
            MultiPoly::term(ring_, p.lcm / lt[p.j], rat(1)) * G[p.j];
        MultiPoly r = reduce_full(spoly, G, order_, budget);
        if (r.is_zero()) continue;

        r = r.monic(order_);
        size_t t = G.size();
        G.push_back(r);
        lt.push_back(r.leading_monomial(order_));
        sugar.push_back(static_cast<unsigned>(r.total_degree()));
        for (size_t i = 0; i < t; ++i) pairs.push_back(make_pair(i, t));
        std::make_heap(pairs.begin(), pairs.end(), PairLess{});
    }

    // Minimalize: drop elements whose leading term another element divides.
    std::vector<bool> keep(G.size(), true);
    for (size_t i = 0; i < G.size(); ++i) {
        if (!keep[i]) continue;
        for (size_t j = 0; j < G.size(); ++j) {
            if (i == j || !keep[j]) continue;
            if (lt[j].divides(lt[i]) && (lt[i] != lt[j] || j < i)) {
                keep[i] = false;
                break;
            }
        }
    }
    std::vector<MultiPoly> minimal;
    for (size_t i = 0; i < G.size(); ++i)
        if (keep[i]) minimal.push_back(G[i]);

    // Inter-reduce to the unique reduced basis.
    std::vector<MultiPoly> reduced;
    for (size_t i = 0; i < minimal.size(); ++i) {
        std::vector<MultiPoly> others;
        for (size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        MultiPoly r = others.empty() ? minimal[i]
                                     : reduce_full(minimal[i], others, order_, budget);
        if (!r.is_zero()) reduced.push_back(r.monic(order_));
    }

    // Canonical presentation: sort by leading monomial ascending.
    std::sort(reduced.begin(), reduced.end(), [&](const auto& a, const auto& b) {
        return order_.less(a.leading_monomial(order_), b.leading_monomial(order_));
    });
    basis_ = std::move(reduced);
}

MultiPoly normal_form(const MultiPoly& p, const Ideal& ideal) {
    const auto& basis = ideal.reduced_basis();
    MultiPoly q = p.promoted(ideal.ring());
    long budget = -1;
    return reduce_full(q, basis, ideal.order(), budget);
}

bool ideal_equal(const Ideal& a, const Ideal& b) {
    if (*a.ring() != *b.ring())
        throw InvalidArgument("ideal comparison requires a shared ring");
    for (const auto& g : a.reduced_basis())
        if (!normal_form(g, b).is_zero()) return false;
    for (const auto& g : b.reduced_basis())
        if (!normal_form(g, a).is_zero()) return false;
    return true;
}

IdealAnalysis dimension_and_degree(const Ideal& ideal) {
    IdealAnalysis out;
    out.reduced_basis = ideal.reduced_basis();
    const auto& order = ideal.order();
    int n = ideal.ring()->size();

    std::vector<Monomial> lts;
    for (const auto& g : out.reduced_basis) {
        Monomial m = g.leading_monomial(order);
        if (m.is_one()) {
            out.dimension = -1;
            out.degree_finite = true;
            out.degree = 0;
            return out;
        }
        lts.push_back(m);
    }

    // Dimension: size of the largest variable subset S such that no leading
    // term lives entirely within S.
    int best = 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        int size = __builtin_popcount(mask);
        if (size <= best) continue;
        bool independent = true;
        for (const auto& m : lts) {
            bool inside = true;
            for (const auto& [v, e] : m.exponents())
                if (!(mask & (1u << v))) {
                    inside = false;
                    break;
                }
            if (inside) {
                independent = false;
                break;
            }
        }
        if (independent) best = size;
    }
    out.dimension = best;
    if (best != 0) return out;

    // Zero-dimensional: count standard monomials inside the box bounded by
    // the pure-power leading terms.
    std::vector<unsigned> bound(n, 0);
    for (int v = 0; v < n; ++v) {
        for (const auto& m : lts) {
            if (m.exponents().size() == 1 && m.exponents()[0].first == v) {
                unsigned e = m.exponents()[0].second;
                if (bound[v] == 0 || e < bound[v]) bound[v] = e;
            }
        }
    }
    long count = 0;
    std::vector<unsigned> exp(n, 0);
    for (;;) {
        Monomial::Exp me;
        for (int v = 0; v < n; ++v)
            if (exp[v]) me.emplace_back(v, exp[v]);
        Monomial m{std::move(me)};
        bool standard = true;
        for (const auto& l : lts)
            if (l.divides(m)) {
                standard = false;
                break;
            }
        if (standard) ++count;
        int v = 0;
        while (v < n) {
            if (++exp[v] < bound[v]) break;
            exp[v] = 0;
            ++v;
        }
        if (v == n) break;
    }
    out.degree_finite = true;
    out.degree = count;
    return out;
}

Ideal buchberger(std::vector<MultiPoly> gens, MonomialOrder order, const Config& cfg) {
    Ideal ideal(std::move(gens), std::move(order));
    ideal.compute_basis(cfg);
    return ideal;
}

} // namespace sgikit::groebner
