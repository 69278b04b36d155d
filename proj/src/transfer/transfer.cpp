#include "transfer.hpp"

#include <set>

#include "../core/errors.hpp"

namespace sgikit::transfer {

namespace {

const std::string kTransformVar = "s";

RingPtr extend_with_s(const RingPtr& params) {
    if (params->contains(kTransformVar))
        throw InvalidArgument("'s' is reserved for the transform variable");
    std::vector<std::string> names = params->names();
    names.push_back(kTransformVar);
    return make_ring(std::move(names));
}

} // namespace

FaddeevResult faddeev_leverrier(const std::vector<std::vector<MultiPoly>>& A,
                                const RingPtr& ring_s, int s_var) {
    int n = static_cast<int>(A.size());
    for (const auto& row : A)
        if (static_cast<int>(row.size()) != n)
            throw InvalidArgument("faddeev_leverrier requires a square matrix");
    RingPtr pring = n > 0 ? A[0][0].ring() : make_ring({});

    auto zero = MultiPoly::zero(pring);
    auto identity = [&](const Rat& c) {
        std::vector<std::vector<MultiPoly>> I(n, std::vector<MultiPoly>(n, zero));
        for (int i = 0; i < n; ++i) I[i][i] = MultiPoly::constant(pring, c);
        return I;
    };
    auto matmul = [&](const auto& X, const auto& Y) {
        std::vector<std::vector<MultiPoly>> Z(n, std::vector<MultiPoly>(n, zero));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int l = 0; l < n; ++l) Z[i][j] = Z[i][j] + X[i][l] * Y[l][j];
        return Z;
    };

    FaddeevResult out;
    out.adjugate.assign(n, {});
    std::vector<MultiPoly> c(n + 1, zero); // c[i] multiplies s^i; c[n] = 1
    c[n] = MultiPoly::constant(pring, rat(1));

    // M_{n-1} = I; c_{n-k} = -tr(A M_{n-k}) / k; M_{n-k-1} = A M_{n-k} + c_{n-k} I.
    std::vector<std::vector<MultiPoly>> M = identity(rat(1));
    for (int k = 1; k <= n; ++k) {
        out.adjugate[n - k] = M;
        auto AM = matmul(A, M);
        MultiPoly trace = zero;
        for (int i = 0; i < n; ++i) trace = trace + AM[i][i];
        c[n - k] = trace * rat(-1, k);
        if (k < n) {
            M = AM;
            for (int i = 0; i < n; ++i) M[i][i] = M[i][i] + c[n - k];
        }
    }

    out.char_poly = MultiPoly::zero(ring_s);
    for (int i = 0; i <= n; ++i) {
        MultiPoly ci = c[i].promoted(ring_s);
        out.char_poly = out.char_poly +
                        ci * MultiPoly::term(ring_s, Monomial::var(s_var, i), rat(1));
    }
    return out;
}

RatFun canonicalize(const MultiPoly& num, const MultiPoly& den, int s_var) {
    if (den.is_zero()) throw InvalidArgument("zero denominator");
    RatFun out;
    if (num.is_zero()) {
        out.num = num;
        out.den = MultiPoly::constant(num.ring(), rat(1));
        out.canonical = true;
        out.fully_cancelled = true;
        out.cancelled_degree = std::max(den.degree_in(s_var), 0);
        return out;
    }
    MultiPoly g = poly_gcd(num, den);
    MultiPoly n2 = *exact_divide(num, g);
    MultiPoly d2 = *exact_divide(den, g);
    out.cancelled_degree = std::max(g.degree_in(s_var), 0);

    // Monic denominator in s: the top s-coefficient must be parameter-free
    // (it divides the monic characteristic polynomial's top coefficient).
    int d = d2.degree_in(s_var);
    MultiPoly lead = d2.coeffs_in(s_var)[d];
    if (!lead.is_constant())
        throw InvalidArgument("denominator leading s-coefficient is not constant");
    Rat scale = rat(1) / lead.constant_value();
    out.num = n2 * scale;
    out.den = d2 * scale;
    out.canonical = true;
    return out;
}

RatFun ratfun_add(const RatFun& a, const RatFun& b, int s_var) {
    return canonicalize(a.num * b.den + b.num * a.den, a.den * b.den, s_var);
}

TransferData derive_transfer(const model::StructureSpec& spec) {
    TransferData td;
    td.ring_s = extend_with_s(spec.params);
    td.s_var = td.ring_s->index(kTransformVar);

    FaddeevResult fl = faddeev_leverrier(spec.A, td.ring_s, td.s_var);
    td.char_poly = fl.char_poly;

    auto s_power = [&](int d) {
        return MultiPoly::term(td.ring_s, Monomial::var(td.s_var, d), rat(1));
    };
    // Numerator of entry (C adj(sI-A) w)_i as a polynomial in s.
    auto numerator = [&](int i, const std::vector<MultiPoly>& w) {
        MultiPoly acc = MultiPoly::zero(td.ring_s);
        for (int d = 0; d < spec.n; ++d) {
            MultiPoly coef = MultiPoly::zero(spec.params);
            for (int j = 0; j < spec.n; ++j)
                for (int l = 0; l < spec.n; ++l)
                    coef = coef + spec.C[i][j] * fl.adjugate[d][j][l] * w[l];
            acc = acc + coef.promoted(td.ring_s) * s_power(d);
        }
        return acc;
    };

    int entries = 0, cancelled = 0;
    auto push = [&](RatFun f) {
        ++entries;
        if (f.fully_cancelled || f.cancelled_degree > 0) ++cancelled;
        return f;
    };

    for (int i = 0; i < spec.k; ++i)
        td.V.push_back(push(canonicalize(numerator(i, spec.x0), td.char_poly, td.s_var)));
    if (spec.m > 0) {
        td.W.assign(spec.k, {});
        for (int i = 0; i < spec.k; ++i)
            for (int j = 0; j < spec.m; ++j) {
                std::vector<MultiPoly> col;
                for (int l = 0; l < spec.n; ++l) col.push_back(spec.B[l][j]);
                td.W[i].push_back(
                    push(canonicalize(numerator(i, col), td.char_poly, td.s_var)));
            }
    }
    td.not_generically_minimal = entries > 0 && cancelled == entries;
    return td;
}

namespace {

// Append the coefficient invariants of one canonical entry: denominator
// coefficients ascending (the leading 1 is constant and dropped), then
// numerator coefficients ascending.
void collect_entry(const RatFun& f, int s_var, const std::string& source,
                   const RingPtr& params, std::vector<Invariant>& out,
                   std::vector<std::string>& dropped) {
    auto emit = [&](const MultiPoly& coef, const std::string& label) {
        if (coef.is_zero()) return;
        if (coef.is_constant()) {
            dropped.push_back(label + " = " + coef.to_string());
            return;
        }
        // Coefficients of canonical entries are free of s.
        out.push_back({label, coef.promoted(params)});
    };
    auto den = f.den.coeffs_in(s_var);
    for (size_t d = 0; d + 1 < den.size(); ++d)
        emit(den[d], "den(" + source + ") s^" + std::to_string(d));
    if (!f.num.is_zero()) {
        auto num = f.num.coeffs_in(s_var);
        for (size_t d = 0; d < num.size(); ++d)
            emit(num[d], "num(" + source + ") s^" + std::to_string(d));
    }
}

} // namespace

InvariantVector extract_invariants(const TransferData& td,
                                   const model::InputSet& input_set) {
    InvariantVector iv;
    std::vector<Invariant> raw;

    // Parameter ring = ring_s minus s.
    std::vector<std::string> pnames;
    for (const auto& n : td.ring_s->names())
        if (n != kTransformVar) pnames.push_back(n);
    RingPtr params = make_ring(std::move(pnames));

    using Mode = model::InputSet::Mode;
    if (input_set.mode == Mode::restricted) {
        for (const auto& sig : input_set.signals) {
            auto [lnum, lden] = sig.laplace(td.ring_s, td.s_var);
            for (size_t i = 0; i < td.V.size(); ++i) {
                // y_i = V_i + (sum_j W_ij) L{u}, re-canonicalized.
                MultiPoly wn = MultiPoly::zero(td.ring_s);
                MultiPoly wd = MultiPoly::constant(td.ring_s, rat(1));
                if (!td.W.empty())
                    for (const auto& w : td.W[i]) {
                        wn = wn * w.den + w.num * wd;
                        wd = wd * w.den;
                    }
                MultiPoly num = td.V[i].num * wd * lden + wn * lnum * td.V[i].den;
                MultiPoly den = td.V[i].den * wd * lden;
                RatFun y = canonicalize(num, den, td.s_var);
                collect_entry(y, td.s_var,
                              "y" + std::to_string(i + 1) + "|" + sig.describe(),
                              params, raw, iv.dropped_constants);
            }
        }
    } else {
        for (size_t i = 0; i < td.V.size(); ++i)
            collect_entry(td.V[i], td.s_var, "V[" + std::to_string(i + 1) + "]",
                          params, raw, iv.dropped_constants);
        if (input_set.mode == Mode::full)
            for (size_t i = 0; i < td.W.size(); ++i)
                for (size_t j = 0; j < td.W[i].size(); ++j)
                    collect_entry(td.W[i][j], td.s_var,
                                  "W[" + std::to_string(i + 1) + "," +
                                      std::to_string(j + 1) + "]",
                                  params, raw, iv.dropped_constants);
    }

    // Deduplicate by exact equality after monic normalization.
    MonomialOrder order = MonomialOrder::grevlex_for(*params);
    for (auto& inv : raw) {
        MultiPoly key = inv.poly.monic(order);
        bool dup = false;
        for (const auto& kept : iv.entries)
            if (kept.poly.monic(order) == key) {
                dup = true;
                break;
            }
        if (!dup) iv.entries.push_back(std::move(inv));
    }
    return iv;
}

} // namespace sgikit::transfer
