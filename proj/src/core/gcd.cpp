#include "errors.hpp"
#include "poly.hpp"

namespace sgikit {

namespace {

// Variables actually appearing in p.
std::vector<int> support(const MultiPoly& p) {
    std::vector<bool> seen(p.ring()->size(), false);
    for (const auto& [m, c] : p.terms())
        for (const auto& [v, e] : m.exponents()) seen[v] = true;
    std::vector<int> out;
    for (int i = 0; i < p.ring()->size(); ++i)
        if (seen[i]) out.push_back(i);
    return out;
}

MultiPoly gcd_impl(const MultiPoly& a, const MultiPoly& b);

// Pseudo-remainder of a by b viewed as univariate in var:
// lc(b)^(deg a - deg b + 1) * a = q*b + r with deg_var(r) < deg_var(b).
MultiPoly pseudo_rem(MultiPoly a, const MultiPoly& b, int var) {
    int db = b.degree_in(var);
    auto bc = b.coeffs_in(var);
    const MultiPoly& lb = bc[db];
    while (!a.is_zero() && a.degree_in(var) >= db) {
        int da = a.degree_in(var);
        auto ac = a.coeffs_in(var);
        // a <- lb*a - la*x^(da-db)*b
        MultiPoly shift = MultiPoly::term(a.ring(), Monomial::var(var, da - db), rat(1));
        a = lb * a - ac[da] * shift * b;
    }
    return a;
}

// GCD of the coefficient polynomials of p viewed as univariate in var.
MultiPoly content_in(const MultiPoly& p, int var) {
    MultiPoly g = MultiPoly::zero(p.ring());
    for (const auto& c : p.coeffs_in(var)) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c : gcd_impl(g, c);
        if (g.is_constant()) break;
    }
    return g;
}

MultiPoly gcd_impl(const MultiPoly& a, const MultiPoly& b) {
    RingPtr ring = a.ring();
    MonomialOrder order = MonomialOrder::grevlex_for(*ring);
    if (a.is_zero()) return b.is_zero() ? b : b.monic(order);
    if (b.is_zero()) return a.monic(order);
    if (a.is_constant() || b.is_constant())
        return MultiPoly::constant(ring, rat(1));

    std::vector<int> vars = support(a * b);
    int var = vars.back();

    MultiPoly ca = content_in(a, var), cb = content_in(b, var);
    MultiPoly pa = *exact_divide(a, ca), pb = *exact_divide(b, cb);
    MultiPoly cont = gcd_impl(ca, cb);

    // Primitive Euclidean remainder sequence in the main variable, taking
    // primitive parts at each step to control coefficient growth.
    MultiPoly r0 = pa, r1 = pb;
    if (r0.degree_in(var) < r1.degree_in(var)) std::swap(r0, r1);
    while (!r1.is_zero() && r1.degree_in(var) >= 0) {
        if (r1.degree_in(var) == 0) {
            // pp in var with degree 0: a common factor free of var would have
            // been part of the contents, so the primitive gcd is trivial.
            r0 = MultiPoly::constant(ring, rat(1));
            r1 = MultiPoly::zero(ring);
            break;
        }
        MultiPoly r = pseudo_rem(r0, r1, var);
        if (!r.is_zero()) {
            MultiPoly cr = content_in(r, var);
            r = *exact_divide(r, cr);
        }
        r0 = r1;
        r1 = r;
    }
    return (cont * r0).monic(order);
}

} // namespace

MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero() || b.is_zero())
        throw InvalidArgument("gcd of zero polynomial");
    RingPtr u = ring_union(a.ring(), b.ring());
    return gcd_impl(a.promoted(u), b.promoted(u));
}

} // namespace sgikit
