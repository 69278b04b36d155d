#include "uniroot.hpp"

#include <algorithm>

namespace sgikit::ident {

namespace {

using Poly = std::vector<Rat>; // coeffs ascending, trimmed

void trim(Poly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly derivative(const Poly& p) {
    Poly d;
    for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * rat(static_cast<long>(i)));
    return d;
}

// Remainder of a by b (b nonzero).
Poly rem(Poly a, const Poly& b) {
    int db = degree(b);
    while (degree(a) >= db) {
        Rat q = a.back() / b.back();
        int shift = degree(a) - db;
        for (int i = 0; i <= db; ++i) a[i + shift] -= q * b[i];
        a.pop_back();
        trim(a);
        if (a.empty()) break;
    }
    return a;
}

Poly poly_gcd1(Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rat lc = a.back();
        for (auto& c : a) c /= lc;
    }
    return a;
}

Poly exact_div(const Poly& a, const Poly& b) {
    Poly q(a.size() - b.size() + 1, rat(0));
    Poly r = a;
    int db = degree(b);
    while (degree(r) >= db && !r.empty()) {
        Rat c = r.back() / b.back();
        int shift = degree(r) - db;
        q[shift] = c;
        for (int i = 0; i <= db; ++i) r[i + shift] -= c * b[i];
        trim(r);
    }
    return q;
}

// Divisors of |n|, via trial division; may be incomplete for huge cofactors.
std::vector<Int> divisors_bounded(Int n, bool& complete) {
    complete = true;
    n = abs(n);
    std::vector<std::pair<Int, int>> factors;
    Int d = 2;
    while (d * d <= n && d < 1000000) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) {
                n /= d;
                ++e;
            }
            factors.emplace_back(d, e);
        }
        d += (d == 2) ? 1 : 2;
    }
    if (n > 1) {
        if (mpz_probab_prime_p(n.get_mpz_t(), 25) || n < Int(1000000) * 1000000)
            factors.emplace_back(n, 1);
        else
            complete = false; // large composite cofactor left unfactored
    }
    std::vector<Int> divs{1};
    for (const auto& [p, e] : factors) {
        size_t base = divs.size();
        Int pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (size_t j = 0; j < base; ++j) {
                divs.push_back(divs[j] * pk);
                if (divs.size() > 20000) {
                    complete = false;
                    return divs;
                }
            }
        }
    }
    return divs;
}

// All rational roots of a squarefree polynomial; deflates them out of p.
std::vector<Rat> extract_rational_roots(Poly& p) {
    std::vector<Rat> roots;
    // Roots at zero.
    while (!p.empty() && sgn(p[0]) == 0) {
        p.erase(p.begin());
        if (roots.empty() || roots.back() != 0) roots.push_back(rat(0));
    }
    for (;;) {
        trim(p);
        int deg = degree(p);
        if (deg < 1) break;
        if (deg == 1) {
            roots.push_back(-p[0] / p[1]);
            p = {rat(1)};
            break;
        }
        if (deg == 2) {
            Rat disc = p[1] * p[1] - rat(4) * p[2] * p[0];
            Rat sq;
            if (exact_sqrt(disc, sq)) {
                roots.push_back((-p[1] + sq) / (rat(2) * p[2]));
                if (sgn(sq) != 0) roots.push_back((-p[1] - sq) / (rat(2) * p[2]));
                p = {rat(1)};
            }
            break;
        }
        // Rational root theorem on the integer-scaled polynomial.
        Int scale = 1;
        for (const auto& c : p) scale = lcm(scale, c.get_den());
        std::vector<Int> ip;
        for (const auto& c : p) {
            Rat v = c * scale;
            ip.push_back(v.get_num());
        }
        bool c0ok = false, cnok = false;
        auto num_divs = divisors_bounded(ip.front(), c0ok);
        auto den_divs = divisors_bounded(ip.back(), cnok);
        Rat found;
        bool got = false;
        for (const auto& pn : num_divs) {
            for (const auto& qd : den_divs) {
                for (int sign : {1, -1}) {
                    Rat cand(sign * pn, qd);
                    cand.canonicalize();
                    if (sgn(poly_eval(p, cand)) == 0) {
                        found = cand;
                        got = true;
                        break;
                    }
                }
                if (got) break;
            }
            if (got) break;
        }
        if (!got) break;
        roots.push_back(found);
        p = exact_div(p, {-found, rat(1)});
    }
    return roots;
}

int sign_variations(const std::vector<Poly>& sturm, const Rat& x) {
    int count = 0, prev = 0;
    for (const auto& q : sturm) {
        int s = sgn(poly_eval(q, x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++count;
        prev = s;
    }
    return count;
}

} // namespace

Rat poly_eval(const std::vector<Rat>& coeffs, const Rat& x) {
    Rat v(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * x + *it;
    return v;
}

std::vector<RealRoot> real_roots(std::vector<Rat> coeffs, const Rat& width) {
    std::vector<RealRoot> out;
    Poly p = std::move(coeffs);
    trim(p);
    if (degree(p) < 1) return out;

    // Squarefree part.
    Poly g = poly_gcd1(p, derivative(p));
    if (degree(g) >= 1) p = exact_div(p, g);

    for (const auto& r : extract_rational_roots(p))
        out.push_back({true, r, r, r});

    trim(p);
    if (degree(p) < 1) {
        std::sort(out.begin(), out.end(),
                  [](const RealRoot& a, const RealRoot& b) { return a.lo < b.lo; });
        return out;
    }

    // Sturm isolation for the (rational-root-free) remainder.
    std::vector<Poly> sturm{p, derivative(p)};
    while (degree(sturm.back()) >= 1) {
        Poly r = rem(sturm[sturm.size() - 2], sturm.back());
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        sturm.push_back(std::move(r));
    }

    // Cauchy bound.
    Rat bound(1);
    for (int i = 0; i + 1 < static_cast<int>(p.size()); ++i) {
        Rat q = abs(p[i] / p.back());
        if (q > bound) bound = q;
    }
    bound += 1;

    struct Interval {
        Rat lo, hi;
        int nroots;
    };
    std::vector<Interval> work{{-bound, bound,
                                sign_variations(sturm, -bound) -
                                    sign_variations(sturm, bound)}};
    while (!work.empty()) {
        Interval iv = work.back();
        work.pop_back();
        if (iv.nroots <= 0) continue;
        if (iv.nroots == 1 && iv.hi - iv.lo < width) {
            out.push_back({false, Rat(0), iv.lo, iv.hi});
            continue;
        }
        Rat mid = (iv.lo + iv.hi) / 2;
        if (sgn(poly_eval(p, mid)) == 0) {
            // Exact hit: p has no rational roots left, so mid splits cleanly
            // only in theory; nudge the split point.
            mid = (iv.lo * 2 + iv.hi) / 3;
        }
        int left = sign_variations(sturm, iv.lo) - sign_variations(sturm, mid);
        work.push_back({iv.lo, mid, left});
        work.push_back({mid, iv.hi, iv.nroots - left});
    }
    std::sort(out.begin(), out.end(),
              [](const RealRoot& a, const RealRoot& b) { return a.lo < b.lo; });
    return out;
}

} // namespace sgikit::ident
