#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace sgikit {

/// A power product of ring variables, stored sparsely as (variable index,
/// exponent) pairs sorted by index. Zero exponents are never stored.
class Monomial {
public:
    using Exp = std::vector<std::pair<int, unsigned>>;

    Monomial() = default;
    explicit Monomial(Exp exps) : exps_(std::move(exps)) {
        std::sort(exps_.begin(), exps_.end());
        exps_.erase(std::remove_if(exps_.begin(), exps_.end(),
                                   [](const auto& e) { return e.second == 0; }),
                    exps_.end());
    }

    static Monomial one() { return Monomial(); }
    static Monomial var(int index, unsigned exp = 1) {
        Monomial m;
        if (exp > 0) m.exps_.emplace_back(index, exp);
        return m;
    }

    bool is_one() const { return exps_.empty(); }
    const Exp& exponents() const { return exps_; }

    unsigned exponent(int var) const {
        for (const auto& [v, e] : exps_)
            if (v == var) return e;
        return 0;
    }

    unsigned total_degree() const {
        unsigned d = 0;
        for (const auto& [v, e] : exps_) d += e;
        return d;
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r;
        r.exps_ = merge(exps_, o.exps_, /*subtract=*/false);
        return r;
    }

    bool divides(const Monomial& o) const {
        for (const auto& [v, e] : exps_)
            if (o.exponent(v) < e) return false;
        return true;
    }

    /// this / o; requires o.divides(*this).
    Monomial operator/(const Monomial& o) const {
        Monomial r;
        r.exps_ = merge(exps_, o.exps_, /*subtract=*/true);
        return r;
    }

    static Monomial lcm(const Monomial& a, const Monomial& b) {
        Exp out;
        size_t i = 0, j = 0;
        const auto &x = a.exps_, &y = b.exps_;
        while (i < x.size() || j < y.size()) {
            if (j == y.size() || (i < x.size() && x[i].first < y[j].first))
                out.push_back(x[i++]);
            else if (i == x.size() || y[j].first < x[i].first)
                out.push_back(y[j++]);
            else {
                out.emplace_back(x[i].first, std::max(x[i].second, y[j].second));
                ++i, ++j;
            }
        }
        Monomial r;
        r.exps_ = std::move(out);
        return r;
    }

    static bool coprime(const Monomial& a, const Monomial& b) {
        for (const auto& [v, e] : a.exps_)
            if (b.exponent(v) > 0) return false;
        return true;
    }

    bool operator==(const Monomial& o) const { return exps_ == o.exps_; }
    bool operator!=(const Monomial& o) const { return !(*this == o); }

    /// Arbitrary total order used only for canonical container storage.
    bool operator<(const Monomial& o) const { return exps_ < o.exps_; }

private:
    static Exp merge(const Exp& x, const Exp& y, bool subtract) {
        Exp out;
        size_t i = 0, j = 0;
        while (i < x.size() || j < y.size()) {
            if (j == y.size() || (i < x.size() && x[i].first < y[j].first))
                out.push_back(x[i++]);
            else if (i == x.size() || y[j].first < x[i].first) {
                out.emplace_back(y[j].first,
                                 subtract ? static_cast<unsigned>(0) - y[j].second
                                          : y[j].second);
                ++j;
            } else {
                unsigned e = subtract ? x[i].second - y[j].second
                                      : x[i].second + y[j].second;
                if (e != 0) out.emplace_back(x[i].first, e);
                ++i, ++j;
            }
        }
        return out;
    }

    Exp exps_;
};

} // namespace sgikit
