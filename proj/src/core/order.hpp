#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"
#include "monomial.hpp"
#include "ring.hpp"

namespace sgikit {

enum class OrderKind { lex, grlex, grevlex };

/// A monomial order: lex / grlex / grevlex together with a variable priority
/// permutation (priority[0] is the most significant variable index).
class MonomialOrder {
public:
    MonomialOrder(OrderKind kind, std::vector<int> priority)
        : kind_(kind), priority_(std::move(priority)) {}

    /// Default order for a ring: grevlex in declaration order.
    static MonomialOrder grevlex_for(const Ring& ring) {
        std::vector<int> p(ring.size());
        std::iota(p.begin(), p.end(), 0);
        return MonomialOrder(OrderKind::grevlex, std::move(p));
    }

    static MonomialOrder lex_for(const Ring& ring) {
        std::vector<int> p(ring.size());
        std::iota(p.begin(), p.end(), 0);
        return MonomialOrder(OrderKind::lex, std::move(p));
    }

    /// Lex order with an explicit priority given as variable names,
    /// most significant first. Every ring variable must appear exactly once.
    static MonomialOrder lex_named(const Ring& ring,
                                   const std::vector<std::string>& names) {
        if (static_cast<int>(names.size()) != ring.size())
            throw InvalidArgument("order spec must name every ring variable exactly once");
        std::vector<int> p;
        std::vector<bool> seen(ring.size(), false);
        for (const auto& n : names) {
            int i = ring.index(n);
            if (i < 0) throw InvalidArgument("unknown variable in order spec: " + n);
            if (seen[i]) throw InvalidArgument("variable repeated in order spec: " + n);
            seen[i] = true;
            p.push_back(i);
        }
        return MonomialOrder(OrderKind::lex, std::move(p));
    }

    OrderKind kind() const { return kind_; }
    const std::vector<int>& priority() const { return priority_; }

    /// <0 if a < b, 0 if equal, >0 if a > b.
    int compare(const Monomial& a, const Monomial& b) const {
        if (kind_ != OrderKind::lex) {
            unsigned da = a.total_degree(), db = b.total_degree();
            if (da != db) return da < db ? -1 : 1;
        }
        if (kind_ == OrderKind::grevlex) {
            // Reverse scan: the monomial with the smaller exponent in the
            // least significant differing variable is the larger one.
            for (auto it = priority_.rbegin(); it != priority_.rend(); ++it) {
                unsigned ea = a.exponent(*it), eb = b.exponent(*it);
                if (ea != eb) return ea < eb ? 1 : -1;
            }
            return 0;
        }
        for (int v : priority_) {
            unsigned ea = a.exponent(v), eb = b.exponent(v);
            if (ea != eb) return ea < eb ? -1 : 1;
        }
        return 0;
    }

    bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

    std::string describe(const Ring& ring) const {
        std::string s = kind_ == OrderKind::lex      ? "lex"
                        : kind_ == OrderKind::grlex  ? "grlex"
                                                     : "grevlex";
        s += ":";
        for (size_t i = 0; i < priority_.size(); ++i) {
            if (i) s += ",";
            s += ring.name(priority_[i]);
        }
        return s;
    }

private:
    OrderKind kind_;
    std::vector<int> priority_;
};

} // namespace sgikit
