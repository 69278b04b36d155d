#include "poly.hpp"

#include <cctype>
#include <sstream>

#include "errors.hpp"

namespace sgikit {

MultiPoly MultiPoly::constant(RingPtr ring, const Rat& c) {
    MultiPoly p(std::move(ring));
    if (sgn(c) != 0) p.terms_.emplace(Monomial::one(), c);
    return p;
}

MultiPoly MultiPoly::variable(RingPtr ring, int index) {
    if (index < 0 || index >= ring->size())
        throw InvalidArgument("variable index out of range");
    MultiPoly p(std::move(ring));
    p.terms_.emplace(Monomial::var(index), rat(1));
    return p;
}

MultiPoly MultiPoly::variable(RingPtr ring, const std::string& name) {
    int i = ring->index(name);
    if (i < 0) throw InvalidArgument("unknown variable: " + name);
    return variable(std::move(ring), i);
}

MultiPoly MultiPoly::term(RingPtr ring, Monomial m, const Rat& c) {
    MultiPoly p(std::move(ring));
    if (sgn(c) != 0) {
        for (const auto& [v, e] : m.exponents())
            if (v < 0 || v >= p.ring_->size())
                throw InvalidArgument("monomial variable outside ring");
        p.terms_.emplace(std::move(m), c);
    }
    return p;
}

bool MultiPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rat MultiPoly::constant_value() const {
    if (is_zero()) return rat(0);
    if (!is_constant()) throw InvalidArgument("polynomial is not constant");
    return terms_.begin()->second;
}

int MultiPoly::total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.total_degree()));
    return d;
}

int MultiPoly::degree_in(int var) const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.exponent(var)));
    return is_zero() ? -1 : d;
}

void MultiPoly::add_term(const Monomial& m, const Rat& c) {
    if (sgn(c) == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

void MultiPoly::align(const MultiPoly& a, const MultiPoly& b, MultiPoly& ap,
                      MultiPoly& bp) {
    if (*a.ring_ == *b.ring_) {
        ap = a;
        bp = b;
        return;
    }
    RingPtr u = ring_union(a.ring_, b.ring_);
    ap = a.promoted(u);
    bp = b.promoted(u);
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(ring_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    MultiPoly a, b;
    align(*this, o, a, b);
    MultiPoly r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
    MultiPoly a, b;
    align(*this, o, a, b);
    MultiPoly r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
    return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    MultiPoly a, b;
    align(*this, o, a, b);
    MultiPoly r(a.ring_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

MultiPoly MultiPoly::operator*(const Rat& c) const {
    if (sgn(c) == 0) return zero(ring_);
    MultiPoly r(ring_);
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
    MultiPoly r = constant(ring_, rat(1));
    MultiPoly base = *this;
    while (e) {
        if (e & 1u) r = r * base;
        base = base * base;
        e >>= 1u;
    }
    return r;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
    if (*ring_ == *o.ring_) return terms_ == o.terms_;
    MultiPoly a, b;
    align(*this, o, a, b);
    return a.terms_ == b.terms_;
}

Rat MultiPoly::eval(const std::vector<Rat>& assignment) const {
    if (static_cast<int>(assignment.size()) != ring_->size())
        throw InvalidArgument("assignment arity does not match ring");
    Rat total(0);
    for (const auto& [m, c] : terms_) {
        Rat v = c;
        for (const auto& [var, e] : m.exponents()) {
            Rat p = assignment[var];
            for (unsigned i = 1; i < e; ++i) p *= assignment[var];
            v *= p;
        }
        total += v;
    }
    return total;
}

Rat MultiPoly::eval(const std::map<std::string, Rat>& assignment) const {
    std::vector<Rat> vals(ring_->size(), rat(0));
    std::vector<bool> have(ring_->size(), false);
    for (const auto& [name, v] : assignment) {
        int i = ring_->index(name);
        if (i >= 0) {
            vals[i] = v;
            have[i] = true;
        }
    }
    for (const auto& [m, c] : terms_)
        for (const auto& [var, e] : m.exponents())
            if (!have[var])
                throw InvalidArgument("missing variable in assignment: " +
                                      ring_->name(var));
    return eval(vals);
}

MultiPoly MultiPoly::substitute(const std::map<int, Rat>& values) const {
    MultiPoly r(ring_);
    for (const auto& [m, c] : terms_) {
        Rat k = c;
        Monomial::Exp rest;
        for (const auto& [var, e] : m.exponents()) {
            auto it = values.find(var);
            if (it == values.end()) {
                rest.emplace_back(var, e);
            } else {
                Rat p = it->second;
                for (unsigned i = 1; i < e; ++i) p *= it->second;
                k *= p;
            }
        }
        r.add_term(Monomial(std::move(rest)), k);
    }
    return r;
}

MultiPoly MultiPoly::derivative(int var) const {
    if (var < 0 || var >= ring_->size())
        throw InvalidArgument("unknown variable index in derivative");
    MultiPoly r(ring_);
    for (const auto& [m, c] : terms_) {
        unsigned e = m.exponent(var);
        if (e == 0) continue;
        r.add_term(m / Monomial::var(var), c * rat(static_cast<long>(e)));
    }
    return r;
}

MultiPoly MultiPoly::promoted(const RingPtr& target) const {
    if (*ring_ == *target) {
        MultiPoly r = *this;
        r.ring_ = target;
        return r;
    }
    std::vector<int> map(ring_->size());
    for (int i = 0; i < ring_->size(); ++i) {
        map[i] = target->index(ring_->name(i));
    }
    MultiPoly r(target);
    for (const auto& [m, c] : terms_) {
        Monomial::Exp exps;
        for (const auto& [v, e] : m.exponents()) {
            if (map[v] < 0)
                throw InvalidArgument("target ring lacks variable " + ring_->name(v));
            exps.emplace_back(map[v], e);
        }
        r.add_term(Monomial(std::move(exps)), c);
    }
    return r;
}

MultiPoly MultiPoly::renamed(const RingPtr& target) const {
    if (target->size() != ring_->size())
        throw InvalidArgument("positional rename requires equal arity");
    MultiPoly r(target);
    r.terms_ = terms_;
    return r;
}

Monomial MultiPoly::leading_monomial(const MonomialOrder& order) const {
    if (is_zero()) throw InvalidArgument("zero polynomial has no leading term");
    const Monomial* best = nullptr;
    for (const auto& [m, c] : terms_)
        if (!best || order.less(*best, m)) best = &m;
    return *best;
}

Rat MultiPoly::leading_coeff(const MonomialOrder& order) const {
    return terms_.at(leading_monomial(order));
}

const Rat& MultiPoly::coeff(const Monomial& m) const {
    static const Rat zero_(0);
    auto it = terms_.find(m);
    return it == terms_.end() ? zero_ : it->second;
}

MultiPoly MultiPoly::monic(const MonomialOrder& order) const {
    if (is_zero()) return *this;
    Rat lc = leading_coeff(order);
    return *this * (rat(1) / lc);
}

std::vector<MultiPoly> MultiPoly::coeffs_in(int var) const {
    int d = degree_in(var);
    std::vector<MultiPoly> out(static_cast<size_t>(std::max(d, 0)) + 1,
                               MultiPoly::zero(ring_));
    for (const auto& [m, c] : terms_) {
        unsigned e = m.exponent(var);
        Monomial rest = m / Monomial::var(var, e);
        out[e].add_term(rest, c);
    }
    return out;
}

MultiPoly MultiPoly::from_coeffs_in(const RingPtr& ring, int var,
                                    const std::vector<MultiPoly>& coeffs) {
    MultiPoly r(ring);
    for (size_t e = 0; e < coeffs.size(); ++e) {
        MultiPoly c = coeffs[e].promoted(ring);
        for (const auto& [m, k] : c.terms())
            r.add_term(m * Monomial::var(var, static_cast<unsigned>(e)), k);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Printing

std::string MultiPoly::to_string() const {
    if (is_zero()) return "0";
    MonomialOrder order = MonomialOrder::grevlex_for(*ring_);
    std::vector<const Terms::value_type*> sorted;
    sorted.reserve(terms_.size());
    for (const auto& t : terms_) sorted.push_back(&t);
    std::sort(sorted.begin(), sorted.end(), [&](const auto* a, const auto* b) {
        return order.less(b->first, a->first);
    });

    std::ostringstream out;
    bool first = true;
    for (const auto* t : sorted) {
        const auto& [m, c] = *t;
        Rat a = abs(c);
        if (first) {
            if (sgn(c) < 0) out << "-";
            first = false;
        } else {
            out << (sgn(c) < 0 ? " - " : " + ");
        }
        bool coeff_one = (a == 1);
        if (!coeff_one || m.is_one()) out << rat_to_string(a);
        bool need_star = !coeff_one && !m.is_one();
        bool first_var = true;
        for (const auto& [v, e] : m.exponents()) {
            if (need_star || !first_var) out << "*";
            need_star = true;
            first_var = false;
            out << ring_->name(v);
            if (e > 1) out << "^" << e;
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Lexer {
    const std::string& text;
    size_t pos = 0;
    int line = 1, col = 1;

    explicit Lexer(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            advance();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    void advance() {
        if (pos < text.size()) {
            if (text[pos] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++pos;
        }
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(msg, line, col);
    }
};

class ExprParser {
public:
    ExprParser(const std::string& text, const RingPtr& ring)
        : lex_(text), ring_(ring) {}

    MultiPoly parse() {
        MultiPoly p = expr();
        if (lex_.peek() != '\0') lex_.fail("unexpected trailing input");
        return p;
    }

private:
    MultiPoly expr() {
        MultiPoly acc = term();
        for (;;) {
            char c = lex_.peek();
            if (c == '+') {
                lex_.advance();
                acc = acc + term();
            } else if (c == '-') {
                lex_.advance();
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    MultiPoly term() {
        MultiPoly acc = factor();
        while (lex_.peek() == '*') {
            lex_.advance();
            acc = acc * factor();
        }
        return acc;
    }

    MultiPoly factor() {
        int negs = 0;
        while (lex_.peek() == '-') {
            lex_.advance();
            ++negs;
        }
        MultiPoly base = primary();
        if (lex_.peek() == '^') {
            lex_.advance();
            base = base.pow(integer("exponent"));
        }
        return (negs % 2) ? -base : base;
    }

    MultiPoly primary() {
        char c = lex_.peek();
        if (c == '(') {
            lex_.advance();
            MultiPoly p = expr();
            if (lex_.peek() != ')') lex_.fail("expected ')'");
            lex_.advance();
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long num = integer("number");
            if (lex_.peek() == '/') {
                lex_.advance();
                long den = integer("denominator");
                if (den == 0) lex_.fail("zero denominator");
                return MultiPoly::constant(ring_, rat(num, den));
            }
            return MultiPoly::constant(ring_, rat(num));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name = identifier();
            int i = ring_->index(name);
            if (i < 0) lex_.fail("undeclared variable '" + name + "'");
            return MultiPoly::variable(ring_, i);
        }
        lex_.fail("expected number, variable, or '('");
    }

    unsigned integer(const char* what) {
        lex_.skip_ws();
        if (lex_.pos >= lex_.text.size() ||
            !std::isdigit(static_cast<unsigned char>(lex_.text[lex_.pos])))
            lex_.fail(std::string("expected ") + what);
        unsigned long v = 0;
        while (lex_.pos < lex_.text.size() &&
               std::isdigit(static_cast<unsigned char>(lex_.text[lex_.pos]))) {
            v = v * 10 + static_cast<unsigned long>(lex_.text[lex_.pos] - '0');
            if (v > 1000000000ul) lex_.fail("literal too large");
            lex_.advance();
        }
        return static_cast<unsigned>(v);
    }

    std::string identifier() {
        std::string s;
        while (lex_.pos < lex_.text.size()) {
            char c = lex_.text[lex_.pos];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'') {
                s += c;
                lex_.advance();
            } else {
                break;
            }
        }
        return s;
    }

    Lexer lex_;
    RingPtr ring_;
};

} // namespace

MultiPoly MultiPoly::parse(const std::string& text, const RingPtr& ring) {
    return ExprParser(text, ring).parse();
}

// ---------------------------------------------------------------------------
// Division

DivisionResult divide(const MultiPoly& p, const std::vector<MultiPoly>& divisors,
                      const MonomialOrder& order, long step_budget) {
    for (const auto& d : divisors)
        if (d.is_zero()) throw InvalidArgument("division by zero polynomial");

    DivisionResult res;
    res.quotients.assign(divisors.size(), MultiPoly::zero(p.ring()));
    res.remainder = MultiPoly::zero(p.ring());

    std::vector<Monomial> lts;
    std::vector<Rat> lcs;
    lts.reserve(divisors.size());
    for (const auto& d : divisors) {
        lts.push_back(d.leading_monomial(order));
        lcs.push_back(d.terms().at(lts.back()));
    }

    MultiPoly work = p;
    while (!work.is_zero()) {
        Monomial lm = work.leading_monomial(order);
        Rat lc = work.terms().at(lm);
        bool reduced = false;
        for (size_t i = 0; i < divisors.size(); ++i) {
            if (lts[i].divides(lm)) {
                Monomial q = lm / lts[i];
                Rat k = lc / lcs[i];
                MultiPoly t = MultiPoly::term(p.ring(), q, k);
                res.quotients[i] = res.quotients[i] + t;
                work = work - t * divisors[i];
                reduced = true;
                ++res.steps;
                if (step_budget >= 0 && res.steps > step_budget)
                    throw ResourceError("polynomial division exceeded step budget");
                break;
            }
        }
        if (!reduced) {
            MultiPoly t = MultiPoly::term(p.ring(), lm, lc);
            res.remainder = res.remainder + t;
            work = work - t;
        }
    }
    return res;
}

std::optional<MultiPoly> exact_divide(const MultiPoly& a, const MultiPoly& b) {
    if (b.is_zero()) throw InvalidArgument("division by zero polynomial");
    RingPtr u = ring_union(a.ring(), b.ring());
    MultiPoly ap = a.promoted(u), bp = b.promoted(u);
    MonomialOrder order = MonomialOrder::grevlex_for(*u);
    DivisionResult res = divide(ap, {bp}, order);
    if (!res.remainder.is_zero()) return std::nullopt;
    return res.quotients[0];
}

} // namespace sgikit
