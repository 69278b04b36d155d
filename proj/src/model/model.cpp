#include "model.hpp"

#include <fstream>
#include <sstream>

#include "../core/errors.hpp"

namespace sgikit::model {

std::string to_string(StructureClass c) {
    switch (c) {
        case StructureClass::general_lti: return "general-lti";
        case StructureClass::positive: return "positive";
        case StructureClass::compartmental: return "compartmental";
    }
    return "?";
}

bool StructureSpec::param_positive(const std::string& name) const {
    for (const auto& u : unsigned_free_params)
        if (u == name) return false;
    return true;
}

std::pair<MultiPoly, MultiPoly> InputSignal::laplace(const RingPtr& ring,
                                                     int s_var) const {
    MultiPoly one = MultiPoly::constant(ring, rat(1));
    MultiPoly s = MultiPoly::variable(ring, s_var);
    switch (kind) {
        case Kind::impulse: return {one, one};
        case Kind::step: return {one, s};
        case Kind::ramp: return {one, s * s};
        case Kind::exponential: return {one, s - MultiPoly::constant(ring, rate)};
        case Kind::none: return {MultiPoly::zero(ring), one};
    }
    throw InvalidArgument("unknown input kind");
}

Rat InputSignal::value_at_zero() const {
    switch (kind) {
        case Kind::step:
        case Kind::exponential: return rat(1);
        default: return rat(0);
    }
}

std::string InputSignal::describe() const {
    switch (kind) {
        case Kind::impulse: return "impulse";
        case Kind::step: return "step";
        case Kind::ramp: return "ramp";
        case Kind::exponential: return "exponential(" + rat_to_string(rate) + ")";
        case Kind::none: return "none";
    }
    return "?";
}

std::string InputSet::describe() const {
    switch (mode) {
        case Mode::full: return "full";
        case Mode::uncontrolled: return "uncontrolled";
        case Mode::restricted: {
            std::string s = "restricted(";
            for (size_t i = 0; i < signals.size(); ++i) {
                if (i) s += ",";
                s += signals[i].describe();
            }
            return s + ")";
        }
    }
    return "?";
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

struct PendingEntry {
    std::string matrix;
    int i, j;
    std::string expr;
    int line;
    int expr_col;
};

} // namespace

StructureSpec parse_structure(const std::string& text) {
    StructureSpec spec;
    std::vector<std::string> param_names;
    bool have_params = false, have_states = false, have_outputs = false;
    bool have_inputs = false;
    std::vector<PendingEntry> entries;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        const std::string& head = toks[0];

        auto need = [&](size_t n, const char* usage) {
            if (toks.size() != n)
                throw ParseError(std::string("expected '") + usage + "'", lineno, 1);
        };
        auto to_int = [&](const std::string& s, const char* what) {
            try {
                size_t used = 0;
                int v = std::stoi(s, &used);
                if (used != s.size() || v < 0) throw std::invalid_argument("");
                return v;
            } catch (...) {
                throw ParseError(std::string("invalid ") + what + " '" + s + "'",
                                 lineno, 1);
            }
        };

        if (head == "name") {
            need(2, "name <identifier>");
            spec.name = toks[1];
        } else if (head == "params") {
            if (toks.size() < 2) throw ParseError("params needs at least one name", lineno, 1);
            param_names.assign(toks.begin() + 1, toks.end());
            have_params = true;
        } else if (head == "states") {
            need(2, "states <n>");
            spec.n = to_int(toks[1], "state count");
            have_states = true;
        } else if (head == "inputs") {
            need(2, "inputs <m>");
            spec.m = to_int(toks[1], "input count");
            have_inputs = true;
        } else if (head == "outputs") {
            need(2, "outputs <k>");
            spec.k = to_int(toks[1], "output count");
            have_outputs = true;
        } else if (head == "class") {
            need(2, "class <general-lti|positive|compartmental>");
            if (toks[1] == "general-lti") spec.clazz = StructureClass::general_lti;
            else if (toks[1] == "positive") spec.clazz = StructureClass::positive;
            else if (toks[1] == "compartmental") spec.clazz = StructureClass::compartmental;
            else throw ParseError("unknown class '" + toks[1] + "'", lineno, 1);
        } else if (head == "domain") {
            need(3, "domain <param> <positive|real>");
            if (toks[2] == "real") spec.unsigned_free_params.push_back(toks[1]);
            else if (toks[2] != "positive")
                throw ParseError("domain must be 'positive' or 'real'", lineno, 1);
        } else if (head == "A" || head == "B" || head == "C" || head == "x0") {
            size_t eq = line.find('=');
            if (eq == std::string::npos)
                throw ParseError("matrix entry needs '= <expr>'", lineno, 1);
            auto lhs = split_ws(line.substr(0, eq));
            int want = head == "x0" ? 2 : 3;
            if (static_cast<int>(lhs.size()) != want)
                throw ParseError(head == "x0" ? "expected 'x0 <i> = <expr>'"
                                              : "expected '" + head + " <i> <j> = <expr>'",
                                 lineno, 1);
            int i = to_int(lhs[1], "index");
            int j = head == "x0" ? 1 : to_int(lhs[2], "index");
            entries.push_back({head, i, j, line.substr(eq + 1), lineno,
                               static_cast<int>(eq) + 2});
        } else {
            throw ParseError("unknown directive '" + head + "'", lineno, 1);
        }
    }

    if (!have_params) throw ParseError("missing 'params' line", lineno, 1);
    if (!have_states) throw ParseError("missing 'states' line", lineno, 1);
    if (!have_outputs) throw ParseError("missing 'outputs' line", lineno, 1);
    if (!have_inputs) spec.m = 0;
    if (spec.n <= 0) throw ParseError("states must be >= 1", lineno, 1);
    if (spec.k <= 0) throw ParseError("outputs must be >= 1", lineno, 1);
    if (spec.name.empty()) spec.name = "unnamed";

    spec.params = make_ring(param_names);
    for (const auto& u : spec.unsigned_free_params)
        if (!spec.params->contains(u))
            throw ParseError("domain names undeclared parameter '" + u + "'");

    MultiPoly z = MultiPoly::zero(spec.params);
    spec.A.assign(spec.n, std::vector<MultiPoly>(spec.n, z));
    spec.B.assign(spec.n, std::vector<MultiPoly>(std::max(spec.m, 0), z));
    spec.C.assign(spec.k, std::vector<MultiPoly>(spec.n, z));
    spec.x0.assign(spec.n, z);

    for (const auto& e : entries) {
        MultiPoly value;
        try {
            value = MultiPoly::parse(e.expr, spec.params);
        } catch (const ParseError& pe) {
            throw ParseError(e.matrix + " " + std::to_string(e.i) +
                                 " entry: " + pe.what(),
                             e.line, e.expr_col + pe.col());
        }
        auto check = [&](int idx, int max, const char* what) {
            if (idx < 1 || idx > max)
                throw ParseError(e.matrix + " " + what + " index " +
                                     std::to_string(idx) + " out of range [1," +
                                     std::to_string(max) + "]",
                                 e.line, 1);
        };
        if (e.matrix == "A") {
            check(e.i, spec.n, "row");
            check(e.j, spec.n, "column");
            spec.A[e.i - 1][e.j - 1] = value;
        } else if (e.matrix == "B") {
            if (spec.m == 0)
                throw ParseError("B entry in an uncontrolled structure", e.line, 1);
            check(e.i, spec.n, "row");
            check(e.j, spec.m, "column");
            spec.B[e.i - 1][e.j - 1] = value;
        } else if (e.matrix == "C") {
            check(e.i, spec.k, "row");
            check(e.j, spec.n, "column");
            spec.C[e.i - 1][e.j - 1] = value;
        } else {
            check(e.i, spec.n, "row");
            spec.x0[e.i - 1] = value;
        }
    }
    return spec;
}

StructureSpec parse_structure_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open model file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_structure(buf.str());
}

std::string print_structure(const StructureSpec& spec) {
    std::ostringstream out;
    out << "name " << spec.name << "\n";
    out << "params";
    for (const auto& p : spec.params->names()) out << " " << p;
    out << "\n";
    out << "states " << spec.n << "\n";
    out << "inputs " << spec.m << "\n";
    out << "outputs " << spec.k << "\n";
    out << "class " << to_string(spec.clazz) << "\n";
    for (const auto& u : spec.unsigned_free_params) out << "domain " << u << " real\n";
    auto emit = [&](const char* name, const std::vector<std::vector<MultiPoly>>& mat) {
        for (size_t i = 0; i < mat.size(); ++i)
            for (size_t j = 0; j < mat[i].size(); ++j)
                if (!mat[i][j].is_zero())
                    out << name << " " << i + 1 << " " << j + 1 << " = "
                        << mat[i][j].to_string() << "\n";
    };
    emit("A", spec.A);
    emit("B", spec.B);
    emit("C", spec.C);
    for (size_t i = 0; i < spec.x0.size(); ++i)
        if (!spec.x0[i].is_zero())
            out << "x0 " << i + 1 << " = " << spec.x0[i].to_string() << "\n";
    return out.str();
}

namespace {

// Classify a polynomial entry for the syntactic non-negativity test.
// 0: all coefficients >= 0. 1: provably negative somewhere on the positive
// orthant (negative value at the all-ones point). 2: inconclusive.
int sign_class(const MultiPoly& p) {
    bool has_negative = false;
    for (const auto& [m, c] : p.terms())
        if (sgn(c) < 0) has_negative = true;
    if (!has_negative) return 0;
    std::vector<Rat> ones(p.ring()->size(), rat(1));
    if (sgn(p.eval(ones)) < 0) return 1;
    return 2;
}

void classify_entry(std::vector<Violation>& out, const MultiPoly& p,
                    const std::string& where) {
    switch (sign_class(p)) {
        case 0: return;
        case 1: out.push_back({where, "has a negative value on the positive domain", true});
            return;
        default:
            out.push_back({where, "could not verify non-negativity (mixed coefficient signs)",
                           false});
    }
}

} // namespace

std::vector<Violation> check_compartmental(const StructureSpec& spec) {
    std::vector<Violation> out;
    for (int i = 0; i < spec.n; ++i)
        for (int j = 0; j < spec.n; ++j)
            if (i != j)
                classify_entry(out, spec.A[i][j],
                               "A[" + std::to_string(i + 1) + "," +
                                   std::to_string(j + 1) + "]");
    for (int j = 0; j < spec.n; ++j) {
        // Column excess -a_jj - sum_{i != j} a_ij must be non-negative.
        MultiPoly excess = -spec.A[j][j];
        for (int i = 0; i < spec.n; ++i)
            if (i != j) excess = excess - spec.A[i][j];
        switch (sign_class(excess)) {
            case 0: break;
            case 1:
                out.push_back({"A column " + std::to_string(j + 1),
                               "diagonal excess in column " + std::to_string(j + 1) +
                                   " (column sum can be positive)",
                               true});
                break;
            default:
                out.push_back({"A column " + std::to_string(j + 1),
                               "could not verify column-sum condition", false});
        }
    }
    for (int i = 0; i < spec.n; ++i)
        for (int j = 0; j < spec.m; ++j)
            classify_entry(out, spec.B[i][j],
                           "B[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]");
    for (int i = 0; i < spec.k; ++i)
        for (int j = 0; j < spec.n; ++j)
            classify_entry(out, spec.C[i][j],
                           "C[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]");
    for (int i = 0; i < spec.n; ++i)
        classify_entry(out, spec.x0[i], "x0[" + std::to_string(i + 1) + "]");
    return out;
}

void validate_input_set(const StructureSpec& spec, const InputSet& input) {
    if (input.mode == InputSet::Mode::restricted && spec.m < 1)
        throw InvalidArgument("restricted input set requires at least one input channel");
    if (input.mode == InputSet::Mode::uncontrolled && spec.m != 0)
        throw InvalidArgument("uncontrolled analysis of a structure with inputs; "
                              "use --inputs none to ignore the input channels");
}

bool check_nondegenerate_start(const StructureSpec& spec, const InputSet& input,
                               int trials, uint64_t seed) {
    // An impulse (or the unrestricted full set on a controlled structure)
    // displaces any equilibrium start.
    if (spec.m > 0) {
        if (input.mode == InputSet::Mode::full) return true;
        for (const auto& sig : input.signals)
            if (sig.kind == InputSignal::Kind::impulse) return true;
    }

    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        std::vector<Rat> theta;
        for (int i = 0; i < spec.p(); ++i) theta.push_back(random_positive_rat(rng));
        std::vector<Rat> x0(spec.n);
        for (int i = 0; i < spec.n; ++i) x0[i] = spec.x0[i].eval(theta);
        bool nonzero = false;
        for (int i = 0; i < spec.n && !nonzero; ++i) {
            Rat v(0);
            for (int j = 0; j < spec.n; ++j) v += spec.A[i][j].eval(theta) * x0[j];
            if (input.mode == InputSet::Mode::restricted) {
                for (const auto& sig : input.signals) {
                    Rat u0 = sig.value_at_zero();
                    if (sgn(u0) != 0)
                        for (int j = 0; j < spec.m; ++j)
                            v += spec.B[i][j].eval(theta) * u0;
                }
            }
            if (sgn(v) != 0) nonzero = true;
        }
        if (!nonzero) return false;
    }
    return true;
}

} // namespace sgikit::model
