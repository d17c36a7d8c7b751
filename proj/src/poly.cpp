#include "semialg/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "semialg/errors.hpp"

namespace semialg {

Poly Poly::constant(unsigned num_vars, const Rat& c) {
    Poly p(num_vars);
    p.add_term(ExponentVec(num_vars, 0), c);
    return p;
}

Poly Poly::variable(unsigned num_vars, unsigned index) {
    if (index >= num_vars) throw ContractViolation("Poly::variable: index out of range");
    Poly p(num_vars);
    ExponentVec e(num_vars, 0);
    e[index] = 1;
    p.add_term(e, Rat(1));
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 &&
            std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                        [](unsigned e) { return e == 0; }));
}

unsigned Poly::total_degree() const {
    unsigned deg = 0;
    for (const auto& [e, c] : terms_)
        deg = std::max(deg, std::accumulate(e.begin(), e.end(), 0u));
    return deg;
}

unsigned Poly::degree_in(unsigned var) const {
    unsigned deg = 0;
    for (const auto& [e, c] : terms_) deg = std::max(deg, e[var]);
    return deg;
}

void Poly::add_term(const ExponentVec& exps, const Rat& coeff) {
    if (exps.size() != num_vars_)
        throw ContractViolation("Poly::add_term: exponent vector length mismatch");
    if (coeff == 0) return;
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
        terms_.emplace(exps, coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

Rat Poly::eval(std::span<const Rat> x) const {
    if (x.size() != num_vars_)
        throw ContractViolation("eval_poly: point dimension != num_vars");
    // power cache per variable, filled on demand
    std::vector<std::vector<Rat>> powers(num_vars_);
    for (unsigned v = 0; v < num_vars_; ++v) powers[v].push_back(Rat(1));
    Rat acc(0);
    for (const auto& [e, c] : terms_) {
        Rat term = c;
        for (unsigned v = 0; v < num_vars_; ++v) {
            if (e[v] == 0) continue;
            auto& pw = powers[v];
            while (pw.size() <= e[v]) pw.push_back(pw.back() * x[v]);
            term *= pw[e[v]];
        }
        acc += term;
    }
    return acc;
}

Poly Poly::operator-() const {
    Poly out(num_vars_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.num_vars_ != num_vars_)
        throw ContractViolation("Poly::operator+=: num_vars mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.num_vars_ != num_vars_)
        throw ContractViolation("Poly::operator-=: num_vars mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.num_vars_ != b.num_vars_)
        throw ContractViolation("Poly::operator*: num_vars mismatch");
    Poly out(a.num_vars_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            ExponentVec e(a.num_vars_);
            for (unsigned v = 0; v < a.num_vars_; ++v) e[v] = ea[v] + eb[v];
            out.add_term(e, ca * cb);
        }
    return out;
}

Poly operator*(const Rat& c, const Poly& p) {
    Poly out(p.num_vars_);
    if (c == 0) return out;
    for (const auto& [e, k] : p.terms_) out.terms_.emplace(e, c * k);
    return out;
}

Rat eval_poly(const Poly& p, std::span<const Rat> x) { return p.eval(x); }

SignVec sign_vector(std::span<const Poly> polys, std::span<const Rat> x) {
    SignVec out;
    out.reserve(polys.size());
    for (const Poly& p : polys) out.push_back(sign_of(p.eval(x)));
    return out;
}

Poly substitute_block(const Poly& p, std::span<const Rat> block_values) {
    if (block_values.size() > p.num_vars())
        throw ContractViolation("substitute_block: assignment longer than num_vars");
    std::vector<std::optional<Rat>> assignment(p.num_vars());
    for (std::size_t i = 0; i < block_values.size(); ++i) assignment[i] = block_values[i];
    return substitute_vars(p, assignment);
}

Poly substitute_vars(const Poly& p, const std::vector<std::optional<Rat>>& assignment) {
    if (assignment.size() != p.num_vars())
        throw ContractViolation("substitute_vars: assignment length != num_vars");
    std::vector<unsigned> kept;  // surviving variable indices, in order
    for (unsigned v = 0; v < p.num_vars(); ++v)
        if (!assignment[v]) kept.push_back(v);

    Poly out(static_cast<unsigned>(kept.size()));
    std::vector<std::vector<Rat>> powers(p.num_vars());
    for (unsigned v = 0; v < p.num_vars(); ++v) powers[v].push_back(Rat(1));

    for (const auto& [e, c] : p.terms()) {
        Rat coeff = c;
        for (unsigned v = 0; v < p.num_vars(); ++v) {
            if (!assignment[v] || e[v] == 0) continue;
            auto& pw = powers[v];
            while (pw.size() <= e[v]) pw.push_back(pw.back() * *assignment[v]);
            coeff *= pw[e[v]];
        }
        ExponentVec eo(kept.size());
        for (std::size_t i = 0; i < kept.size(); ++i) eo[i] = e[kept[i]];
        out.add_term(eo, coeff);
    }
    return out;
}

namespace {

std::string term_to_string(const ExponentVec& e, const Rat& c) {
    std::string s = rat_to_string(c);
    for (unsigned v = 0; v < e.size(); ++v) {
        if (e[v] == 0) continue;
        s += " * x" + std::to_string(v + 1);
        if (e[v] != 1) s += "^" + std::to_string(e[v]);
    }
    return s;
}

}  // namespace

std::string poly_to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    // highest exponent vector first, constant term last
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        if (out.empty()) {
            out = term_to_string(e, c);
        } else if (c < 0) {
            out += " - " + term_to_string(e, -c);
        } else {
            out += " + " + term_to_string(e, c);
        }
    }
    return out;
}

namespace {

struct PolyParser {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    std::string_view number_token() {
        skip_ws();
        std::size_t start = pos;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
        std::size_t digits = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == digits) throw ContractViolation("parse_poly: expected number near position " +
                                                   std::to_string(start));
        if (pos < text.size() && text[pos] == '/') {
            ++pos;
            std::size_t d2 = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos == d2) throw ContractViolation("parse_poly: expected denominator");
        }
        return text.substr(start, pos - start);
    }

    // one factor: either a rational coefficient or "x<k>[^<e>]"
    void parse_term(Poly& out, unsigned num_vars, int outer_sign) {
        Rat coeff(outer_sign);
        ExponentVec e(num_vars, 0);
        bool saw_factor = false;
        for (;;) {
            skip_ws();
            if (pos < text.size() && (text[pos] == 'x' || text[pos] == 'X')) {
                ++pos;
                std::size_t d = pos;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                    ++pos;
                if (pos == d) throw ContractViolation("parse_poly: expected variable index");
                unsigned idx = static_cast<unsigned>(
                    std::stoul(std::string(text.substr(d, pos - d))));
                if (idx < 1 || idx > num_vars)
                    throw ContractViolation("parse_poly: variable x" + std::to_string(idx) +
                                            " out of range for " + std::to_string(num_vars) +
                                            " variables");
                unsigned exp = 1;
                if (pos < text.size() && text[pos] == '^') {
                    ++pos;
                    std::size_t d2 = pos;
                    while (pos < text.size() &&
                           std::isdigit(static_cast<unsigned char>(text[pos])))
                        ++pos;
                    if (pos == d2) throw ContractViolation("parse_poly: expected exponent");
                    exp = static_cast<unsigned>(
                        std::stoul(std::string(text.substr(d2, pos - d2))));
                }
                e[idx - 1] += exp;
            } else {
                coeff *= parse_rat(number_token());
            }
            saw_factor = true;
            if (!accept('*')) break;
        }
        if (!saw_factor) throw ContractViolation("parse_poly: empty term");
        out.add_term(e, coeff);
    }
};

}  // namespace

Poly parse_poly(std::string_view text, unsigned num_vars) {
    Poly out(num_vars);
    PolyParser pp{text};
    if (pp.done()) throw ContractViolation("parse_poly: empty input");
    int sign = 1;
    if (pp.accept('-')) sign = -1;
    else pp.accept('+');
    pp.parse_term(out, num_vars, sign);
    while (!pp.done()) {
        if (pp.accept('+')) sign = 1;
        else if (pp.accept('-')) sign = -1;
        else
            throw ContractViolation("parse_poly: expected '+' or '-' near position " +
                                    std::to_string(pp.pos));
        pp.parse_term(out, num_vars, sign);
    }
    return out;
}

Int milnor_thom_bound(unsigned m, unsigned d, unsigned t) {
    if (d < 1 || m < d) throw ContractViolation("milnor_thom_bound: requires m >= d >= 1");
    if (t < 1) throw ContractViolation("milnor_thom_bound: requires t >= 1");
    Rat base = make_rat(Int(50) * m * t, Int(d));
    return ceil_rat(pow_rat(base, d));
}

}  // namespace semialg
