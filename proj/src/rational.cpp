#include "semialg/rational.hpp"

#include <cctype>

#include "semialg/errors.hpp"

namespace semialg {

Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw ContractViolation("make_rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

Rat make_rat(long num, long den) { return make_rat(Int(num), Int(den)); }

Rat abs_rat(const Rat& x) { return x < 0 ? Rat(-x) : x; }

Int floor_rat(const Rat& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return q;
}

Int ceil_rat(const Rat& x) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return q;
}

Int pow_int(const Int& base, unsigned exp) {
    Int out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
    return out;
}

Rat pow_rat(const Rat& base, unsigned exp) {
    return make_rat(pow_int(base.get_num(), exp), pow_int(base.get_den(), exp));
}

namespace {

bool is_integer_token(std::string_view s) {
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rat parse_rat(std::string_view text) {
    // trim
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
        text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
        text.remove_suffix(1);
    if (text.empty()) throw ContractViolation("parse_rat: empty token");

    auto slash = text.find('/');
    std::string_view num_s = text.substr(0, slash);
    if (!is_integer_token(num_s))
        throw ContractViolation("parse_rat: bad numerator in '" + std::string(text) + "'");
    Int num(std::string(num_s), 10);
    if (slash == std::string_view::npos) return Rat(num);

    std::string_view den_s = text.substr(slash + 1);
    if (!is_integer_token(den_s) || den_s.front() == '-' || den_s.front() == '+')
        throw ContractViolation("parse_rat: bad denominator in '" + std::string(text) + "'");
    Int den(std::string(den_s), 10);
    return make_rat(num, den);
}

std::string rat_to_string(const Rat& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

}  // namespace semialg
