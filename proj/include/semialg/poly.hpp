#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "semialg/rational.hpp"

namespace semialg {

using ExponentVec = std::vector<unsigned>;

// Sparse multivariate polynomial over Q. Terms map exponent vectors (one
// entry per variable) to nonzero coefficients; the zero polynomial has an
// empty term map.
class Poly {
public:
    explicit Poly(unsigned num_vars = 1) : num_vars_(num_vars) {}

    static Poly zero(unsigned num_vars) { return Poly(num_vars); }
    static Poly constant(unsigned num_vars, const Rat& c);
    static Poly variable(unsigned num_vars, unsigned index);

    unsigned num_vars() const { return num_vars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    unsigned total_degree() const;  // 0 for the zero polynomial
    unsigned degree_in(unsigned var) const;
    const std::map<ExponentVec, Rat>& terms() const { return terms_; }

    // Accumulates coeff onto the term; drops the term if it cancels to zero.
    void add_term(const ExponentVec& exps, const Rat& coeff);

    Rat eval(std::span<const Rat> x) const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const Rat& c, const Poly& p);
    friend bool operator==(const Poly& a, const Poly& b) = default;

private:
    unsigned num_vars_;
    std::map<ExponentVec, Rat> terms_;
};

Rat eval_poly(const Poly& p, std::span<const Rat> x);

using SignVec = std::vector<int>;  // entries in {-1, 0, +1}

SignVec sign_vector(std::span<const Poly> polys, std::span<const Rat> x);

// Fixes the leading block of variables to the given values; the result is a
// polynomial in the remaining num_vars - |block| variables.
Poly substitute_block(const Poly& p, std::span<const Rat> block_values);

// Fixes an arbitrary subset of variables (engaged entries of `assignment`);
// the surviving variables keep their relative order and are renumbered.
Poly substitute_vars(const Poly& p, const std::vector<std::optional<Rat>>& assignment);

// Text format: sum of terms "c * x1^e1 * ... * xv^ev" with coefficients as
// "p/q"; printer and parser round-trip exactly.
std::string poly_to_string(const Poly& p);
Poly parse_poly(std::string_view text, unsigned num_vars);

// ceil((50*m*t/d)^d), the sign-pattern counting ceiling; requires m >= d >= 1
// and t >= 1.
Int milnor_thom_bound(unsigned m, unsigned d, unsigned t);

}  // namespace semialg
