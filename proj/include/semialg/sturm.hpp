#pragma once

#include <optional>
#include <vector>

#include "semialg/poly.hpp"
#include "semialg/rational.hpp"

namespace semialg {

// Dense univariate polynomial over Q; coefficient i multiplies x^i.
// Normalized: no stored leading zeros.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rat> coeffs);
    static UniPoly from_poly(const Poly& p);  // p.num_vars() must be 1
    Poly to_poly() const;

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
    const std::vector<Rat>& coeffs() const { return coeffs_; }
    const Rat& leading() const { return coeffs_.back(); }

    Rat eval(const Rat& x) const;
    int sign_at(const Rat& x) const { return sign_of(eval(x)); }
    // sign as x -> +inf / -inf
    int sign_at_pos_inf() const;
    int sign_at_neg_inf() const;

    UniPoly derivative() const;
    UniPoly operator-() const;
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(const Rat& c, const UniPoly& p);

    // Euclidean division; both quotient and remainder are exact over Q.
    static void divmod(const UniPoly& num, const UniPoly& den, UniPoly& quot, UniPoly& rem);

    // Divides by the positive content so coefficients become coprime
    // integers; the sign of every value is unchanged.
    UniPoly primitive() const;

    // All roots lie strictly inside (-bound, bound).
    Rat cauchy_root_bound() const;

private:
    std::vector<Rat> coeffs_;
    void normalize();
};

UniPoly gcd(const UniPoly& a, const UniPoly& b);  // primitive, nonnegative leading

struct SturmChain {
    std::vector<UniPoly> seq;  // seq[0] = p, seq[1] = p', remainders follow

    int variations_at(const Rat& x) const;
    int variations_at_pos_inf() const;
    int variations_at_neg_inf() const;
    // Number of distinct real roots of seq[0] in (a, b]; requires a <= b.
    int count_roots(const Rat& a, const Rat& b) const;
    int count_all_roots() const;
};

// Requires p squarefree-or-not, nonzero; content is removed at every step so
// coefficient growth stays tame.
SturmChain sturm_chain(const UniPoly& p);

struct RootInterval {
    Rat lo, hi;   // lo <= hi; lo == hi exactly when the root is pinned
    bool exact;   // true iff the root is rational and pinned
    bool is_point() const { return exact; }
};

struct RootIntervals {
    std::vector<RootInterval> intervals;  // sorted; pairwise disjoint as sets
    std::size_t count() const { return intervals.size(); }
};

struct RootIsolationOptions {
    unsigned degree_cap = 8;
    // Rational-root pinning enumerates divisors of the primitive leading and
    // trailing coefficients; skipped when either magnitude exceeds this.
    Int divisor_bound = 1000000;
};

// One interval per distinct real root of p (num_vars == 1). Intervals with
// lo < hi contain exactly one root strictly inside and p is nonzero at both
// endpoints; pinned entries satisfy p(lo) == 0 exactly.
// Throws ContractViolation for the zero polynomial (its zero set is all of R)
// and BudgetExceeded above the degree cap.
RootIntervals isolate_real_roots(const Poly& p, const RootIsolationOptions& opts = {});
RootIntervals isolate_real_roots(const UniPoly& p, const RootIsolationOptions& opts = {});

// Exposed so callers can re-certify isolation intervals independently.
int sturm_variations(const SturmChain& chain, const Rat& x);

}  // namespace semialg
