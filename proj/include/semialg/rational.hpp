#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace semialg {

using Int = mpz_class;

// Exact rational scalar. mpq_class keeps the canonical form this library
// relies on everywhere: lowest terms, positive denominator, value equality.
// All arithmetic on canonical values stays canonical; only raw construction
// needs make_rat / parse_rat below.
using Rat = mpq_class;

Rat make_rat(const Int& num, const Int& den);
Rat make_rat(long num, long den = 1);

inline int sign_of(const Rat& x) { return sgn(x); }
inline int sign_of(const Int& x) { return sgn(x); }

Rat abs_rat(const Rat& x);
Int floor_rat(const Rat& x);
Int ceil_rat(const Rat& x);

Int pow_int(const Int& base, unsigned exp);
Rat pow_rat(const Rat& base, unsigned exp);

// Text form "p/q", or "p" when the denominator is 1; round-trips exactly.
Rat parse_rat(std::string_view text);
std::string rat_to_string(const Rat& x);

using Point = std::vector<Rat>;  // one point in R^d

}  // namespace semialg
