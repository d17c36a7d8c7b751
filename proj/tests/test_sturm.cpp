#include <vector>

#include "doctest.h"
#include "semialg/errors.hpp"
#include "semialg/rng.hpp"
#include "semialg/sturm.hpp"

using namespace semialg;

namespace {

UniPoly from_ints(std::initializer_list<long> coeffs) {
    std::vector<Rat> c;
    for (long v : coeffs) c.emplace_back(v);
    return UniPoly(std::move(c));
}

}  // namespace

TEST_CASE("unipoly division is exact") {
    // (x^2 - 1) = (x + 1)(x - 1)
    UniPoly num = from_ints({-1, 0, 1});
    UniPoly den = from_ints({1, 1});
    UniPoly q, r;
    UniPoly::divmod(num, den, q, r);
    CHECK(r.is_zero());
    CHECK(q.coeffs() == std::vector<Rat>{Rat(-1), Rat(1)});
}

TEST_CASE("isolate_real_roots: x^2 - 2") {
    Poly p(1);
    p.add_term({2}, Rat(1));
    p.add_term({0}, Rat(-2));
    RootIntervals ri = isolate_real_roots(p);
    REQUIRE(ri.count() == 2);
    // one negative, one positive, neither pinned
    CHECK(!ri.intervals[0].exact);
    CHECK(!ri.intervals[1].exact);
    CHECK(ri.intervals[0].hi < ri.intervals[1].lo);
    // each interval has one sign change of p
    UniPoly u = UniPoly::from_poly(p);
    for (const auto& iv : ri.intervals)
        CHECK(u.sign_at(iv.lo) * u.sign_at(iv.hi) == -1);
    // bracket sqrt(2): the positive interval straddles 1.414...
    CHECK(ri.intervals[1].lo * ri.intervals[1].lo < 2);
    CHECK(ri.intervals[1].hi * ri.intervals[1].hi > 2);
}

TEST_CASE("isolate_real_roots: (x-1)(x-2)(x-3) pins 1, 2, 3") {
    // x^3 - 6x^2 + 11x - 6
    Poly p(1);
    p.add_term({3}, Rat(1));
    p.add_term({2}, Rat(-6));
    p.add_term({1}, Rat(11));
    p.add_term({0}, Rat(-6));
    RootIntervals ri = isolate_real_roots(p);
    REQUIRE(ri.count() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(ri.intervals[i].exact);
        CHECK(ri.intervals[i].lo == Rat(i + 1));
        CHECK(ri.intervals[i].hi == Rat(i + 1));
        CHECK(eval_poly(p, std::vector<Rat>{ri.intervals[i].lo}) == 0);
    }
}

TEST_CASE("isolate_real_roots: x^2 + 1 has no real roots") {
    Poly p(1);
    p.add_term({2}, Rat(1));
    p.add_term({0}, Rat(1));
    CHECK(isolate_real_roots(p).count() == 0);
}

TEST_CASE("isolate_real_roots error cases") {
    CHECK_THROWS_AS(isolate_real_roots(Poly::zero(1)), ContractViolation);
    Poly big(1);
    big.add_term({9}, Rat(1));
    CHECK_THROWS_AS(isolate_real_roots(big), BudgetExceeded);
    // constant nonzero: no roots
    CHECK(isolate_real_roots(Poly::constant(1, Rat(5))).count() == 0);
}

TEST_CASE("sturm certification of every returned interval") {
    // random products of linear and irreducible quadratic factors
    Rng rng(4242);
    std::uniform_int_distribution<int> root(-6, 6);
    for (int trial = 0; trial < 40; ++trial) {
        // distinct roots
        std::vector<int> roots;
        for (int tries = 0; tries < 4; ++tries) {
            int r = root(rng);
            bool dup = false;
            for (int s : roots) dup |= (s == r);
            if (!dup) roots.push_back(r);
        }
        UniPoly p = from_ints({1});
        for (int r : roots) {
            UniPoly factor = from_ints({-r, 1});
            std::vector<Rat> prod(p.coeffs().size() + 1, Rat(0));
            for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
                prod[i] += p.coeffs()[i] * factor.coeffs()[0];
                prod[i + 1] += p.coeffs()[i] * factor.coeffs()[1];
            }
            p = UniPoly(std::move(prod));
        }
        // one irreducible factor x^2 + 1 to mix in complex roots
        {
            std::vector<Rat> prod(p.coeffs().size() + 2, Rat(0));
            for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
                prod[i] += p.coeffs()[i];
                prod[i + 2] += p.coeffs()[i];
            }
            p = UniPoly(std::move(prod));
        }
        RootIntervals ri = isolate_real_roots(p);
        CHECK(ri.count() == roots.size());

        SturmChain chain = sturm_chain(p);
        for (std::size_t i = 0; i < ri.count(); ++i) {
            const auto& iv = ri.intervals[i];
            if (iv.exact) {
                CHECK(p.eval(iv.lo) == 0);
            } else {
                CHECK(chain.count_roots(iv.lo, iv.hi) == 1);
            }
            if (i + 1 < ri.count()) {
                // strict disjointness
                CHECK(iv.hi < ri.intervals[i + 1].lo);
            }
        }
    }
}

TEST_CASE("multiple roots are isolated once") {
    // (x-1)^2 * (x+2) = x^3 - 3x + 2
    UniPoly p = from_ints({2, -3, 0, 1});
    CHECK(p.eval(Rat(1)) == 0);
    CHECK(p.derivative().eval(Rat(1)) == 0);
    RootIntervals ri = isolate_real_roots(p);
    REQUIRE(ri.count() == 2);
    CHECK(ri.intervals[0].lo == Rat(-2));
    CHECK(ri.intervals[0].exact);
    CHECK(ri.intervals[1].lo == Rat(1));
    CHECK(ri.intervals[1].exact);
}

TEST_CASE("variation counts respect interval semantics") {
    // roots of x^2 - 4 are -2 and 2
    UniPoly p = from_ints({-4, 0, 1});
    SturmChain chain = sturm_chain(p);
    CHECK(chain.count_all_roots() == 2);
    CHECK(chain.count_roots(Rat(-3), Rat(3)) == 2);
    CHECK(chain.count_roots(Rat(0), Rat(2)) == 1);   // (0, 2] includes 2
    CHECK(chain.count_roots(Rat(2), Rat(3)) == 0);   // (2, 3] excludes 2
    CHECK(chain.count_roots(Rat(-2), Rat(0)) == 0);  // (-2, 0] excludes -2
}
