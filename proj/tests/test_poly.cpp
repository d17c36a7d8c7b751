#include <vector>

#include "doctest.h"
#include "semialg/errors.hpp"
#include "semialg/poly.hpp"
#include "semialg/rng.hpp"

using namespace semialg;

namespace {

Poly x_squared_minus_2() {
    Poly p(1);
    p.add_term({2}, Rat(1));
    p.add_term({0}, Rat(-2));
    return p;
}

}  // namespace

TEST_CASE("eval_poly on the worked examples") {
    // x^2 - 2 at 3/2 -> 1/4
    std::vector<Rat> x{make_rat(3, 2)};
    CHECK(eval_poly(x_squared_minus_2(), x) == make_rat(1, 4));

    // zero polynomial evaluates to 0 anywhere
    CHECK(eval_poly(Poly::zero(3), std::vector<Rat>{Rat(1), Rat(2), Rat(3)}) == 0);

    // x1*x2 + 1 at (2, -1/2) -> 0
    Poly q(2);
    q.add_term({1, 1}, Rat(1));
    q.add_term({0, 0}, Rat(1));
    CHECK(eval_poly(q, std::vector<Rat>{Rat(2), make_rat(-1, 2)}) == 0);

    CHECK_THROWS_AS(eval_poly(q, std::vector<Rat>{Rat(1)}), ContractViolation);
}

TEST_CASE("sign_vector on the worked examples") {
    Poly x = Poly::variable(1, 0);
    Poly x_minus_1 = x - Poly::constant(1, Rat(1));
    Poly x_minus_2 = x - Poly::constant(1, Rat(2));
    Poly x_minus_3 = x - Poly::constant(1, Rat(3));

    std::vector<Poly> fam1{x, x_minus_1};
    CHECK(sign_vector(fam1, std::vector<Rat>{make_rat(1, 2)}) == SignVec{1, -1});

    Poly xx_plus_1(1);
    xx_plus_1.add_term({2}, Rat(1));
    xx_plus_1.add_term({0}, Rat(1));
    std::vector<Poly> fam2{xx_plus_1};
    for (long v : {-5L, 0L, 3L})
        CHECK(sign_vector(fam2, std::vector<Rat>{Rat(v)}) == SignVec{1});

    std::vector<Poly> fam3{x_minus_1, x_minus_2, x_minus_3};
    CHECK(sign_vector(fam3, std::vector<Rat>{Rat(2)}) == SignVec{1, 0, -1});
}

TEST_CASE("substitute_block") {
    // p(x1,x2) = x1*x2 - 1, fix x1 = 2 -> 2*x2 - 1
    Poly p(2);
    p.add_term({1, 1}, Rat(1));
    p.add_term({0, 0}, Rat(-1));
    Poly s = substitute_block(p, std::vector<Rat>{Rat(2)});
    Poly expect(1);
    expect.add_term({1}, Rat(2));
    expect.add_term({0}, Rat(-1));
    CHECK(s == expect);

    // x1^2 with x1 = 3 -> constant 9
    Poly q(2);
    q.add_term({2, 0}, Rat(1));
    Poly qs = substitute_block(q, std::vector<Rat>{Rat(3)});
    CHECK(qs == Poly::constant(1, Rat(9)));

    // x1+x2+x3 with (x1,x2) = (1,-1) -> x3
    Poly tri(3);
    tri.add_term({1, 0, 0}, Rat(1));
    tri.add_term({0, 1, 0}, Rat(1));
    tri.add_term({0, 0, 1}, Rat(1));
    Poly ts = substitute_block(tri, std::vector<Rat>{Rat(1), Rat(-1)});
    CHECK(ts == Poly::variable(1, 0));

    CHECK_THROWS_AS(substitute_block(q, std::vector<Rat>{Rat(1), Rat(2), Rat(3)}),
                    ContractViolation);

    // degree never increases
    CHECK(s.total_degree() <= p.total_degree());
}

TEST_CASE("poly text format round-trips exactly") {
    Rng rng(12345);
    std::uniform_int_distribution<int> coef(-20, 20);
    std::uniform_int_distribution<int> den(1, 9);
    std::uniform_int_distribution<unsigned> expd(0, 3);
    for (int trial = 0; trial < 50; ++trial) {
        unsigned nv = 1 + trial % 4;
        Poly p(nv);
        for (int t = 0; t < 5; ++t) {
            ExponentVec e(nv);
            for (auto& ei : e) ei = expd(rng);
            p.add_term(e, make_rat(coef(rng), den(rng)));
        }
        Poly back = parse_poly(poly_to_string(p), nv);
        CHECK(back == p);
    }
    CHECK(parse_poly("0", 2) == Poly::zero(2));
    CHECK(poly_to_string(Poly::zero(2)) == "0");
    // implied coefficient and explicit ^1 both accepted
    Poly a = parse_poly("x1 * x2^1 + -3", 2);
    Poly b(2);
    b.add_term({1, 1}, Rat(1));
    b.add_term({0, 0}, Rat(-3));
    CHECK(a == b);
    CHECK_THROWS_AS(parse_poly("x3", 2), ContractViolation);
    CHECK_THROWS_AS(parse_poly("1 +", 2), ContractViolation);
}

TEST_CASE("milnor_thom_bound values") {
    CHECK(milnor_thom_bound(1, 1, 1) == 50);
    CHECK(milnor_thom_bound(2, 1, 1) == 100);
    // (50*4*3/2)^2 = 300^2
    CHECK(milnor_thom_bound(4, 2, 3) == 90000);
    // integer base despite the division: (50*3*1/3)^3 = 50^3
    CHECK(milnor_thom_bound(3, 3, 1) == 125000);
    // non-integer base: ceil((50*4/3)^3) = ceil(8000000/27) = 296297
    CHECK(milnor_thom_bound(4, 3, 1) == 296297);
    CHECK_THROWS_AS(milnor_thom_bound(1, 2, 1), ContractViolation);
    CHECK_THROWS_AS(milnor_thom_bound(2, 1, 0), ContractViolation);
}

TEST_CASE("sign of exact eval matches double eval when the float is clearly nonzero") {
    // fast-path consistency: if |double eval| is large, the sign agrees
    Rng rng(99);
    std::uniform_int_distribution<int> coef(-8, 8);
    std::uniform_int_distribution<unsigned> expd(0, 3);
    std::uniform_int_distribution<int> val(-10, 10);
    for (int trial = 0; trial < 200; ++trial) {
        Poly p(2);
        for (int t = 0; t < 4; ++t) {
            ExponentVec e{expd(rng), expd(rng)};
            p.add_term(e, Rat(coef(rng)));
        }
        std::vector<Rat> pt{Rat(val(rng)), Rat(val(rng))};
        double approx = 0;
        for (const auto& [e, c] : p.terms()) {
            double term = c.get_d();
            for (unsigned v = 0; v < 2; ++v)
                for (unsigned k = 0; k < e[v]; ++k) term *= pt[v].get_d();
            approx += term;
        }
        Rat exact = eval_poly(p, pt);
        if (std::abs(approx) > 1e-6) CHECK(sign_of(exact) == (approx > 0 ? 1 : -1));
    }
}
