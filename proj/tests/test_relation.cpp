#include <sstream>

#include "doctest.h"
#include "semialg/errors.hpp"
#include "semialg/relation.hpp"

using namespace semialg;

namespace {

// k=2, d=1, single poly f(x,y) = y - x - 1, Phi = identity on its condition
SemiAlgRelation shifted_less_relation() {
    Poly f(2);
    f.add_term({0, 1}, Rat(1));
    f.add_term({1, 0}, Rat(-1));
    f.add_term({0, 0}, Rat(-1));
    return SemiAlgRelation(2, 1, {f}, {false, true}, 1);
}

// k=3, d=2 orientation determinant of three planar points
Poly orientation_poly() {
    // (x2-x1)(y3-y1) - (y2-y1)(x3-x1), variables (x1,y1,x2,y2,x3,y3)
    Poly p(6);
    auto v = [](unsigned i) { return Poly::variable(6, i); };
    return (v(2) - v(0)) * (v(5) - v(1)) - (v(3) - v(1)) * (v(4) - v(0));
}

SemiAlgRelation collinear_relation() {
    // f = 0 encoded as (f >= 0) and (-f >= 0)
    Poly f = orientation_poly();
    std::vector<bool> table(4, false);
    table[3] = true;
    return SemiAlgRelation(3, 2, {f, -f}, table, 2);
}

}  // namespace

TEST_CASE("tuple_in_relation worked examples") {
    SemiAlgRelation r = shifted_less_relation();
    CHECK(tuple_in_relation(r, std::vector<Point>{{Rat(0)}, {Rat(2)}}));
    CHECK(!tuple_in_relation(r, std::vector<Point>{{Rat(0)}, {make_rat(1, 2)}}));
    // boundary: sign 0 counts as ">= 0 holds"
    CHECK(tuple_in_relation(r, std::vector<Point>{{Rat(0)}, {Rat(1)}}));

    SemiAlgRelation col = collinear_relation();
    std::vector<Point> diag{{Rat(0), Rat(0)}, {Rat(1), Rat(1)}, {Rat(2), Rat(2)}};
    CHECK(tuple_in_relation(col, diag));
    std::vector<Point> bent{{Rat(0), Rat(0)}, {Rat(1), Rat(1)}, {Rat(2), Rat(3)}};
    CHECK(!tuple_in_relation(col, bent));

    std::vector<Point> short_tuple{{Rat(0), Rat(0)}, {Rat(1), Rat(1)}};
    CHECK_THROWS_AS(tuple_in_relation(col, short_tuple), ContractViolation);
}

TEST_CASE("tuple membership depends only on the sign vector") {
    SemiAlgRelation r = shifted_less_relation();
    // two pairs with the same sign of y - x - 1 agree on membership
    std::vector<Point> a{{Rat(0)}, {Rat(5)}};
    std::vector<Point> b{{Rat(-7)}, {Rat(3)}};
    CHECK(sign_vector(r.polys(), std::vector<Rat>{Rat(0), Rat(5)}) ==
          sign_vector(r.polys(), std::vector<Rat>{Rat(-7), Rat(3)}));
    CHECK(tuple_in_relation(r, a) == tuple_in_relation(r, b));
}

TEST_CASE("check_symmetric") {
    PointSet sample = point_set_1d({Rat(0), Rat(1), Rat(2), Rat(3), make_rat(7, 2)});

    // |x-y| >= 1 is symmetric
    Poly f(2);  // (x-y)^2 - 1
    auto x = Poly::variable(2, 0), y = Poly::variable(2, 1);
    f = (x - y) * (x - y) - Poly::constant(2, Rat(1));
    SemiAlgRelation dist(2, 1, {f}, {false, true}, 2);
    CHECK(check_symmetric(dist, sample, 20, 7).symmetric);

    // y - x >= 0 is not
    Poly g = y - x;
    SemiAlgRelation leq(2, 1, {g}, {false, true}, 1);
    SymmetryReport rep = check_symmetric(leq, sample, 20, 7);
    CHECK(!rep.symmetric);
    CHECK(!rep.counterexample.empty());
}

TEST_CASE("relation file format round-trip") {
    SemiAlgRelation col = collinear_relation();
    std::string text = relation_to_string(col);
    SemiAlgRelation back = parse_relation_text(text);
    CHECK(back.arity() == col.arity());
    CHECK(back.dim() == col.dim());
    CHECK(back.complexity() == col.complexity());
    CHECK(back.polys() == col.polys());
    CHECK(back.truth_table() == col.truth_table());

    CHECK_THROWS_AS(parse_relation_text("2 1 1\nx1\n101"), ContractViolation);
}

TEST_CASE("interval distance relation membership and export agree") {
    // |x-y| in {1, 4} on integers
    IntervalDistanceRelation idr(Rat(1), Rat(4), Rat(1), make_rat(1, 2), {Int(1), Int(4)});
    SemiAlgRelation sa = idr.to_semialg();
    for (long a = 1; a <= 6; ++a)
        for (long b = 1; b <= 6; ++b) {
            if (a == b) continue;
            Point pa{Rat(a)}, pb{Rat(b)};
            bool expect = (std::abs(a - b) == 1 || std::abs(a - b) == 4);
            CHECK(idr.contains_pair(pa, pb) == expect);
            CHECK(sa.contains_pair(pa, pb) == expect);
        }
    // surfaces for a fixed point are univariate with roots at p +- theta
    auto surfaces = idr.surfaces_for({Rat(10)});
    CHECK(surfaces.size() == 2 + 2 * 2);
    for (const Poly& s : surfaces) CHECK(s.num_vars() == 1);
    CHECK(eval_poly(surfaces[0], std::vector<Rat>{Rat(11)}) == 0);  // window_lo boundary
}

TEST_CASE("relation constructor validation") {
    Poly f(2);
    f.add_term({1, 0}, Rat(1));
    CHECK_THROWS_AS(SemiAlgRelation(2, 1, {f}, {false}, 1), ContractViolation);  // table size
    CHECK_THROWS_AS(SemiAlgRelation(2, 1, {f, f}, {false, true, true, false}, 1),
                    ContractViolation);  // more polys than t
    Poly g(3);
    g.add_term({1, 0, 0}, Rat(1));
    CHECK_THROWS_AS(SemiAlgRelation(2, 1, {g}, {false, true}, 1),
                    ContractViolation);  // wrong variable count
}
