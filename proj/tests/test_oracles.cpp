#include "doctest.h"
#include "semialg/errors.hpp"
#include "semialg/oracles.hpp"

using namespace semialg;

namespace {

SemiAlgRelation empty_relation(unsigned k, unsigned d) {
    // Phi identically 0 over one trivial condition
    Poly f = Poly::constant(k * d, Rat(1));
    return SemiAlgRelation(k, d, {f}, {false, false}, 1);
}

SemiAlgRelation full_relation(unsigned k, unsigned d) {
    Poly f = Poly::constant(k * d, Rat(1));
    return SemiAlgRelation(k, d, {f}, {true, true}, 1);
}

Poly orientation_poly() {
    Poly p(6);
    auto v = [](unsigned i) { return Poly::variable(6, i); };
    return (v(2) - v(0)) * (v(5) - v(1)) - (v(3) - v(1)) * (v(4) - v(0));
}

SemiAlgRelation collinear_relation() {
    Poly f = orientation_poly();
    std::vector<bool> table(4, false);
    table[3] = true;
    return SemiAlgRelation(3, 2, {f, -f}, table, 2);
}

SemiAlgRelation positive_orientation_relation() {
    Poly f = orientation_poly();
    // f > 0: condition (-f >= 0) must fail
    return SemiAlgRelation(3, 2, {-f}, {true, false}, 2);
}

PointSet grid(unsigned w, unsigned h) {
    PointSet ps;
    ps.dim = 2;
    for (unsigned i = 0; i < w; ++i)
        for (unsigned j = 0; j < h; ++j) ps.points.push_back({Rat(i), Rat(j)});
    return ps;
}

}  // namespace

TEST_CASE("brute_force_independent worked examples") {
    PointSet five = point_set_1d({Rat(0), Rat(1), Rat(2), Rat(3), Rat(4)});

    // empty relation: the whole set is independent
    auto all = brute_force_independent(empty_relation(3, 1), five, 5);
    REQUIRE(all.has_value());
    CHECK(all->size() == 5);

    // full relation, k=3, |P|=5: no 3 points independent
    CHECK(!brute_force_independent(full_relation(3, 1), five, 3).has_value());

    // collinearity on the 3x3 grid: a 4-point general-position subset exists
    PointSet g = grid(3, 3);
    SemiAlgRelation col = collinear_relation();
    auto sub = brute_force_independent(col, g, 4);
    REQUIRE(sub.has_value());
    // oracle self-verification: no collinear triple inside the answer
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = a + 1; b < 4; ++b)
            for (std::size_t c = b + 1; c < 4; ++c) {
                std::vector<Point> tri{g[(*sub)[a]], g[(*sub)[b]], g[(*sub)[c]]};
                CHECK(!tuple_in_relation(col, tri));
            }
    // 6 points with no 3 collinear exist on the 3x3 grid, 7 cannot
    // (7 points in 3 rows put 3 into one row)
    CHECK(brute_force_independent(col, g, 6).has_value());
    CHECK(!brute_force_independent(col, g, 7).has_value());
}

TEST_CASE("brute_force_clique worked examples") {
    PointSet five = point_set_1d({Rat(0), Rat(1), Rat(2), Rat(3), Rat(4)});
    auto first3 = brute_force_clique(full_relation(3, 1), five, 3);
    REQUIRE(first3.has_value());
    CHECK(*first3 == IndexSubset{0, 1, 2});

    CHECK(!brute_force_clique(empty_relation(3, 1), five, 3).has_value());

    // convex position counterclockwise: all orientation triples positive
    PointSet convex;
    convex.dim = 2;
    convex.points = {{Rat(0), Rat(0)}, {Rat(2), Rat(0)}, {Rat(3), Rat(2)},
                     {Rat(1), Rat(4)}, {Rat(-1), Rat(2)}};
    auto clique = brute_force_clique(positive_orientation_relation(), convex, 5);
    REQUIRE(clique.has_value());
    CHECK(clique->size() == 5);
}

TEST_CASE("is_ks3_free and monotonicity") {
    PointSet g = grid(3, 3);
    SemiAlgRelation col = collinear_relation();
    // 3x3 grid has collinear triples, so it is not K_3^(3)-free w.r.t. collinearity
    CHECK(!is_ks3_free(col, g, 3));
    // but every 4 points contain a non-collinear triple
    CHECK(is_ks3_free(col, g, 4));

    // monotone: freeness survives on subsets
    PointSet sub;
    sub.dim = 2;
    for (std::size_t i = 0; i < 5; ++i) sub.points.push_back(g[i]);
    CHECK(is_ks3_free(col, sub, 4));
}

TEST_CASE("budget guard refuses oversized searches") {
    PointSet big;
    big.dim = 1;
    for (int i = 0; i < 40; ++i) big.points.push_back({Rat(i)});
    SearchBudget tiny;
    tiny.max_subsets = 1000;
    CHECK_THROWS_AS(brute_force_independent(empty_relation(2, 1), big, 20, tiny),
                    BudgetExceeded);
}

TEST_CASE("find_mono_triangle_bruteforce basics") {
    // m=1, complete relation on 3 points
    RelationSystem sys;
    sys.base = point_set_1d({Rat(1), Rat(2), Rat(3)});
    sys.relations.push_back(full_relation(2, 1));
    auto t = find_mono_triangle_bruteforce(sys);
    REQUIRE(t.has_value());
    CHECK(t->indices == std::array<std::size_t, 3>{0, 1, 2});
    CHECK(t->color == 0);

    // uncovered pair is an error
    RelationSystem bad;
    bad.base = point_set_1d({Rat(1), Rat(2)});
    bad.relations.push_back(empty_relation(2, 1));
    CHECK_THROWS_AS(find_mono_triangle_bruteforce(bad), ContractViolation);
}
