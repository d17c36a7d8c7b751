#include <set>

#include "doctest.h"
#include "semialg/errors.hpp"
#include "semialg/rng.hpp"
#include "semialg/triple_ramsey.hpp"

using namespace semialg;

namespace {

SemiAlgRelation triple_relation_empty(unsigned d) {
    Poly f = Poly::constant(3 * d, Rat(1));
    return SemiAlgRelation(3, d, {f}, {false, false}, 1);
}

SemiAlgRelation triple_relation_full(unsigned d) {
    Poly f = Poly::constant(3 * d, Rat(1));
    return SemiAlgRelation(3, d, {f}, {true, true}, 1);
}

// x + y + z >= 0 on the line
SemiAlgRelation sum_nonneg_relation() {
    Poly f(3);
    f.add_term({1, 0, 0}, Rat(1));
    f.add_term({0, 1, 0}, Rat(1));
    f.add_term({0, 0, 1}, Rat(1));
    return SemiAlgRelation(3, 1, {f}, {false, true}, 1);
}

SemiAlgRelation collinear_relation() {
    Poly p(6);
    auto v = [](unsigned i) { return Poly::variable(6, i); };
    Poly f = (v(2) - v(0)) * (v(5) - v(1)) - (v(3) - v(1)) * (v(4) - v(0));
    std::vector<bool> table(4, false);
    table[3] = true;
    return SemiAlgRelation(3, 2, {f, -f}, table, 2);
}

PointSet symmetric_line_points(long half) {  // -half..-1, 1..half
    PointSet ps;
    ps.dim = 1;
    for (long i = -half; i <= half; ++i)
        if (i != 0) ps.points.push_back({Rat(i)});
    return ps;
}

PointSet grid(unsigned w, unsigned h) {
    PointSet ps;
    ps.dim = 2;
    for (unsigned i = 0; i < w; ++i)
        for (unsigned j = 0; j < h; ++j) ps.points.push_back({Rat(i), Rat(j)});
    return ps;
}

}  // namespace

TEST_CASE("classify_triples: empty and full relations") {
    PointSet ps = symmetric_line_points(4);  // 8 points
    std::vector<std::vector<std::size_t>> parts{{0, 1}, {3, 4}, {6, 7}};
    TripleClassification empty_cls = classify_triples(ps, triple_relation_empty(1), parts);
    CHECK(empty_cls.mixed_part_triples == 0);
    CHECK(empty_cls.homogeneous_out == 1);
    CHECK(empty_cls.bad_triples.empty());

    TripleClassification full_cls = classify_triples(ps, triple_relation_full(1), parts);
    CHECK(full_cls.mixed_part_triples == 0);
    CHECK(full_cls.homogeneous_in == 1);
    CHECK(full_cls.bad_triples.empty());
}

TEST_CASE("classify_triples: x+y+z >= 0 produces bad triples on straddling parts") {
    // points -5,-4 | -1,1 | 4,5 as in the worked example
    PointSet ps;
    ps.dim = 1;
    for (long v : {-5, -4, -1, 1, 4, 5}) ps.points.push_back({Rat(v)});
    std::vector<std::vector<std::size_t>> parts{{0, 1}, {2, 3}, {4, 5}};
    TripleClassification cls = classify_triples(ps, sum_nonneg_relation(), parts);
    CHECK(!cls.bad_triples.empty());
}

TEST_CASE("homogeneous_parts: trivial relations succeed immediately") {
    PointSet ps = symmetric_line_points(10);  // 20 points
    HomogeneousPartsParams hp;
    hp.r = 3;
    hp.part_size = 3;
    hp.seed = 123;
    HomogeneousPartsOutcome out = homogeneous_parts(ps, triple_relation_empty(1), hp);
    REQUIRE(out.success());
    CHECK(out.attempts == 1);
    CHECK(out.classification.bad_triples.empty());
    for (const auto& [key, sign] : out.parts->homogeneous_sign) CHECK(!sign);
}

TEST_CASE("homogeneous_parts: x+y+z >= 0 on symmetric points") {
    PointSet ps = symmetric_line_points(30);  // 60 points
    HomogeneousPartsParams hp;
    hp.r = 3;
    hp.part_size = 3;
    hp.seed = 7;
    hp.max_retries = 64;
    HomogeneousPartsOutcome out = homogeneous_parts(ps, sum_nonneg_relation(), hp);
    REQUIRE(out.success());
    // the success is rechecked exhaustively inside; re-verify from outside
    TripleClassification cls = classify_triples(ps, sum_nonneg_relation(), out.parts->parts);
    CHECK(cls.bad_triples.empty());
    CHECK(cls.all_homogeneous());
}

TEST_CASE("derived_binary substitutes the third block") {
    // x + y + z >= 0 with q0 = 0 becomes x + y >= 0
    SemiAlgRelation rel = sum_nonneg_relation();
    SemiAlgRelation bin = derived_binary(rel, {Rat(0)});
    CHECK(bin.arity() == 2);
    CHECK(bin.contains_pair({Rat(3)}, {Rat(-2)}));
    CHECK(!bin.contains_pair({Rat(-3)}, {Rat(2)}));

    // consistency: derived membership equals ternary membership with q0
    Rng rng(99);
    std::uniform_int_distribution<long> val(-50, 50);
    for (int t = 0; t < 10; ++t) {
        Point a{make_rat(val(rng), 3)}, b{make_rat(val(rng), 7)};
        std::vector<Point> tuple{a, b, {Rat(0)}};
        CHECK(bin.contains_pair(a, b) == rel.contains(tuple));
    }

    // collinearity with q0 at the origin: p1, p2, origin collinear
    SemiAlgRelation colbin = derived_binary(collinear_relation(), {Rat(0), Rat(0)});
    CHECK(colbin.contains_pair({Rat(1), Rat(1)}, {Rat(2), Rat(2)}));
    CHECK(!colbin.contains_pair({Rat(1), Rat(0)}, {Rat(2), Rat(2)}));
}

TEST_CASE("extract_independent: base cases") {
    PointSet ps = symmetric_line_points(6);  // 12 points
    ExtractConfig cfg;

    // s = 3 with an empty relation keeps everything
    ExtractResult res = extract_independent(ps, triple_relation_empty(1), 3, cfg, 5);
    CHECK(res.subset.size() == ps.size());
    CHECK(res.report.verified_free);

    // empty relation at s = 4 still keeps everything (oracle base here)
    ExtractResult res4 = extract_independent(ps, triple_relation_empty(1), 4, cfg, 5);
    CHECK(res4.subset.size() == ps.size());
}

TEST_CASE("extract_independent: collinearity on the 5x5 grid with s = 4") {
    PointSet ps = grid(5, 5);
    SemiAlgRelation rel = collinear_relation();
    ExtractConfig cfg;
    ExtractResult res = extract_independent(ps, rel, 4, cfg, 42);
    CHECK(res.report.verified_free);
    CHECK(res.subset.size() >= 4);
    // no 3 chosen points collinear, verified here once more
    for (std::size_t a = 0; a < res.subset.size(); ++a)
        for (std::size_t b = a + 1; b < res.subset.size(); ++b)
            for (std::size_t c = b + 1; c < res.subset.size(); ++c) {
                std::vector<Point> tri{ps[res.subset[a]], ps[res.subset[b]],
                                       ps[res.subset[c]]};
                CHECK(!rel.contains(tri));
            }
}

TEST_CASE("extract_independent: non-K_s-free inputs are detected and reported") {
    PointSet ps;
    ps.dim = 2;
    // 4 collinear points: every triple is collinear, so K_4^(3) exists
    for (long i = 0; i < 4; ++i) ps.points.push_back({Rat(i), Rat(i)});
    ExtractResult res = extract_independent(ps, collinear_relation(), 4, ExtractConfig{}, 1);
    CHECK(res.report.ks3_checked);
    CHECK(!res.report.ks3_free);
    CHECK(res.report.verified_free);  // the output is still E-free
    CHECK(res.subset.size() == 2);    // best possible on a line
}

TEST_CASE("extract_independent: monotone on nested inputs") {
    SemiAlgRelation rel = sum_nonneg_relation();
    ExtractConfig cfg;
    PointSet small = symmetric_line_points(14);  // 28 points
    PointSet big = symmetric_line_points(16);    // 32 points, superset
    ExtractResult rs = extract_independent(small, rel, 4, cfg, 11);
    ExtractResult rb = extract_independent(big, rel, 4, cfg, 11);
    CHECK(rs.report.verified_free);
    CHECK(rb.report.verified_free);
    CHECK(rb.subset.size() >= rs.subset.size());
}
