#include "doctest.h"
#include "semialg/errors.hpp"
#include "semialg/oracles.hpp"
#include "semialg/schur.hpp"

using namespace semialg;

TEST_CASE("is_sum_free handles repetition") {
    CHECK(is_sum_free({1}));
    CHECK(!is_sum_free({1, 2}));  // 1 + 1 = 2
    CHECK(is_sum_free({1, 4}));   // 1+1=2, 1+4=5, 4+4=8 all outside
    CHECK(is_sum_free({2, 3}));
    CHECK(!is_sum_free({2, 3, 5}));
}

TEST_CASE("schur anchors S(1), S(2), S(3)") {
    SchurMaximum s1 = schur_maximize(1);
    CHECK(s1.status == SchurStatus::Sat);
    CHECK(s1.value == 1);

    SchurMaximum s2 = schur_maximize(2);
    CHECK(s2.status == SchurStatus::Sat);
    CHECK(s2.value == 4);
    REQUIRE(s2.partition.has_value());
    validate_sum_free_partition(*s2.partition);

    SchurMaximum s3 = schur_maximize(3);
    CHECK(s3.status == SchurStatus::Sat);
    CHECK(s3.value == 13);
    REQUIRE(s3.partition.has_value());
    validate_sum_free_partition(*s3.partition);
    for (const auto& cls : s3.partition->classes) CHECK(is_sum_free(cls));
}

TEST_CASE("schur_decide boundary cases") {
    CHECK(schur_decide(2, 4).status == SchurStatus::Sat);
    CHECK(schur_decide(2, 5).status == SchurStatus::Unsat);
    CHECK(schur_decide(3, 13).status == SchurStatus::Sat);
    CHECK(schur_decide(3, 14).status == SchurStatus::Unsat);
    SchurOptions tiny;
    tiny.node_budget = 3;
    CHECK(schur_decide(3, 13, tiny).status == SchurStatus::Unknown);
}

TEST_CASE("interval-capped search") {
    // every class one interval: classes are blocks of consecutive integers
    SchurOptions opts;
    opts.interval_cap = 1;
    SchurMaximum s = schur_maximize(2, opts);
    CHECK(s.status == SchurStatus::Sat);
    CHECK(s.value >= 3);  // {1}, {2,3} partitions 1..3 with one run each
    REQUIRE(s.partition.has_value());
    for (const auto& cls : s.partition->classes) CHECK(interval_complexity(cls) <= 1);
    CHECK(s.interval_bound > 0.0);
    // the uncapped S(2) = 4 partition {1,4},{2,3} needs two runs
    CHECK(s.value <= 4);
}

TEST_CASE("schur_coloring has no monochromatic triangle") {
    SchurMaximum s3 = schur_maximize(3);
    RelationSystem sys = schur_coloring(*s3.partition);
    CHECK(sys.base.size() == 14);
    CHECK(sys.relations.size() == 3);
    CHECK(!find_mono_triangle_bruteforce(sys).has_value());

    // extending to 15 points by the same rule creates a triangle
    SumFreePartition ext = *s3.partition;
    ext.n_max = 14;
    ext.classes[0].push_back(14);  // wherever 14 lands, some class stops being sum-free
    RelationSystem sys15;
    sys15.base.dim = 1;
    for (long v = 1; v <= 15; ++v) sys15.base.points.push_back({Rat(v)});
    bool some_extension_has_triangle = true;
    for (std::size_t c = 0; c < 3; ++c) {
        SumFreePartition trial = *s3.partition;
        trial.n_max = 14;
        trial.classes[c].push_back(14);
        RelationSystem sysx;
        sysx.base = sys15.base;
        for (const auto& cls : trial.classes) {
            std::vector<Int> targets;
            for (long v : cls) targets.emplace_back(v);
            sysx.relations.emplace_back(IntervalDistanceRelation(
                Rat(1), Rat(14), Rat(1), make_rat(1, 2), std::move(targets)));
        }
        if (!find_mono_triangle_bruteforce(sysx).has_value())
            some_extension_has_triangle = false;
    }
    CHECK(some_extension_has_triangle);
}

TEST_CASE("degenerate m=1, N=1 coloring") {
    SumFreePartition p;
    p.n_max = 1;
    p.classes = {{1}};
    RelationSystem sys = schur_coloring(p);
    CHECK(sys.base.size() == 2);
    CHECK(!find_mono_triangle_bruteforce(sys).has_value());
}

TEST_CASE("partition file round-trip") {
    SchurMaximum s3 = schur_maximize(3);
    std::string text = partition_to_string(*s3.partition);
    SumFreePartition back = parse_partition_text(text);
    CHECK(back.n_max == s3.partition->n_max);
    CHECK(back.classes == s3.partition->classes);
    CHECK_THROWS_AS(parse_partition_text("2 4\n1 4\n2"), ContractViolation);
    CHECK_THROWS_AS(parse_partition_text("1 2\n1 2"), ContractViolation);  // not sum-free
}
